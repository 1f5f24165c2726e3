#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "bosecorr/corrections.hpp"
#include "bosecorr/errors.hpp"

namespace bosecorr::app {

struct ConfigError : Error { using Error::Error; };
struct RejectedConfig : ConfigError { using ConfigError::ConfigError; };

struct OracleConfig {
  int shells = 2;                       // modes with 0 < |n|^2 <= shells
  std::vector<int> n_max = {5, 7, 9};
  int pair_n_max = 40;                  // one-pair Bogoliubov check
  double eig_tol = 1e-12;
  double solve_tol = 1e-13;
  std::size_t max_dim = 2'000'000;
  bool include_Rd = false;
};

struct RunConfig {
  std::vector<double> N = {1e4};
  double beta = 0.75;
  double kappa = 0.1;
  double R = 0.25;
  double K = 40.0 * kPi;
  double K2 = 20.0 * kPi;
  double tol = 1e-11;
  int max_iter = 200;
  bool timings = false;   // wall times make output files run dependent
  OracleConfig oracle;
  std::string out_path;
  std::vector<std::string> warnings;

  RunParams params(double N) const;
  nlohmann::json canonical() const;
  std::string hash() const;  // FNV-1a 64 of the canonical JSON, hex
};

// Throws ConfigError on malformed input or values outside the contract.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
RunConfig reference_config();

std::string fnv1a_hex(const std::string& s);

}  // namespace bosecorr::app
