#include "run_config.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace bosecorr::app {

using nlohmann::json;

namespace {

double number(const json& j, const char* key, double def) {
  if (!j.contains(key)) return def;
  if (!j[key].is_number()) throw ConfigError(std::string("config key '") + key + "' must be a number");
  return j[key].get<double>();
}

// cutoffs may be given directly or in units of pi
double cutoff(const json& j, const char* key, const char* key_pi, double def) {
  if (j.contains(key) && j.contains(key_pi))
    throw ConfigError(std::string("give either '") + key + "' or '" + key_pi + "', not both");
  if (j.contains(key_pi)) return number(j, key_pi, 0.0) * kPi;
  return number(j, key, def);
}

}  // namespace

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

RunParams RunConfig::params(double n) const {
  RunParams p;
  p.pot = {kappa, R};
  p.N = n;
  p.beta = beta;
  p.K = K;
  p.K2 = K2;
  p.scattering.tol = tol;
  p.scattering.max_iter = max_iter;
  return p;
}

json RunConfig::canonical() const {
  json j;
  j["N"] = N;
  j["beta"] = beta;
  j["kappa"] = kappa;
  j["R"] = R;
  j["cutoff_K"] = K;
  j["cutoff_K2"] = K2;
  j["scattering"] = {{"tol", tol}, {"max_iter", max_iter}};
  j["oracle"] = {{"shells", oracle.shells},       {"n_max", oracle.n_max},
                 {"pair_n_max", oracle.pair_n_max}, {"eig_tol", oracle.eig_tol},
                 {"solve_tol", oracle.solve_tol},   {"max_dim", oracle.max_dim},
                 {"include_Rd", oracle.include_Rd}};
  j["timings"] = timings;
  return j;
}

std::string RunConfig::hash() const { return fnv1a_hex(canonical().dump()); }

namespace {
RunConfig parse_impl(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const char* const known[] = {"N", "beta", "kappa", "R", "cutoff_K", "cutoff_K_over_pi", "cutoff_K2",
                                      "cutoff_K2_over_pi", "scattering", "oracle", "timings", "output"};
  for (const auto& [key, value] : j.items())
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      throw ConfigError("unknown config key '" + key + "'");
  RunConfig c;
  if (j.contains("N")) {
    const auto& n = j["N"];
    c.N.clear();
    if (n.is_number())
      c.N.push_back(n.get<double>());
    else if (n.is_array())
      for (const auto& x : n) {
        if (!x.is_number()) throw ConfigError("N entries must be numbers");
        c.N.push_back(x.get<double>());
      }
    else
      throw ConfigError("N must be a number or a list of numbers");
  }
  c.beta = number(j, "beta", c.beta);
  c.kappa = number(j, "kappa", c.kappa);
  c.R = number(j, "R", c.R);
  c.K = cutoff(j, "cutoff_K", "cutoff_K_over_pi", c.K);
  c.K2 = cutoff(j, "cutoff_K2", "cutoff_K2_over_pi", c.K2);
  if (j.contains("scattering")) {
    const auto& s = j["scattering"];
    c.tol = number(s, "tol", c.tol);
    c.max_iter = static_cast<int>(number(s, "max_iter", c.max_iter));
  }
  if (j.contains("oracle")) {
    const auto& o = j["oracle"];
    c.oracle.shells = static_cast<int>(number(o, "shells", c.oracle.shells));
    if (o.contains("n_max")) {
      c.oracle.n_max.clear();
      for (const auto& x : o["n_max"]) c.oracle.n_max.push_back(x.get<int>());
    }
    c.oracle.pair_n_max = static_cast<int>(number(o, "pair_n_max", c.oracle.pair_n_max));
    c.oracle.eig_tol = number(o, "eig_tol", c.oracle.eig_tol);
    c.oracle.solve_tol = number(o, "solve_tol", c.oracle.solve_tol);
    c.oracle.max_dim = static_cast<std::size_t>(number(o, "max_dim", static_cast<double>(c.oracle.max_dim)));
    if (o.contains("include_Rd")) c.oracle.include_Rd = o["include_Rd"].get<bool>();
  }
  if (j.contains("timings")) c.timings = j["timings"].get<bool>();
  if (j.contains("output")) c.out_path = j["output"].get<std::string>();

  if (c.N.empty()) throw ConfigError("N list is empty");
  for (double n : c.N)
    if (!(n >= 2.0) || n != std::floor(n)) throw ConfigError("N must be an integer >= 2");
  if (!(c.beta > 0.0 && c.beta < 1.0)) throw ConfigError("beta must lie in (0, 1)");
  if (!(c.beta > 0.5)) c.warnings.push_back("beta outside (1/2, 1): the expansion is not expected to hold");
  if (!(c.kappa >= 0.0)) throw ConfigError("kappa must be >= 0");
  if (!(c.R > 0.0 && c.R <= 0.25)) throw ConfigError("R must lie in (0, 1/4]");
  if (!(c.K >= kTwoPi * (1.0 - 1e-12))) throw ConfigError("cutoff_K must be >= 2 pi");
  if (!(c.K2 >= kTwoPi * (1.0 - 1e-12))) throw ConfigError("cutoff_K2 must be >= 2 pi");
  if (!(c.K2 <= c.K * (1.0 + 1e-12))) throw ConfigError("cutoff_K2 must not exceed cutoff_K");
  if (!(c.tol > 0.0)) throw ConfigError("scattering.tol must be positive");
  if (c.max_iter < 1) throw ConfigError("scattering.max_iter must be >= 1");
  if (c.oracle.shells < 1) throw ConfigError("oracle.shells must be >= 1");
  for (int n : c.oracle.n_max)
    if (n < 0 || n > 255) throw ConfigError("oracle.n_max entries must lie in [0, 255]");
  return c;
}
}  // namespace

RunConfig parse_config(const json& j) {
  try {
    return parse_impl(j);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

RunConfig reference_config() { return RunConfig{}; }

}  // namespace bosecorr::app
