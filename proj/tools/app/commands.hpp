#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace bosecorr::app {

struct Check {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double limit = 0.0;
  std::string note;
};

// Invariant suite at the first N of the config.
std::vector<Check> run_verify(const RunConfig& cfg);

struct OracleRow {
  std::string quantity;
  int n_max = 0;
  std::size_t dim = 0;
  double closed_form = 0.0;
  double oracle = 0.0;
  double rel_gap = 0.0;
};

// Closed forms against truncated Fock-space computations at the first N.
std::vector<OracleRow> run_oracle(const RunConfig& cfg);

// Each returns the process exit code: 0 success, 1 failure, 2 invalid config.
int cmd_energy(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace bosecorr::app
