#include "report_io.hpp"

#include <cstdio>
#include <sstream>

namespace bosecorr::app {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);  // + 0.0 turns -0 into 0
  return buf;
}

namespace {

const char* const kColumns[] = {"N",       "beta",         "kappa",   "a_box",   "leading",  "E00",
                                "E01",     "C1",           "C2",      "E_corr",  "g2_expect", "e_pert_tilde",
                                "E0",      "C_const",      "total_A", "total_B", "route_discrepancy",
                                "depletion", "t_scatter_ms", "t_sums_ms"};
const char* const kExtra[] = {"config_hash", "cutoff_K",   "cutoff_K2",        "ball_points", "ball2_points",
                              "E_corr_ball", "born2_ball", "born2_tail",       "E01_ball",    "g2_exchange",
                              "e_pert_fallback_pairs",    "status"};

void drop_negative_zeros(nlohmann::ordered_json& j) {
  if (j.is_structured())
    for (auto& x : j) drop_negative_zeros(x);
  else if (j.is_number_float() && j.get<double>() == 0.0)
    j = 0.0;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

std::string csv_header() {
  std::string h;
  for (const char* c : kColumns) h += std::string(h.empty() ? "" : ",") + c;
  for (const char* c : kExtra) h += std::string(",") + c;
  return h;
}

std::string csv_row(const EnergyReport& r, const RunConfig& cfg) {
  std::ostringstream o;
  const auto& p = r.params;
  const std::string tA = cfg.timings ? fmt17(r.t_scatter_ms) : "";
  const std::string tB = cfg.timings ? fmt17(r.t_sums_ms) : "";
  o << fmt17(p.N) << ',' << fmt17(p.beta) << ',' << fmt17(p.pot.kappa) << ',' << fmt17(r.a_box) << ','
    << fmt17(r.leading) << ',' << fmt17(r.E00) << ',' << fmt17(r.E01.total) << ',' << fmt17(r.Cnb.C1) << ','
    << fmt17(r.Cnb.C2) << ',' << fmt17(r.Ecorr.value) << ',' << fmt17(r.g2.value) << ',' << fmt17(r.e_pert.value)
    << ',' << fmt17(r.E0) << ',' << fmt17(r.Cconst.total) << ',' << fmt17(r.total_A) << ',' << fmt17(r.total_B)
    << ',' << fmt17(r.route_discrepancy) << ',' << fmt17(r.depletion) << ',' << tA << ',' << tB;
  o << ',' << cfg.hash() << ',' << fmt17(p.K) << ',' << fmt17(p.K2) << ',' << r.ball_points << ','
    << r.ball2_points << ',' << fmt17(r.Ecorr.value_ball) << ',' << fmt17(r.born2.ball) << ','
    << fmt17(r.born2.tail) << ',' << fmt17(r.E01.total_ball) << ',' << fmt17(r.g2.exchange) << ','
    << r.e_pert.fallback_pairs << ",ok";
  return o.str();
}

std::string csv_error_row(double N, const RunConfig& cfg, const std::string& message) {
  std::ostringstream o;
  o << fmt17(N) << ',' << fmt17(cfg.beta) << ',' << fmt17(cfg.kappa);
  for (std::size_t i = 3; i < std::size(kColumns); ++i) o << ',';
  o << ',' << cfg.hash() << ',' << fmt17(cfg.K) << ',' << fmt17(cfg.K2);
  for (std::size_t i = 3; i + 1 < std::size(kExtra); ++i) o << ',';
  o << ',' << quote("error: " + message);
  return o.str();
}

nlohmann::ordered_json report_json(const EnergyReport& r, const RunConfig& cfg) {
  nlohmann::ordered_json j;
  const auto& p = r.params;
  j["config_hash"] = cfg.hash();
  j["N"] = p.N;
  j["beta"] = p.beta;
  j["kappa"] = p.pot.kappa;
  j["R"] = p.pot.R;
  j["a_box"] = r.a_box;
  j["leading"] = r.leading;
  j["E00"] = r.E00;
  j["E01"] = r.E01.total;
  j["C1"] = r.Cnb.C1;
  j["C2"] = r.Cnb.C2;
  j["E_corr"] = r.Ecorr.value;
  j["g2_expect"] = r.g2.value;
  j["e_pert_tilde"] = r.e_pert.value;
  j["E0"] = r.E0;
  j["C_const"] = r.Cconst.total;
  j["total_A"] = r.total_A;
  j["total_B"] = r.total_B;
  j["route_discrepancy"] = r.route_discrepancy;
  j["depletion"] = r.depletion;
  j["depletion_fraction"] = r.depletion / p.N;
  j["details"] = {
      {"a_excess", r.a_excess},
      {"E01_first", r.E01.first},
      {"E01_second", r.E01.second},
      {"E01_ball", r.E01.total_ball},
      {"E01_certificate", r.E01.certificate},
      {"C1_sc_eta", r.Cnb.C1_sc_eta},
      {"C1_bog", r.Cnb.C1_bog},
      {"born2_ball", r.born2.ball},
      {"born2_tail", r.born2.tail},
      {"E_corr_ball", r.Ecorr.value_ball},
      {"g2_direct", r.g2.direct},
      {"g2_exchange", r.g2.exchange},
      {"e_pert_reduced", r.e_pert_reduced},
      {"corr_vs_expansion", r.corr_vs_expansion},
      {"C_kinetic", r.Cconst.kinetic},
      {"C_pairing", r.Cconst.pairing},
      {"C_convolution", r.Cconst.convolution},
      {"C_cubic", r.Cconst.cubic},
  };
  j["truncation"] = {
      {"cutoff_K", p.K},
      {"cutoff_K2", p.K2},
      {"ball_points", r.ball_points},
      {"ball2_points", r.ball2_points},
      {"scattering_iterations", r.scattering_iterations},
      {"scattering_residual", r.scattering_residual},
      {"a_tail_estimate", r.a_tail},
      {"E00_tail_estimate", r.E00_tail},
      {"E0_tail_estimate", r.E0_tail},
      {"C_tail_estimate", r.Cnb.tail_estimate},
      {"E01_outer_tail_estimate", r.E01.outer_tail_estimate},
      {"depletion_tail_estimate", r.depletion_tail},
      {"e_pert_pairs", r.e_pert.pairs},
      {"e_pert_fallback_pairs", r.e_pert.fallback_pairs},
      {"inner_sums", "lattice ball plus continuum remainder for sum v^2/2p^2 and the E01 q-sums"},
  };
  if (cfg.timings) j["timings_ms"] = {{"scatter", r.t_scatter_ms}, {"sums", r.t_sums_ms}};
  j["warnings"] = r.warnings;
  drop_negative_zeros(j);
  return j;
}

}  // namespace bosecorr::app
