#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "bosecorr/fock_oracle.hpp"
#include "bosecorr/summation.hpp"
#include "report_io.hpp"

namespace bosecorr::app {

using nlohmann::ordered_json;

namespace {

double rel_gap(double closed, double oracle) {
  const double d = std::abs(closed - oracle);
  const double s = std::max(std::abs(closed), std::abs(oracle));
  return s == 0.0 ? 0.0 : d / s;
}

struct Pipeline {
  LatticeBall ball, ball2;
  ScaledPotentialTable vt;
  ScatteringSolution sol;
  BogoliubovTables tables;
};

Pipeline run_pipeline(const RunParams& p) {
  Pipeline r;
  p.pot.validate();
  r.ball = enumerate_lattice(p.K);
  r.ball2 = enumerate_lattice(p.K2);
  r.vt = scaled_table(p.pot, r.ball, p.N, p.beta);
  r.sol = solve_eta(r.ball, r.vt, p.scattering);
  r.tables = build_tables(r.sol, r.vt, r.ball, p.scattering.method);
  return r;
}

std::string report_text(const RunConfig& cfg, double N) {
  RunConfig c = cfg;
  c.timings = false;
  return report_json(compute_energy(c.params(N)), c).dump();
}

}  // namespace

std::vector<Check> run_verify(const RunConfig& cfg) {
  std::vector<Check> out;
  auto add = [&](std::string name, bool pass, double measured, double limit, std::string note = "") {
    out.push_back({std::move(name), pass, measured, limit, std::move(note)});
  };
  const RunParams p = cfg.params(cfg.N.front());
  Pipeline pl;
  try {
    p.pot.validate();
    pl.ball = enumerate_lattice(p.K);
    pl.ball2 = enumerate_lattice(p.K2);
    pl.vt = scaled_table(p.pot, pl.ball, p.N, p.beta);
  } catch (const Error& e) {
    add("setup", false, 0, 0, e.what());
    return out;
  }
  try {
    pl.sol = solve_eta(pl.ball, pl.vt, p.scattering);
  } catch (const NonConvergence& e) {
    add("scattering_converged", false, e.last_residual, p.scattering.tol, e.what());
    return out;
  }
  const auto& ball = pl.ball;
  const auto& sol = pl.sol;
  add("scattering_converged", true, sol.residual_norm, p.scattering.tol);
  const double res = residual(sol, pl.vt, ball);
  add("scattering_residual", res <= p.scattering.tol, res, p.scattering.tol);
  double eta_asym = 0.0;
  for (std::size_t i = 0; i < ball.size(); ++i) eta_asym = std::max(eta_asym, std::abs(sol.eta[i] - sol.eta[ball.neg(i)]));
  add("eta_negation_symmetric", eta_asym == 0.0, eta_asym, 0.0);
  add("eta_decay_bound", sol.decay_ratio <= 1.0, sol.decay_ratio, 1.0, "max p^2 |eta_p| / v^(0)");
  const auto a = scattering_length(sol, pl.vt, ball);
  add("scattering_length_below_vhat0", a.below_vhat0, a.excess, 0.0, "(1/N) sum v^ eta");

  try {
    pl.tables = build_tables(sol, pl.vt, ball, p.scattering.method);
  } catch (const DiagonalizationFailure& e) {
    add("diagonalizable", false, std::abs(e.G) / e.F, 1.0, e.what());
    return out;
  }
  add("diagonalizable", true, pl.tables.max_G_over_F, 1.0);
  const auto& t = pl.tables;
  const auto cert = certify(t, ball, pl.vt);
  add("cosh_sinh_identity", cert.cosh_sinh_identity <= 1e-12, cert.cosh_sinh_identity, 1e-12);
  add("tilde_cosh_sinh_identity", cert.tilde_identity <= 1e-12, cert.tilde_identity, 1e-12);
  add("F_lower_bound", cert.min_F_over_p2 >= 0.5, cert.min_F_over_p2, 0.5, "min F_p / p^2");
  add("G_over_F", cert.max_G_over_F <= 0.5, cert.max_G_over_F, 0.5, "max |G_p| / F_p");
  add("dispersion_lower_bound", cert.min_e_over_p2 >= std::sqrt(3.0) / 2.0, cert.min_e_over_p2, std::sqrt(3.0) / 2.0);
  add("tanh_identity", cert.tanh_identity <= 1e-12, cert.tanh_identity, 1e-12);
  add("tables_negation_symmetric", cert.negation_asymmetry == 0.0, cert.negation_asymmetry, 0.0);
  add("s_decay_certificate", cert.s_decay <= cert.s_decay_bound * (1.0 + 1e-12), cert.s_decay, cert.s_decay_bound);

  const auto ep = e_pert_tilde(t, pl.vt, ball, pl.ball2);
  add("e_pert_nonpositive", ep.value <= 0.0, ep.value, 0.0);
  const auto C = c_constant(t, pl.vt, ball);
  const auto ec = e_corr(C, born2_sum(pl.vt, ball), p.N);
  const bool coupled = p.pot.kappa > 0.0;
  add("E_corr_negative", coupled ? ec.value < 0.0 : ec.value == 0.0, ec.value, 0.0);

  // E00 summed in reverse shell order
  {
    const double v0 = pl.vt.at_zero();
    const double fwd = E00(v0, ball).value;
    KahanSum s;
    for (std::size_t i = ball.size(); i-- > 0;) s.add(e00_summand(ball.p2(i), v0));
    const double rev = 0.5 * s.value();
    const double rel = rel_gap(fwd, rev);
    add("sum_order_independence", rel <= 1e-12, rel, 1e-12);
  }
  {
    auto direct = scattering_convolution(ball, pl.vt, sol.eta, ConvMethod::Direct);
    auto fft = scattering_convolution(ball, pl.vt, sol.eta, ConvMethod::FFT);
    double d = 0.0, m = 0.0;
    for (std::size_t i = 0; i < direct.size(); ++i) {
      d = std::max(d, std::abs(direct[i] - fft[i]));
      m = std::max(m, std::abs(direct[i]));
    }
    const double rel = m == 0.0 ? d : d / m;
    add("convolution_paths_agree", rel <= 1e-12, rel, 1e-12);
  }
  // rs_pt2 sign on a small oracle space
  try {
    const auto modes = ModeSet::shells(std::min(cfg.oracle.shells, max_shell(p.K)));
    const int nm = cfg.oracle.n_max.empty() ? 5 : cfg.oracle.n_max.front();
    FockBasis basis(modes, nm, cfg.oracle.max_dim);
    const auto mt = mode_tables(modes, t, pl.vt, ball);
    const auto G0 = build_G0(basis, mt.F, mt.G);
    Eigen::VectorXd vac = Eigen::VectorXd::Unit(static_cast<Eigen::Index>(basis.size()), 0);
    const auto gs = ground_state(G0, cfg.oracle.eig_tol, &vac);
    const auto G1 = build_G1tilde(basis, mt, pl.vt, p.N);
    const double e2 = rs_pt2(G0, G1, gs.energy, gs.vector, cfg.oracle.solve_tol);
    add("rs_pt2_nonpositive", e2 <= 0.0, e2, 0.0);
    add("oracle_operators_symmetric", G0.max_asymmetry() == 0.0 && G1.max_asymmetry() == 0.0,
        std::max(G0.max_asymmetry(), G1.max_asymmetry()), 0.0);
  } catch (const Error& e) {
    add("rs_pt2_nonpositive", false, 0, 0, e.what());
  }
  {
    const std::string r1 = report_text(cfg, p.N);
    const std::string r2 = report_text(cfg, p.N);
    add("determinism", r1 == r2, r1 == r2 ? 0.0 : 1.0, 0.0, "two runs serialize bit-identically");
    const int saved = thread_count();
    set_thread_count(1);
    const std::string s1 = report_text(cfg, p.N);
    set_thread_count(3);
    const std::string s3 = report_text(cfg, p.N);
    set_thread_count(saved);
    add("thread_count_independence", s1 == s3, s1 == s3 ? 0.0 : 1.0, 0.0, "1 vs 3 worker threads");
  }
  return out;
}

std::vector<OracleRow> run_oracle(const RunConfig& cfg) {
  const RunParams p = cfg.params(cfg.N.front());
  const auto pl = run_pipeline(p);
  std::vector<OracleRow> rows;

  // one pair of opposite modes: closed form -F + sqrt(F^2 - G^2)
  {
    const auto modes = ModeSet::pair(pl.ball.points.front());
    const auto mt = mode_tables(modes, pl.tables, pl.vt, pl.ball);
    FockBasis basis(modes, cfg.oracle.pair_n_max, cfg.oracle.max_dim);
    const auto G0 = build_G0(basis, mt.F, mt.G);
    Eigen::VectorXd vac = Eigen::VectorXd::Unit(static_cast<Eigen::Index>(basis.size()), 0);
    const auto gs = ground_state(G0, cfg.oracle.eig_tol, &vac);
    const double closed = restricted_E0(mt);
    rows.push_back({"E0_pair", cfg.oracle.pair_n_max, basis.size(), closed, gs.energy, rel_gap(closed, gs.energy)});
  }

  const auto modes = ModeSet::shells(cfg.oracle.shells);
  const auto mt = mode_tables(modes, pl.tables, pl.vt, pl.ball);
  const double E0c = restricted_E0(mt);
  const double Epc = restricted_e_pert(modes, mt, p.N);
  const double g2c = restricted_g2(modes, mt, pl.vt, p.N);
  const double dpc = restricted_depletion(mt);
  CubicOptions co;
  co.include_Rd = cfg.oracle.include_Rd;
  for (int nm : cfg.oracle.n_max) {
    FockBasis basis(modes, nm, cfg.oracle.max_dim);
    const auto G0 = build_G0(basis, mt.F, mt.G);
    Eigen::VectorXd vac = Eigen::VectorXd::Unit(static_cast<Eigen::Index>(basis.size()), 0);
    const auto gs = ground_state(G0, cfg.oracle.eig_tol, &vac);
    const auto G1 = build_G1tilde(basis, mt, pl.vt, p.N, co);
    const auto G2 = build_G2(basis, mt, pl.vt, p.N);
    const double e2 = rs_pt2(G0, G1, gs.energy, gs.vector, cfg.oracle.solve_tol);
    const double g2 = gs.vector.dot(G2.apply(gs.vector));
    const Eigen::VectorXd w = apply_pair_rotation(basis, mt.eta, gs.vector, 1.0);
    const double dep = w.dot(number_operator(basis).apply(w));
    rows.push_back({"E0", nm, basis.size(), E0c, gs.energy, rel_gap(E0c, gs.energy)});
    rows.push_back({"e_pert_tilde", nm, basis.size(), Epc, e2, rel_gap(Epc, e2)});
    rows.push_back({"g2_expect", nm, basis.size(), g2c, g2, rel_gap(g2c, g2)});
    rows.push_back({"depletion", nm, basis.size(), dpc, dep, rel_gap(dpc, dep)});
  }
  return rows;
}

int cmd_energy(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  for (const auto& w : cfg.warnings) err << "warning: " << w << '\n';
  int code = 0;
  for (double N : cfg.N) {
    try {
      out << report_json(compute_energy(cfg.params(N)), cfg).dump() << '\n';
    } catch (const Error& e) {
      err << "error at N=" << fmt17(N) << ": " << e.what() << '\n';
      code = 1;
    }
  }
  return code;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.N.size() < 2) throw RejectedConfig("scan needs at least two values of N");
  for (const auto& w : cfg.warnings) err << "warning: " << w << '\n';
  out << csv_header() << '\n';
  int failures = 0;
  for (double N : cfg.N) {
    try {
      out << csv_row(compute_energy(cfg.params(N)), cfg) << '\n';
    } catch (const Error& e) {
      ++failures;
      err << "error at N=" << fmt17(N) << ": " << e.what() << '\n';
      out << csv_error_row(N, cfg, e.what()) << '\n';
    }
  }
  return failures == static_cast<int>(cfg.N.size()) ? 1 : 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  for (const auto& w : cfg.warnings) err << "warning: " << w << '\n';
  const auto checks = run_verify(cfg);
  ordered_json j;
  j["config_hash"] = cfg.hash();
  j["checks"] = ordered_json::array();
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.pass;
    ordered_json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    e["measured"] = c.measured;
    e["limit"] = c.limit;
    if (!c.note.empty()) e["note"] = c.note;
    j["checks"].push_back(e);
  }
  j["all_pass"] = all;
  out << j.dump(2) << '\n';
  return all ? 0 : 1;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  for (const auto& w : cfg.warnings) err << "warning: " << w << '\n';
  const auto rows = run_oracle(cfg);
  out << "quantity,n_max,dim,closed_form,oracle,rel_gap,config_hash\n";
  for (const auto& r : rows)
    out << r.quantity << ',' << r.n_max << ',' << r.dim << ',' << fmt17(r.closed_form) << ',' << fmt17(r.oracle)
        << ',' << fmt17(r.rel_gap) << ',' << cfg.hash() << '\n';
  return 0;
}

}  // namespace bosecorr::app
