#include "bosecorr/fock_oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "bosecorr/errors.hpp"
#include "bosecorr/summation.hpp"

namespace bosecorr {

// ---- mode sets -------------------------------------------------------------

ModeSet::ModeSet(std::vector<IVec3> modes) : modes_(std::move(modes)) {
  if (modes_.size() > kMaxModes) throw InvalidArgument("mode set larger than 30 modes");
  neg_.resize(modes_.size());
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (norm2(modes_[i]) == 0) throw InvalidArgument("mode set contains the zero mode");
    for (std::size_t j = 0; j < i; ++j)
      if (modes_[j] == modes_[i]) throw InvalidArgument("mode set contains a repeated mode");
  }
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    neg_[i] = find(-modes_[i]);
    if (neg_[i] < 0) throw InvalidArgument("mode set is not closed under negation");
  }
}

ModeSet ModeSet::pair(const IVec3& n) { return ModeSet({n, -n}); }

ModeSet ModeSet::shells(int max_n2) {
  const auto ball = enumerate_lattice(kTwoPi * std::sqrt(static_cast<double>(max_n2)));
  return ModeSet(ball.points);
}

int ModeSet::find(const IVec3& n) const {
  for (std::size_t i = 0; i < modes_.size(); ++i)
    if (modes_[i] == n) return static_cast<int>(i);
  return -1;
}

// ---- basis -----------------------------------------------------------------

namespace {

std::string key_of(const std::uint8_t* occ, std::size_t m) { return std::string(reinterpret_cast<const char*>(occ), m); }

}  // namespace

FockBasis::FockBasis(const ModeSet& modes, int n_max, std::size_t max_dim) : modes_(modes), n_max_(n_max) {
  if (n_max < 0) throw InvalidArgument("n_max must be >= 0");
  if (n_max > 255) throw InvalidArgument("n_max must fit in a byte");
  const std::size_t M = modes_.size();
  // suffix bounds on |momentum component| per unit occupancy, for pruning
  std::vector<std::array<int, 3>> reach(M + 1, {0, 0, 0});
  for (std::size_t i = M; i-- > 0;)
    for (int k = 0; k < 3; ++k) reach[i][k] = std::max(reach[i + 1][k], std::abs(modes_[i][k]));

  std::vector<std::uint8_t> cur(M, 0);
  auto emit = [&] {
    if (count_ >= max_dim) throw BasisTooLarge("Fock basis exceeds the dimension limit");
    occ_.insert(occ_.end(), cur.begin(), cur.end());
    index_.emplace(key_of(cur.data(), M), count_);
    ++count_;
  };
  // depth-first: mode d gets occupancy 0, 1, ... in turn
  auto rec = [&](auto&& self, std::size_t d, int left, IVec3 P) -> void {
    if (d == M) {
      if (norm2(P) == 0) emit();
      return;
    }
    for (int k = 0; k < 3; ++k)
      if (std::abs(P[k]) > left * reach[d][k]) return;
    for (int n = 0; n <= left; ++n) {
      cur[d] = static_cast<std::uint8_t>(n);
      const IVec3 Q = {P[0] + n * modes_[d][0], P[1] + n * modes_[d][1], P[2] + n * modes_[d][2]};
      self(self, d + 1, left - n, Q);
    }
    cur[d] = 0;
  };
  rec(rec, 0, n_max, {0, 0, 0});
}

int FockBasis::occupancy(std::size_t i) const {
  int s = 0;
  const auto* o = state(i);
  for (std::size_t k = 0; k < modes_.size(); ++k) s += o[k];
  return s;
}

std::int64_t FockBasis::find(const std::uint8_t* occ) const {
  auto it = index_.find(key_of(occ, modes_.size()));
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

// ---- operators -------------------------------------------------------------

double SparseSymmetricOperator::max_asymmetry() const {
  Eigen::SparseMatrix<double, Eigen::RowMajor> d = mat - Eigen::SparseMatrix<double, Eigen::RowMajor>(mat.transpose());
  double m = 0.0;
  for (int k = 0; k < d.outerSize(); ++k)
    for (decltype(d)::InnerIterator it(d, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

double SparseSymmetricOperator::norm_bound() const {
  double m = 0.0;
  for (int k = 0; k < mat.outerSize(); ++k) {
    double s = 0.0;
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(mat, k); it; ++it) s += std::abs(it.value());
    m = std::max(m, s);
  }
  return m;
}

namespace {

IVec3 net_momentum(const ModeSet& modes, const Monomial& t) {
  IVec3 P{0, 0, 0};
  for (const auto& op : t.ops) {
    const IVec3& k = modes[static_cast<std::size_t>(op.mode)];
    P = op.dagger ? P + k : P - k;
  }
  return P;
}

}  // namespace

SparseSymmetricOperator assemble(const FockBasis& basis, const std::vector<Monomial>& terms, Assembly mode,
                                 AssemblyStats* stats) {
  const auto& modes = basis.modes();
  for (const auto& t : terms)
    if (norm2(net_momentum(modes, t)) != 0) throw InvalidArgument("operator term does not conserve momentum");

  const std::size_t M = modes.size();
  const std::size_t dim = basis.size();
  std::vector<Eigen::Triplet<double>> trip;
  std::size_t truncated = 0;
  std::vector<std::uint8_t> occ(M);
  for (std::size_t j = 0; j < dim; ++j) {
    for (const auto& t : terms) {
      if (t.coeff == 0.0) continue;
      std::copy(basis.state(j), basis.state(j) + M, occ.begin());
      double amp = t.coeff;
      int total = basis.occupancy(j);
      bool zero = false;
      for (auto it = t.ops.rbegin(); it != t.ops.rend(); ++it) {
        auto& n = occ[static_cast<std::size_t>(it->mode)];
        if (it->dagger) {
          amp *= std::sqrt(static_cast<double>(n) + 1.0);
          ++n;
          ++total;
        } else {
          if (n == 0) {
            zero = true;
            break;
          }
          amp *= std::sqrt(static_cast<double>(n));
          --n;
          --total;
        }
      }
      if (zero) continue;
      if (total > basis.n_max()) {
        ++truncated;
        continue;
      }
      const auto i = basis.find(occ.data());
      if (i < 0) throw InvalidArgument("operator image left the zero-momentum sector");
      trip.emplace_back(static_cast<int>(i), static_cast<int>(j), amp);
      if (mode == Assembly::AddAdjoint) trip.emplace_back(static_cast<int>(j), static_cast<int>(i), amp);
    }
  }
  SparseSymmetricOperator op;
  op.mat.resize(static_cast<int>(dim), static_cast<int>(dim));
  op.mat.setFromTriplets(trip.begin(), trip.end());
  if (mode == Assembly::Symmetrize) {
    Eigen::SparseMatrix<double, Eigen::RowMajor> t = op.mat.transpose();
    op.mat = 0.5 * (op.mat + t);
  }
  op.mat.makeCompressed();
  op.symmetric = mode != Assembly::General;
  if (stats) {
    stats->entries = static_cast<std::size_t>(op.mat.nonZeros());
    stats->truncated = truncated;
  }
  return op;
}

SparseSymmetricOperator operator+(const SparseSymmetricOperator& a, const SparseSymmetricOperator& b) {
  SparseSymmetricOperator r;
  r.mat = a.mat + b.mat;
  r.symmetric = a.symmetric && b.symmetric;
  return r;
}

ModeTables mode_tables(const ModeSet& modes, const BogoliubovTables& t, const ScaledPotentialTable& vt,
                       const LatticeBall& ball) {
  ModeTables mt;
  for (const auto& n : modes.modes()) {
    const auto i = ball.find(n);
    if (!i) throw InconsistentLattice("mode outside the lattice ball");
    mt.v.push_back(vt.values[*i]);
    mt.eta.push_back(t.eta[*i]);
    mt.c.push_back(t.c[*i]);
    mt.s.push_back(t.s[*i]);
    mt.ct.push_back(t.ct[*i]);
    mt.st.push_back(t.st[*i]);
    mt.F.push_back(t.F[*i]);
    mt.G.push_back(t.G[*i]);
    mt.e.push_back(t.e[*i]);
    mt.tau.push_back(t.tau[*i]);
  }
  return mt;
}

SparseSymmetricOperator build_G0(const FockBasis& basis, const std::vector<double>& F, const std::vector<double>& G) {
  const auto& modes = basis.modes();
  std::vector<Monomial> diag, pair;
  for (std::size_t p = 0; p < modes.size(); ++p) {
    const int ip = static_cast<int>(p), im = modes.neg(p);
    diag.push_back({F[p], {{ip, true}, {ip, false}}});
    // 1/2 G_p a+_p a+_-p over both members of the pair, plus adjoint
    pair.push_back({0.5 * G[p], {{ip, true}, {im, true}}});
  }
  return assemble(basis, diag, Assembly::Symmetrize) + assemble(basis, pair, Assembly::AddAdjoint);
}

SparseSymmetricOperator build_G1tilde(const FockBasis& basis, const ModeTables& mt, const ScaledPotentialTable& vt,
                                      double N, const CubicOptions& opt, std::size_t* dropped) {
  (void)vt;
  const auto& modes = basis.modes();
  const double pref = 1.0 / std::sqrt(N);
  std::vector<Monomial> terms;
  std::size_t lost = 0;
  for (std::size_t p = 0; p < modes.size(); ++p)
    for (std::size_t q = 0; q < modes.size(); ++q) {
      const IVec3 k = modes[p] + modes[q];
      if (norm2(k) == 0) continue;
      const int ik = modes.find(k);
      if (ik < 0) {
        ++lost;
        continue;
      }
      const auto K = static_cast<std::size_t>(ik);
      const int ip = static_cast<int>(p), iq = static_cast<int>(q);
      const int mp = modes.neg(p), mq = modes.neg(q), mk = modes.neg(K);
      const double v = mt.v[p] * pref;
      terms.push_back({v * mt.c[K] * mt.c[p] * mt.c[q], {{ik, true}, {mp, true}, {iq, false}}});
      terms.push_back({v * mt.c[K] * mt.c[p] * mt.s[q], {{ik, true}, {mp, true}, {mq, true}}});
      if (opt.include_Rd) {
        terms.push_back({v * mt.c[K] * mt.s[p] * mt.c[q], {{ik, true}, {ip, false}, {iq, false}}});
        terms.push_back({v * mt.s[K] * mt.c[p] * mt.c[q], {{mk, false}, {mp, true}, {iq, false}}});
        terms.push_back({v * mt.s[K] * mt.s[p] * mt.c[q], {{mk, false}, {ip, false}, {iq, false}}});
        terms.push_back({v * mt.c[K] * mt.s[p] * mt.s[q], {{ik, true}, {ip, false}, {mq, true}}});
        terms.push_back({v * mt.s[K] * mt.c[p] * mt.s[q], {{mk, false}, {mp, true}, {mq, true}}});
        terms.push_back({v * mt.s[K] * mt.s[p] * mt.s[q], {{mk, false}, {ip, false}, {mq, true}}});
      }
    }
  if (dropped) *dropped = lost;
  return assemble(basis, terms, Assembly::AddAdjoint);
}

SparseSymmetricOperator build_G2(const FockBasis& basis, const ModeTables& mt, const ScaledPotentialTable& vt,
                                 double N) {
  const auto& modes = basis.modes();
  const double pref = 1.0 / (2.0 * N);
  std::vector<Monomial> terms;
  const std::size_t M = modes.size();
  for (std::size_t p = 0; p < M; ++p)
    for (std::size_t k = 0; k < M; ++k) {
      const IVec3 r = modes[k] - modes[p];
      if (norm2(r) == 0) continue;
      const double v = vt.of_diff(r) * pref;
      for (std::size_t q = 0; q < M; ++q) {
        const int iqr = modes.find(modes[q] + r);
        if (iqr < 0) continue;
        const auto Q = static_cast<std::size_t>(iqr);
        terms.push_back({v * mt.c[k] * mt.c[q] * mt.c[p] * mt.c[Q],
                         {{static_cast<int>(k), true}, {static_cast<int>(q), true}, {static_cast<int>(p), false},
                          {iqr, false}}});
      }
    }
  return assemble(basis, terms, Assembly::Symmetrize);
}

SparseSymmetricOperator number_operator(const FockBasis& basis) {
  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t i = 0; i < basis.size(); ++i)
    trip.emplace_back(static_cast<int>(i), static_cast<int>(i), static_cast<double>(basis.occupancy(i)));
  SparseSymmetricOperator op;
  op.mat.resize(static_cast<int>(basis.size()), static_cast<int>(basis.size()));
  op.mat.setFromTriplets(trip.begin(), trip.end());
  return op;
}

Eigen::VectorXd apply_pair_rotation(const FockBasis& basis, const std::vector<double>& eta, const Eigen::VectorXd& x,
                                    double sign) {
  const auto& modes = basis.modes();
  std::vector<Monomial> terms;
  for (std::size_t p = 0; p < modes.size(); ++p) {
    const int ip = static_cast<int>(p), im = modes.neg(p);
    terms.push_back({0.5 * sign * eta[p], {{ip, true}, {im, true}}});
    terms.push_back({-0.5 * sign * eta[p], {{ip, false}, {im, false}}});
  }
  const auto B = assemble(basis, terms, Assembly::General);
  Eigen::VectorXd out = x, term = x;
  const double scale = x.norm();
  for (int k = 1; k < 400; ++k) {
    term = B.apply(term) / static_cast<double>(k);
    out += term;
    if (term.norm() <= 1e-18 * scale) return out;
  }
  throw EigenNonConvergence("pair rotation series did not converge");
}

// ---- eigen / linear solvers ---------------------------------------------------

namespace {

// min_x over v-perp of (A - lambda) x = b, with A - lambda positive on v-perp
Eigen::VectorXd projected_cg(const SparseSymmetricOperator& A, double lambda, const Eigen::VectorXd& v,
                             const Eigen::VectorXd& b, double rtol, int max_iter, bool* ok) {
  auto P = [&](Eigen::VectorXd y) {
    if (v.size()) y -= v * v.dot(y);
    return y;
  };
  auto op = [&](const Eigen::VectorXd& y) { return P(A.apply(y) - lambda * y); };
  Eigen::VectorXd x = Eigen::VectorXd::Zero(b.size());
  Eigen::VectorXd r = P(b);
  Eigen::VectorXd d = r;
  double rr = r.squaredNorm();
  const double target = rtol * rtol * rr;
  *ok = rr == 0.0;
  for (int it = 0; it < max_iter && !*ok; ++it) {
    Eigen::VectorXd Ad = op(d);
    const double dAd = d.dot(Ad);
    if (!(dAd > 0.0)) break;
    const double alpha = rr / dAd;
    x += alpha * d;
    r -= alpha * Ad;
    const double rr2 = r.squaredNorm();
    if (rr2 <= target) *ok = true;
    d = r + (rr2 / rr) * d;
    rr = rr2;
  }
  // one round of residual replacement keeps the small components honest
  if (*ok) {
    Eigen::VectorXd r2 = P(b) - op(x);
    if (r2.squaredNorm() > target) *ok = false;
  }
  return P(x);
}

}  // namespace

GroundState ground_state(const SparseSymmetricOperator& op, double tol, const Eigen::VectorXd* start) {
  const auto n = static_cast<Eigen::Index>(op.dim());
  GroundState gs;
  if (n == 0) throw EigenNonConvergence("empty operator");
  if (n == 1) {
    gs.energy = op.mat.coeff(0, 0);
    gs.vector = Eigen::VectorXd::Ones(1);
    return gs;
  }
  const double scale = std::max(op.norm_bound(), 1e-300);
  Eigen::VectorXd v;
  if (start) {
    v = *start;
  } else {
    v.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(1.0 + static_cast<double>(i));
  }
  v.normalize();

  const int m_max = static_cast<int>(std::min<Eigen::Index>(n, 120));
  double theta = 0.0;
  bool converged = false;
  for (int restart = 0; restart < 40 && !converged; ++restart) {
    std::vector<Eigen::VectorXd> Q{v};
    std::vector<double> alpha, beta;
    for (int j = 0; j < m_max; ++j) {
      Eigen::VectorXd w = op.apply(Q[static_cast<std::size_t>(j)]);
      alpha.push_back(Q[static_cast<std::size_t>(j)].dot(w));
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : Q) w -= q * q.dot(w);
      const double b = w.norm();
      ++gs.iterations;
      if (b <= 1e-14 * scale || j + 1 == m_max) break;
      beta.push_back(b);
      Q.push_back(w / b);
    }
    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd d = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd e = Eigen::Map<Eigen::VectorXd>(beta.data(), m - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
    theta = es.eigenvalues()[0];
    Eigen::VectorXd y = es.eigenvectors().col(0);
    v.setZero(n);
    for (Eigen::Index k = 0; k < m; ++k) v += y[k] * Q[static_cast<std::size_t>(k)];
    v.normalize();
    const double res = (op.apply(v) - theta * v).norm();
    converged = res <= std::max(tol, 1e-13) * scale;
  }
  if (!converged) throw EigenNonConvergence("Lanczos did not reach the requested residual");

  // correction-equation refinement: (A - theta) d = -r on v-perp
  for (int k = 0; k < 6; ++k) {
    theta = v.dot(op.apply(v));
    Eigen::VectorXd r = op.apply(v) - theta * v;
    if (r.norm() == 0.0) break;
    bool ok = false;
    Eigen::VectorXd dv = projected_cg(op, theta, v, -r, 1e-13, 2000, &ok);
    if (!ok) break;
    v += dv;
    v.normalize();
    if (dv.norm() <= 1e-17) break;
  }
  gs.vector = v;
  gs.energy = v.dot(op.apply(v));
  gs.residual = (op.apply(v) - gs.energy * v).norm();
  return gs;
}

double rs_pt2(const SparseSymmetricOperator& G0, const SparseSymmetricOperator& V, double E0,
              const Eigen::VectorXd& gs0, double tol) {
  Eigen::VectorXd b = V.apply(gs0);
  b -= gs0 * gs0.dot(b);
  if (b.squaredNorm() == 0.0) return 0.0;
  bool ok = false;
  Eigen::VectorXd y = projected_cg(G0, E0, gs0, b, tol, 20000, &ok);
  if (!ok) throw LinearSolveNonConvergence("resolvent solve did not converge");
  return -b.dot(y);
}

// ---- restricted closed forms --------------------------------------------------

double restricted_E0(const ModeTables& mt) {
  KahanSum s;
  for (std::size_t i = 0; i < mt.F.size(); ++i) s.add(-0.5 * mt.G[i] * mt.G[i] / (mt.F[i] + mt.e[i]));
  return s.value();
}

double restricted_e_pert(const ModeSet& modes, const ModeTables& mt, double N) {
  auto co = [&](std::size_t i) { return ModeCoeffs{mt.v[i], mt.c[i], mt.s[i], mt.ct[i], mt.st[i], mt.e[i]}; };
  KahanSum s;
  for (std::size_t p = 0; p < modes.size(); ++p)
    for (std::size_t q = 0; q < modes.size(); ++q) {
      const IVec3 k = modes[p] + modes[q];
      if (norm2(k) == 0) continue;
      const int ik = modes.find(k);
      if (ik < 0) continue;
      const auto K = static_cast<std::size_t>(ik);
      const double f = f_value(co(p), co(q), co(K));
      s.add(f * f / (mt.e[K] + mt.e[p] + mt.e[q]));
    }
  return -6.0 * s.value() / N;
}

double restricted_g2(const ModeSet& modes, const ModeTables& mt, const ScaledPotentialTable& vt, double N) {
  KahanSum s;
  for (std::size_t p = 0; p < modes.size(); ++p)
    for (std::size_t k = 0; k < modes.size(); ++k) {
      if (k == p) continue;
      const double w = vt.of_diff(modes[k] - modes[p]) * mt.c[k] * mt.c[k] * mt.c[p] * mt.c[p] * mt.st[k] * mt.st[p];
      s.add(w * (mt.ct[k] * mt.ct[p] + mt.st[k] * mt.st[p]));
    }
  return s.value() / (2.0 * N);
}

double restricted_depletion(const ModeTables& mt) {
  KahanSum s;
  for (std::size_t i = 0; i < mt.eta.size(); ++i) {
    const double x = std::sinh(mt.eta[i] + mt.tau[i]);
    s.add(x * x);
  }
  return s.value();
}

}  // namespace bosecorr
