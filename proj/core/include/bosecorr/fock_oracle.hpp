#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "bosecorr/corrections.hpp"

namespace bosecorr {

// A small set of nonzero lattice modes closed under negation.
class ModeSet {
 public:
  ModeSet() = default;
  explicit ModeSet(std::vector<IVec3> modes);

  static ModeSet pair(const IVec3& n);
  // every n with 0 < |n|^2 <= max_n2, in lattice-ball order
  static ModeSet shells(int max_n2);

  std::size_t size() const { return modes_.size(); }
  const IVec3& operator[](std::size_t i) const { return modes_[i]; }
  const std::vector<IVec3>& modes() const { return modes_; }
  int find(const IVec3& n) const;
  int neg(std::size_t i) const { return neg_[i]; }

  static constexpr std::size_t kMaxModes = 30;

 private:
  std::vector<IVec3> modes_;
  std::vector<int> neg_;
};

// Occupation-number states over a mode set with total occupancy <= n_max and
// zero total momentum. Enumerated depth first, vacuum first.
class FockBasis {
 public:
  FockBasis(const ModeSet& modes, int n_max, std::size_t max_dim = 2'000'000);

  std::size_t size() const { return count_; }
  int n_max() const { return n_max_; }
  const ModeSet& modes() const { return modes_; }
  const std::uint8_t* state(std::size_t i) const { return occ_.data() + i * modes_.size(); }
  int occupancy(std::size_t i) const;
  std::int64_t find(const std::uint8_t* occ) const;
  std::size_t vacuum() const { return 0; }

 private:
  ModeSet modes_;
  int n_max_;
  std::size_t count_ = 0;
  std::vector<std::uint8_t> occ_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct Ladder {
  int mode;
  bool dagger;
};

// coeff * ops[0] ops[1] ... ops[k-1]; the rightmost operator acts first
struct Monomial {
  double coeff;
  std::vector<Ladder> ops;
};

struct SparseSymmetricOperator {
  Eigen::SparseMatrix<double, Eigen::RowMajor> mat;
  bool symmetric = true;

  std::size_t dim() const { return static_cast<std::size_t>(mat.rows()); }
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const { return mat * x; }
  double max_asymmetry() const;
  double norm_bound() const;  // max absolute row sum
};

enum class Assembly {
  AddAdjoint,  // monomials are A; the operator is A + A^dagger, both triangles from one evaluation
  Symmetrize,  // the monomial list is self-adjoint; the result is (M + M^T)/2
  General      // no symmetry imposed (generators, diagnostics)
};

struct AssemblyStats {
  std::size_t entries = 0;
  std::size_t truncated = 0;  // images above n_max
};

SparseSymmetricOperator assemble(const FockBasis& basis, const std::vector<Monomial>& terms, Assembly mode,
                                 AssemblyStats* stats = nullptr);
SparseSymmetricOperator operator+(const SparseSymmetricOperator& a, const SparseSymmetricOperator& b);

// Coefficients of the mode set taken from full-lattice tables.
struct ModeTables {
  std::vector<double> v, eta, c, s, ct, st, F, G, e, tau;
};
ModeTables mode_tables(const ModeSet& modes, const BogoliubovTables& t, const ScaledPotentialTable& vt,
                       const LatticeBall& ball);

SparseSymmetricOperator build_G0(const FockBasis& basis, const std::vector<double>& F, const std::vector<double>& G);

struct CubicOptions {
  bool include_Rd = false;  // subleading cubic terms
};
SparseSymmetricOperator build_G1tilde(const FockBasis& basis, const ModeTables& mt, const ScaledPotentialTable& vt,
                                      double N, const CubicOptions& opt = {}, std::size_t* dropped = nullptr);
SparseSymmetricOperator build_G2(const FockBasis& basis, const ModeTables& mt, const ScaledPotentialTable& vt,
                                 double N);
SparseSymmetricOperator number_operator(const FockBasis& basis);

// exp(sign * B) x with B = (1/2) sum_p eta_p (a+_p a+_-p - a_p a_-p), by Taylor series
Eigen::VectorXd apply_pair_rotation(const FockBasis& basis, const std::vector<double>& eta, const Eigen::VectorXd& x,
                                    double sign);

struct GroundState {
  double energy = 0.0;
  Eigen::VectorXd vector;
  double residual = 0.0;  // ||A v - E v||
  int iterations = 0;
};

// Lanczos with full reorthogonalization and restarts, then a few
// correction-equation refinements that resolve tiny components to relative
// precision. `start` defaults to a fixed generic vector.
GroundState ground_state(const SparseSymmetricOperator& op, double tol, const Eigen::VectorXd* start = nullptr);

// Second-order energy -<b, (G0 - E0)^{-1} b> with b = Q0 V gs0, solved by
// projected conjugate gradients. Throws LinearSolveNonConvergence.
double rs_pt2(const SparseSymmetricOperator& G0, const SparseSymmetricOperator& V, double E0,
              const Eigen::VectorXd& gs0, double tol);

// closed forms restricted to a mode set, for comparison with the oracle
double restricted_E0(const ModeTables& mt);
double restricted_e_pert(const ModeSet& modes, const ModeTables& mt, double N);
double restricted_g2(const ModeSet& modes, const ModeTables& mt, const ScaledPotentialTable& vt, double N);
double restricted_depletion(const ModeTables& mt);

}  // namespace bosecorr
