#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace bosecorr {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

using IVec3 = std::array<int, 3>;

inline int norm2(const IVec3& n) { return n[0] * n[0] + n[1] * n[1] + n[2] * n[2]; }
inline IVec3 operator+(const IVec3& a, const IVec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline IVec3 operator-(const IVec3& a, const IVec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline IVec3 operator-(const IVec3& a) { return {-a[0], -a[1], -a[2]}; }

// v = kappa * 1_{B_R} * 1_{B_R}; its transform is kappa * |1^_{B_R}|^2.
struct Potential {
  double kappa = 0.0;
  double R = 0.25;

  // 0 < R <= 1/4 keeps supp v inside the unit torus; kappa >= 0.
  void validate() const;
  double vhat0() const;
};

// Closed form of the transform at momentum modulus |p|. Total function.
double vhat(const Potential& pot, double pabs);
double vhat(const Potential& pot, const std::array<double, 3>& p);

// Lattice momenta p = 2 pi n with 0 < |p| <= K, ordered by |n|^2 then
// lexicographically on n.
class LatticeBall {
 public:
  double cutoff_K = 0.0;
  std::vector<IVec3> points;
  std::vector<int> n2;              // |n|^2 per point
  std::vector<std::size_t> shell_begin;  // start offsets, plus a final sentinel
  int n_max = 0;                    // largest |n_i| over the ball

  std::size_t size() const { return points.size(); }
  double p2(std::size_t i) const { return kTwoPi * kTwoPi * n2[i]; }
  double pabs(std::size_t i) const;
  std::size_t shell_count() const { return shell_begin.size() - 1; }

  // position of n in the ordering, or nullopt if n is outside the ball / zero
  std::optional<std::size_t> find(const IVec3& n) const;
  // index or -1, without bounds surprises
  std::int64_t index_of(const IVec3& n) const;
  std::size_t neg(std::size_t i) const { return neg_[i]; }

  friend LatticeBall enumerate_lattice(double K);

 private:
  std::vector<std::int32_t> cube_;  // dense (2 n_max + 1)^3 index map
  std::vector<std::size_t> neg_;
};

// Throws CutoffTooSmall if K < 2 pi.
LatticeBall enumerate_lattice(double K);

// Largest integer m with 2 pi sqrt(m) <= K (with a relative slack of 1e-12
// so that cutoffs like 2 pi sqrt(2) include their shell).
int max_shell(double K);

// v^_N^beta(p) = v^(p / N^beta) on a lattice ball and at zero.
// Values are tabulated by integer |n|^2 so every lookup of a lattice difference
// goes through one code path.
class ScaledPotentialTable {
 public:
  Potential pot;
  double N = 0.0;
  double beta = 0.0;
  double scale = 1.0;           // N^beta
  std::vector<double> values;   // per ball point

  double at_zero() const { return radial_[0]; }
  // v^_N^beta at lattice momentum with |n|^2 = m; m must be <= max_m()
  double radial(int m) const { return radial_[static_cast<std::size_t>(m)]; }
  double of_diff(const IVec3& d) const { return radial(norm2(d)); }
  int max_m() const { return static_cast<int>(radial_.size()) - 1; }
  const std::vector<double>& radial_table() const { return radial_; }
  // continuum evaluation, used by tail quadratures
  double at(double pabs) const { return vhat(pot, pabs / scale); }

  friend ScaledPotentialTable scaled_table(const Potential&, const LatticeBall&, double, double);

 private:
  std::vector<double> radial_;
};

// Throws BetaOutOfRange unless 0 < beta < 1. The radial table covers every
// difference of two ball points (|n|^2 <= 3 (2 n_max)^2).
ScaledPotentialTable scaled_table(const Potential& pot, const LatticeBall& ball, double N, double beta);

}  // namespace bosecorr
