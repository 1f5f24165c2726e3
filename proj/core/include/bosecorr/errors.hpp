#pragma once

#include <stdexcept>
#include <string>

namespace bosecorr {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CutoffTooSmall : Error { using Error::Error; };
struct BetaOutOfRange : Error { using Error::Error; };
struct ZeroMomentumArgument : Error { using Error::Error; };
struct InconsistentLattice : Error { using Error::Error; };
struct BasisTooLarge : Error { using Error::Error; };
struct InvalidPotential : Error { using Error::Error; };
struct InvalidArgument : Error { using Error::Error; };
struct EigenNonConvergence : Error { using Error::Error; };
struct LinearSolveNonConvergence : Error { using Error::Error; };

struct NonConvergence : Error {
  NonConvergence(int iterations, double last_residual);
  int iterations;
  double last_residual;
};

// |G_p| >= F_p somewhere: the quadratic form cannot be brought to normal form
struct DiagonalizationFailure : Error {
  DiagonalizationFailure(int nx, int ny, int nz, double F, double G);
  int n[3];
  double F, G;
};

}  // namespace bosecorr
