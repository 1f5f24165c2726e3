#include "bosecorr/errors.hpp"

#include <cstdio>

namespace bosecorr {

namespace {
std::string fmt_nonconv(int it, double r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "scattering iteration did not converge: %d iterations, residual %.6e", it, r);
  return buf;
}
std::string fmt_diag(int x, int y, int z, double F, double G) {
  char buf[200];
  std::snprintf(buf, sizeof buf, "quadratic form not diagonalizable at n=(%d,%d,%d): F=%.6e G=%.6e", x, y, z, F, G);
  return buf;
}
}  // namespace

NonConvergence::NonConvergence(int it, double r)
    : Error(fmt_nonconv(it, r)), iterations(it), last_residual(r) {}

DiagonalizationFailure::DiagonalizationFailure(int x, int y, int z, double F_, double G_)
    : Error(fmt_diag(x, y, z, F_, G_)), n{x, y, z}, F(F_), G(G_) {}

}  // namespace bosecorr
