#include "bosecorr/tails.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <vector>

#include "bosecorr/lattice_potential.hpp"
#include "bosecorr/summation.hpp"

namespace bosecorr {

namespace {

using Radial = boost::math::quadrature::gauss<double, 20>;
using Angular = boost::math::quadrature::gauss<double, 30>;

std::vector<std::pair<double, double>> panels(double a, double b, double scale) {
  std::vector<std::pair<double, double>> out;
  double x = a;
  while (x < b) {
    double w = std::min(0.25 * x, 0.5 * scale);
    w = std::max(w, 1e-12 * b);
    const double y = std::min(b, x + w);
    out.emplace_back(x, y);
    x = y;
  }
  return out;
}

}  // namespace

double effective_radius(std::size_t ball_points) {
  return kTwoPi * std::cbrt(3.0 * static_cast<double>(ball_points + 1) / (4.0 * kPi));
}

double radial_tail(const std::function<double(double)>& g, double r_eff, double upper, double scale) {
  if (!(upper > r_eff)) return 0.0;
  KahanSum s;
  for (auto [a, b] : panels(r_eff, upper, scale))
    s.add(Radial::integrate([&](double q) { return q * q * g(q); }, a, b));
  return s.value() / (2.0 * kPi * kPi);
}

double convolution_tail(double p, const std::function<double(double)>& k, const std::function<double(double)>& g,
                        double r_eff, double upper, double scale) {
  if (!(upper > r_eff)) return 0.0;
  auto angular = [&](double q) {
    return Angular::integrate(
        [&](double t) {
          const double u2 = p * p + q * q - 2.0 * p * q * t;
          return k(std::sqrt(std::max(u2, 0.0)));
        },
        -1.0, 1.0);
  };
  KahanSum s;
  for (auto [a, b] : panels(r_eff, upper, scale))
    s.add(Radial::integrate([&](double q) { return q * q * g(q) * angular(q); }, a, b));
  return s.value() / (4.0 * kPi * kPi);
}

double power_law_tail(double boundary_value, double K, double s) {
  const double C = std::abs(boundary_value) * std::pow(K, s);
  return C * std::pow(K, 3.0 - s) / ((s - 3.0) * 2.0 * kPi * kPi);
}

}  // namespace bosecorr
