#include "slabmix/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace slabmix {
namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
struct LegendreEval {
  double p;
  double dp;
};

LegendreEval legendre(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

void gauss_legendre_on(int n, double a, double b, Eigen::VectorXd& x,
                       Eigen::VectorXd& w) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_on: n must be >= 1");
  x.resize(n);
  w.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi-style initial guess, then Newton.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    LegendreEval ev{};
    for (int it = 0; it < 100; ++it) {
      ev = legendre(n, z);
      const double dz = ev.p / ev.dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    ev = legendre(n, z);
    // Newton leaves |P_n| at rounding level, which scales with |P_n'|; check
    // the node error |P_n / P_n'| so high orders are not rejected spuriously.
    if (std::abs(ev.p) > 1e-14 * std::max(1.0, std::abs(ev.dp))) {
      throw std::runtime_error("gauss_legendre_on: Newton residual too large");
    }
    const double weight = 2.0 / ((1.0 - z * z) * ev.dp * ev.dp);
    // z descends from +1; store ascending with exact mirror symmetry.
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = weight;
    w[n - 1 - i] = weight;
  }
  if (n % 2 == 1) x[half - 1] = 0.0;

  // Affine map onto (a,b).
  const double mid = 0.5 * (a + b);
  const double scale = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    x[i] = mid + scale * x[i];
    w[i] *= scale;
  }
}

Quadrature gauss_legendre(int n) {
  if (n < 2 || n > 128 || n % 2 != 0) {
    throw std::invalid_argument(
        "gauss_legendre: order must be even and within [2,128]");
  }
  Quadrature quad;
  gauss_legendre_on(n, -1.0, 1.0, quad.mu, quad.w);
  return quad;
}

}  // namespace slabmix
