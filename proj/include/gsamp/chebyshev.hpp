#pragma once

#include <functional>
#include <vector>

#include "gsamp/graph.hpp"

namespace gsamp {

// Chebyshev expansion f(l) ~ c0/2 + sum_{j=1..P} c_j T_j(t), t = (l - center)/half_width,
// on the interval [lo, hi].
struct ChebyshevFilter {
  std::vector<double> coeffs;
  double lo = 0.0;
  double hi = 2.0;
  double grid_error = 0.0;  // max |f - p| on a 1000-point uniform grid of [lo, hi]

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  double center() const { return 0.5 * (hi + lo); }
  double half_width() const { return 0.5 * (hi - lo); }
  double operator()(double lambda) const;
};

inline constexpr int kChebyshevGridPoints = 1000;

// Coefficients by Chebyshev-Gauss quadrature on 2P nodes.
ChebyshevFilter chebyshev_fit(const std::function<double(double)>& response, double lo, double hi, int order);

// Largest eigenvalue estimate of a symmetric PSD operator, from below
// (power iteration with a fixed start vector). Used for interval checks only.
double estimate_lambda_max(const Matrix& op);

// Polynomial filtering with matrix-vector products only. The fit interval
// must cover [0, lambda_max(op)].
Vector apply_chebyshev(const VariationOperator& op, const ChebyshevFilter& cf, const Vector& x, bool parallel = true);

}  // namespace gsamp
