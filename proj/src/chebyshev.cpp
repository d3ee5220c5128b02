#include "gsamp/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gsamp/error.hpp"
#include "gsamp/kernels.hpp"

namespace gsamp {

double ChebyshevFilter::operator()(double lambda) const {
  // Clenshaw summation.
  const double t = (lambda - center()) / half_width();
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t j = coeffs.size(); j-- > 1;) {
    const double b0 = 2.0 * t * b1 - b2 + coeffs[j];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + 0.5 * coeffs[0];
}

ChebyshevFilter chebyshev_fit(const std::function<double(double)>& response, double lo, double hi, int order) {
  require(order >= 1, ErrorCode::InvalidParameter, "Chebyshev order must be >= 1");
  require(std::isfinite(lo) && std::isfinite(hi) && hi > lo, ErrorCode::InvalidParameter, "bad Chebyshev interval");
  require(static_cast<bool>(response), ErrorCode::InvalidParameter, "Chebyshev fit needs a response function");

  ChebyshevFilter cf;
  cf.lo = lo;
  cf.hi = hi;
  const int nodes = 2 * order;
  std::vector<double> theta(static_cast<std::size_t>(nodes)), fval(static_cast<std::size_t>(nodes));
  for (int k = 0; k < nodes; ++k) {
    theta[k] = std::numbers::pi * (k + 0.5) / nodes;
    fval[k] = response(cf.half_width() * std::cos(theta[k]) + cf.center());
    require(std::isfinite(fval[k]), ErrorCode::InvalidParameter, "response is not bounded on the interval");
  }
  cf.coeffs.resize(static_cast<std::size_t>(order) + 1);
  for (int j = 0; j <= order; ++j) {
    double acc = 0.0;
    for (int k = 0; k < nodes; ++k) acc += fval[k] * std::cos(j * theta[k]);
    cf.coeffs[j] = 2.0 * acc / nodes;
  }
  for (int g = 0; g < kChebyshevGridPoints; ++g) {
    const double l = lo + (hi - lo) * g / (kChebyshevGridPoints - 1);
    cf.grid_error = std::max(cf.grid_error, std::abs(response(l) - cf(l)));
  }
  return cf;
}

double estimate_lambda_max(const Matrix& op) {
  const Index n = op.rows();
  Vector v = Vector::LinSpaced(n, 1.0, 2.0);
  v.normalize();
  double est = 0.0;
  for (int it = 0; it < 500; ++it) {
    Vector w = op * v;
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    const double rayleigh = v.dot(w);
    v = w / norm;
    if (it > 10 && std::abs(rayleigh - est) <= 1e-13 * std::abs(rayleigh)) return rayleigh;
    est = rayleigh;
  }
  return est;
}

Vector apply_chebyshev(const VariationOperator& op, const ChebyshevFilter& cf, const Vector& x, bool parallel) {
  require(x.size() == op.size(), ErrorCode::DimensionMismatch, "apply_chebyshev: signal length");
  require(!cf.coeffs.empty(), ErrorCode::InvalidParameter, "empty Chebyshev filter");
  require(cf.lo <= 1e-12, ErrorCode::IntervalMismatch, "Chebyshev interval must start at 0");
  // Gershgorin first; the power-iteration estimate only when that is too loose.
  double gershgorin = 0.0;
  for (Index i = 0; i < op.size(); ++i) gershgorin = std::max(gershgorin, op.matrix.col(i).cwiseAbs().sum());
  if (cf.hi < gershgorin) {
    const double est = estimate_lambda_max(op.matrix);
    require(cf.hi >= est * (1.0 - 1e-9), ErrorCode::IntervalMismatch,
            "Chebyshev interval does not cover the operator spectrum");
  }
  Vector y(x.size());
  const kernels::ChebyshevPlan plan{cf.coeffs, cf.center(), cf.half_width()};
  if (parallel)
    kernels::parallel::chebyshev(op.matrix, plan, {x.data(), static_cast<std::size_t>(x.size())},
                                 {y.data(), static_cast<std::size_t>(y.size())});
  else
    kernels::serial::chebyshev(op.matrix, plan, {x.data(), static_cast<std::size_t>(x.size())},
                               {y.data(), static_cast<std::size_t>(y.size())});
  return y;
}

}  // namespace gsamp
