#include "gsamp/kernels.hpp"

#include <vector>

#include "gsamp/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gsamp::kernels {

bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

void check_dims(const Matrix& a, std::span<const double> x, std::span<double> y) {
  const auto n = static_cast<std::size_t>(a.rows());
  require(a.cols() == a.rows() && x.size() == n && y.size() == n, ErrorCode::DimensionMismatch, "kernel dims");
}

inline double column_dot(const double* col, const double* x, Index n) {
  double acc = 0.0;
  for (Index j = 0; j < n; ++j) acc += col[j] * x[j];
  return acc;
}

// One recurrence step: next = 2 (A cur - center cur) / hw - prev; y += c next.
// `Parallel` selects the loop schedule; the arithmetic is identical.
template <bool Parallel>
void chebyshev_impl(const Matrix& a, const ChebyshevPlan& plan, std::span<const double> x, std::span<double> y) {
  check_dims(a, x, y);
  const Index n = a.rows();
  const auto& c = plan.coeffs;
  require(!c.empty(), ErrorCode::InvalidParameter, "empty Chebyshev coefficients");
  const double* data = a.data();
  const double center = plan.center;
  const double inv_hw = 1.0 / plan.half_width;

  std::vector<double> prev(x.begin(), x.end());
  std::vector<double> cur(static_cast<std::size_t>(n));
  std::vector<double> next(static_cast<std::size_t>(n));

#pragma omp parallel for schedule(static) if (Parallel)
  for (Index i = 0; i < n; ++i) y[i] = 0.5 * c[0] * x[i];
  if (c.size() == 1) return;

#pragma omp parallel for schedule(static) if (Parallel)
  for (Index i = 0; i < n; ++i) {
    cur[i] = (column_dot(data + i * n, x.data(), n) - center * x[i]) * inv_hw;
    y[i] += c[1] * cur[i];
  }
  for (std::size_t k = 2; k < c.size(); ++k) {
    const double ck = c[k];
#pragma omp parallel for schedule(static) if (Parallel)
    for (Index i = 0; i < n; ++i) {
      next[i] = 2.0 * (column_dot(data + i * n, cur.data(), n) - center * cur[i]) * inv_hw - prev[i];
      y[i] += ck * next[i];
    }
    std::swap(prev, cur);
    std::swap(cur, next);
  }
}

}  // namespace

namespace serial {

void symv(const Matrix& a, std::span<const double> x, std::span<double> y) {
  check_dims(a, x, y);
  const Index n = a.rows();
  for (Index i = 0; i < n; ++i) y[i] = column_dot(a.data() + i * n, x.data(), n);
}

void chebyshev(const Matrix& a, const ChebyshevPlan& plan, std::span<const double> x, std::span<double> y) {
  chebyshev_impl<false>(a, plan, x, y);
}

}  // namespace serial

namespace parallel {

void symv(const Matrix& a, std::span<const double> x, std::span<double> y) {
  check_dims(a, x, y);
  const Index n = a.rows();
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) y[i] = column_dot(a.data() + i * n, x.data(), n);
}

void chebyshev(const Matrix& a, const ChebyshevPlan& plan, std::span<const double> x, std::span<double> y) {
  chebyshev_impl<true>(a, plan, x, y);
}

}  // namespace parallel

}  // namespace gsamp::kernels
