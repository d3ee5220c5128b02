#pragma once

#include <span>

#include "gsamp/graph.hpp"

// Data-parallel inner loops. Every kernel has a serial reference and an
// OpenMP version; both compute each output entry with the same operation
// order, so their results are bit-identical.
namespace gsamp::kernels {

// True when the library was compiled with OpenMP.
bool openmp_enabled();
int max_threads();

// Scaled, shifted Chebyshev recurrence for a symmetric operator:
//   y = c0/2 x + sum_{j>=1} c_j T_j((A - center I) / half_width) x
struct ChebyshevPlan {
  std::span<const double> coeffs;
  double center = 0.0;
  double half_width = 1.0;
};

namespace serial {

// y = A x for symmetric A (reads columns, so only symmetry is assumed).
void symv(const Matrix& a, std::span<const double> x, std::span<double> y);
void chebyshev(const Matrix& a, const ChebyshevPlan& plan, std::span<const double> x, std::span<double> y);

}  // namespace serial

namespace parallel {

void symv(const Matrix& a, std::span<const double> x, std::span<double> y);
void chebyshev(const Matrix& a, const ChebyshevPlan& plan, std::span<const double> x, std::span<double> y);

}  // namespace parallel

}  // namespace gsamp::kernels
