#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>

#include "gsamp/error.hpp"
#include "gsamp/graph.hpp"

namespace gsamp {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

template <class Scalar>
using VectorOf = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using MatrixOf = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// How the graph frequencies of a basis are ordered.
//   Ascending       - eigendecompose output, lambdas sorted ascending.
//   DftIndex        - DFT columns in frequency-index order (lambdas are the
//                     circulant eigenvalues, not sorted).
//   BipartitePaired - lambdas[0..N/2) ascending, lambdas[N/2 + i] = 2 - lambdas[i].
enum class FrequencyOrder { Ascending, DftIndex, BipartitePaired };

// GFT matrix (columns are the basis vectors u_i) and the graph frequencies.
template <class Scalar>
struct BasicSpectralBasis {
  MatrixOf<Scalar> u;
  Vector lambdas;
  FrequencyOrder order = FrequencyOrder::Ascending;

  Index size() const { return lambdas.size(); }
  double lambda_max() const { return lambdas.maxCoeff(); }
};

using SpectralBasis = BasicSpectralBasis<double>;
using ComplexBasis = BasicSpectralBasis<Complex>;

// Eigendecomposition of a symmetric operator. Ascending lambdas; each vector's
// first entry with magnitude above 1e-10 is made positive; inside clusters of
// equal eigenvalues the vectors are ordered lexicographically by their entries
// rounded to 1e-9.
SpectralBasis eigendecompose(const VariationOperator& op);

// Unitary DFT basis: u_i[n] = exp(2 pi j i n / N) / sqrt(N), so gft() is the
// unitary DFT. lambdas[i] = 2 - 2 cos(2 pi i / N) (circular-graph Laplacian).
ComplexBasis dft_basis(Index n);

struct BasisCheck {
  double orthonormality = 0.0;  // max |U^H U - I|
  double diagonalization = 0.0; // max |U^H M U - diag(lambdas)|
  bool ordered = true;
};
BasisCheck check_basis(const SpectralBasis& b, const Matrix& op);
BasisCheck check_basis(const ComplexBasis& b, const Matrix& op);

template <class Scalar, class Derived>
VectorOf<Scalar> gft(const BasicSpectralBasis<Scalar>& b, const Eigen::MatrixBase<Derived>& x) {
  require(x.size() == b.size(), ErrorCode::DimensionMismatch, "gft: signal length");
  return b.u.adjoint() * x.template cast<Scalar>();
}

template <class Scalar, class Derived>
VectorOf<Scalar> igft(const BasicSpectralBasis<Scalar>& b, const Eigen::MatrixBase<Derived>& xhat) {
  require(xhat.size() == b.size(), ErrorCode::DimensionMismatch, "igft: spectrum length");
  return b.u * xhat.template cast<Scalar>();
}

// Diagonal graph-frequency response. `values[i]` is the response at
// lambdas[i] of the basis the filter was built for; `response`, when present,
// is the continuous function the values were sampled from.
struct SpectralFilter {
  Vector values;
  std::function<double(double)> response;
  std::string name;

  Index size() const { return values.size(); }
  bool has_response() const { return static_cast<bool>(response); }

  static SpectralFilter sampled(const Vector& lambdas, std::function<double(double)> fn, std::string name);
  static SpectralFilter from_values(Vector values, std::string name = "custom");
};

SpectralFilter operator*(const SpectralFilter& a, const SpectralFilter& b);

template <class Scalar, class Derived>
VectorOf<Scalar> apply_filter(const BasicSpectralBasis<Scalar>& b, const SpectralFilter& f,
                              const Eigen::MatrixBase<Derived>& x) {
  require(f.size() == b.size() && x.size() == b.size(), ErrorCode::DimensionMismatch, "apply_filter");
  VectorOf<Scalar> xhat = gft(b, x);
  xhat.array() *= f.values.array().template cast<Scalar>();
  return b.u * xhat;
}

// Standard responses.
namespace filters {

double g_ir(double lambda, double lambda_max);
double generator_1(double lambda, double lambda_max, double epsilon);
double generator_2(double lambda, double lambda_max);
double recon_cos(double lambda, double lambda_max, double epsilon);
double smooth_v(double lambda, double lambda_max);

// Index-defined: 1 for i < k, else 0. The continuous response used for
// polynomial fitting is the indicator of lambda < cutoff, where the cutoff is
// the midpoint between the largest retained and the smallest discarded
// frequency.
SpectralFilter g_bl(const Vector& lambdas, Index k);
double g_bl_cutoff(const Vector& lambdas, Index k);

SpectralFilter g_ir(const Vector& lambdas, double lambda_max);
SpectralFilter generator_1(const Vector& lambdas, double lambda_max, double epsilon);
SpectralFilter generator_2(const Vector& lambdas, double lambda_max);
SpectralFilter recon_cos(const Vector& lambdas, double lambda_max, double epsilon);
SpectralFilter smooth_v(const Vector& lambdas, double lambda_max);
SpectralFilter ones(const Vector& lambdas);

}  // namespace filters

// Named filter descriptor, e.g. "gen1", "gen1:eps=0.1", "g_bl:k=32",
// "g_ir:lmax=2". Unset parameters come from the basis (lambda_max) or the
// sampling configuration (k).
struct FilterSpec {
  std::string id;
  double epsilon = 0.1;
  Index k = 0;
  double lambda_max = 0.0;  // 0 means "take from the basis"

  static FilterSpec parse(const std::string& text);
  std::string to_string() const;
};

bool is_known_filter(const std::string& id);
SpectralFilter make_filter(const FilterSpec& spec, const Vector& lambdas);

// Two-column text (lambda value), one frequency per line.
void write_filter_table(std::ostream& out, const Vector& lambdas, const SpectralFilter& f);
std::pair<Vector, SpectralFilter> read_filter_table(std::istream& in);

}  // namespace gsamp
