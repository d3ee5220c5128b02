#include "gsamp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

namespace gsamp {

namespace {

constexpr double kSignTol = 1e-10;
constexpr double kRounding = 1e-9;

void fix_sign(Eigen::Ref<Vector> v) {
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > kSignTol) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

bool lex_less(const Vector& a, const Vector& b) {
  for (Index i = 0; i < a.size(); ++i) {
    const double ra = std::round(a[i] / kRounding);
    const double rb = std::round(b[i] / kRounding);
    if (ra != rb) return ra < rb;
  }
  return false;
}

template <class Scalar>
BasisCheck check_basis_impl(const BasicSpectralBasis<Scalar>& b, const Matrix& op) {
  const Index n = b.size();
  BasisCheck out;
  const MatrixOf<Scalar> gram = b.u.adjoint() * b.u;
  out.orthonormality = (gram - MatrixOf<Scalar>::Identity(n, n)).cwiseAbs().maxCoeff();
  MatrixOf<Scalar> d = b.u.adjoint() * op.cast<Scalar>() * b.u;
  d.diagonal() -= b.lambdas.template cast<Scalar>();
  out.diagonalization = d.cwiseAbs().maxCoeff();
  switch (b.order) {
    case FrequencyOrder::Ascending:
      for (Index i = 1; i < n; ++i) out.ordered = out.ordered && b.lambdas[i - 1] <= b.lambdas[i];
      break;
    case FrequencyOrder::BipartitePaired: {
      const Index half = n / 2;
      for (Index i = 1; i < half; ++i) out.ordered = out.ordered && b.lambdas[i - 1] <= b.lambdas[i];
      for (Index i = 0; i < half; ++i)
        out.ordered = out.ordered && std::abs(b.lambdas[half + i] - (2.0 - b.lambdas[i])) <= 1e-8;
      break;
    }
    case FrequencyOrder::DftIndex:
      break;
  }
  return out;
}

}  // namespace

SpectralBasis eigendecompose(const VariationOperator& op) {
  const Index n = op.size();
  require(n >= 1 && op.matrix.cols() == n, ErrorCode::DimensionMismatch, "operator must be square");
  const double scale = std::max(1.0, op.matrix.cwiseAbs().maxCoeff());
  require((op.matrix - op.matrix.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale, ErrorCode::InvalidParameter,
          "operator must be symmetric");

  Eigen::SelfAdjointEigenSolver<Matrix> eig(op.matrix);
  if (eig.info() != Eigen::Success) raise(ErrorCode::EigensolveFailure, "symmetric eigensolver did not converge");

  SpectralBasis out;
  out.lambdas = eig.eigenvalues();
  out.u = eig.eigenvectors();
  for (Index i = 0; i < n; ++i) fix_sign(out.u.col(i));

  // Deterministic order inside degenerate clusters.
  const double cluster_tol = kRounding * std::max(1.0, out.lambdas.cwiseAbs().maxCoeff());
  Index start = 0;
  while (start < n) {
    Index stop = start + 1;
    while (stop < n && out.lambdas[stop] - out.lambdas[stop - 1] <= cluster_tol) ++stop;
    if (stop - start > 1) {
      std::vector<Index> order(static_cast<std::size_t>(stop - start));
      std::iota(order.begin(), order.end(), start);
      std::vector<Vector> cols;
      for (Index i = start; i < stop; ++i) cols.emplace_back(out.u.col(i));
      std::stable_sort(order.begin(), order.end(),
                       [&](Index a, Index b) { return lex_less(cols[a - start], cols[b - start]); });
      for (Index i = start; i < stop; ++i) out.u.col(i) = cols[order[i - start] - start];
    }
    start = stop;
  }
  out.order = FrequencyOrder::Ascending;
  return out;
}

ComplexBasis dft_basis(Index n) {
  require(n >= 2, ErrorCode::InvalidParameter, "DFT basis needs n >= 2");
  ComplexBasis out;
  out.u.resize(n, n);
  out.lambdas.resize(n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (Index i = 0; i < n; ++i) {
    out.lambdas[i] = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
    for (Index m = 0; m < n; ++m) {
      // Reduce the phase index first so large n keeps full precision.
      const double phase = 2.0 * std::numbers::pi * static_cast<double>((i * m) % n) / static_cast<double>(n);
      out.u(m, i) = std::polar(norm, phase);
    }
  }
  out.order = FrequencyOrder::DftIndex;
  return out;
}

BasisCheck check_basis(const SpectralBasis& b, const Matrix& op) { return check_basis_impl(b, op); }
BasisCheck check_basis(const ComplexBasis& b, const Matrix& op) { return check_basis_impl(b, op); }

SpectralFilter SpectralFilter::sampled(const Vector& lambdas, std::function<double(double)> fn, std::string name) {
  SpectralFilter f;
  f.values.resize(lambdas.size());
  for (Index i = 0; i < lambdas.size(); ++i) f.values[i] = fn(lambdas[i]);
  require(f.values.allFinite(), ErrorCode::InvalidParameter, "filter response is not finite");
  f.response = std::move(fn);
  f.name = std::move(name);
  return f;
}

SpectralFilter SpectralFilter::from_values(Vector values, std::string name) {
  require(values.allFinite(), ErrorCode::InvalidParameter, "filter values must be finite");
  SpectralFilter f;
  f.values = std::move(values);
  f.name = std::move(name);
  return f;
}

SpectralFilter operator*(const SpectralFilter& a, const SpectralFilter& b) {
  require(a.size() == b.size(), ErrorCode::DimensionMismatch, "filter product");
  SpectralFilter out;
  out.values = a.values.cwiseProduct(b.values);
  if (a.has_response() && b.has_response()) {
    out.response = [ra = a.response, rb = b.response](double l) { return ra(l) * rb(l); };
  }
  out.name = a.name + "*" + b.name;
  return out;
}

namespace filters {

namespace {
void require_lmax(double lambda_max) {
  require(lambda_max > 0.0 && std::isfinite(lambda_max), ErrorCode::InvalidParameter, "lambda_max must be positive");
}
void require_eps(double epsilon) {
  require(epsilon >= 0.0 && std::isfinite(epsilon), ErrorCode::InvalidParameter, "epsilon must be nonnegative");
}
}  // namespace

double g_ir(double lambda, double lambda_max) {
  return lambda <= 2.0 / lambda_max ? 1.0 : -2.0 * lambda / lambda_max;
}
double generator_1(double lambda, double lambda_max, double epsilon) {
  return 1.0 - lambda / (lambda_max + epsilon);
}
double generator_2(double lambda, double lambda_max) { return std::exp(-1.5 * lambda / lambda_max); }
double recon_cos(double lambda, double lambda_max, double epsilon) {
  return std::cos(0.5 * std::numbers::pi * lambda / (lambda_max + epsilon));
}
double smooth_v(double lambda, double lambda_max) { return lambda / lambda_max + 1.0; }

double g_bl_cutoff(const Vector& lambdas, Index k) {
  const Index n = lambdas.size();
  require(k > 0 && k <= n, ErrorCode::InvalidParameter, "g_bl needs 0 < K <= N");
  const double kept = lambdas.head(k).maxCoeff();
  if (k == n) return kept + 1.0;
  const double dropped = lambdas.tail(n - k).minCoeff();
  return 0.5 * (kept + dropped);
}

SpectralFilter g_bl(const Vector& lambdas, Index k) {
  const double cutoff = g_bl_cutoff(lambdas, k);
  SpectralFilter f;
  f.values = Vector::Zero(lambdas.size());
  f.values.head(k).setOnes();
  f.response = [cutoff](double l) { return l < cutoff ? 1.0 : 0.0; };
  f.name = "g_bl";
  return f;
}

SpectralFilter g_ir(const Vector& lambdas, double lambda_max) {
  require_lmax(lambda_max);
  return SpectralFilter::sampled(lambdas, [lambda_max](double l) { return g_ir(l, lambda_max); }, "g_ir");
}

SpectralFilter generator_1(const Vector& lambdas, double lambda_max, double epsilon) {
  require_lmax(lambda_max);
  require_eps(epsilon);
  return SpectralFilter::sampled(
      lambdas, [lambda_max, epsilon](double l) { return generator_1(l, lambda_max, epsilon); }, "gen1");
}

SpectralFilter generator_2(const Vector& lambdas, double lambda_max) {
  require_lmax(lambda_max);
  return SpectralFilter::sampled(lambdas, [lambda_max](double l) { return generator_2(l, lambda_max); }, "gen2");
}

SpectralFilter recon_cos(const Vector& lambdas, double lambda_max, double epsilon) {
  require_lmax(lambda_max);
  require_eps(epsilon);
  return SpectralFilter::sampled(
      lambdas, [lambda_max, epsilon](double l) { return recon_cos(l, lambda_max, epsilon); }, "recon_cos");
}

SpectralFilter smooth_v(const Vector& lambdas, double lambda_max) {
  require_lmax(lambda_max);
  return SpectralFilter::sampled(lambdas, [lambda_max](double l) { return smooth_v(l, lambda_max); }, "smooth_v");
}

SpectralFilter ones(const Vector& lambdas) {
  return SpectralFilter::sampled(lambdas, [](double) { return 1.0; }, "ones");
}

}  // namespace filters

namespace {
const std::vector<std::string>& filter_ids() {
  static const std::vector<std::string> ids = {"g_bl", "g_ir", "gen1", "gen2", "recon_cos", "smooth_v", "ones"};
  return ids;
}
}  // namespace

bool is_known_filter(const std::string& id) {
  const auto& ids = filter_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

FilterSpec FilterSpec::parse(const std::string& text) {
  FilterSpec spec;
  std::istringstream in(text);
  std::string token;
  std::getline(in, spec.id, ':');
  require(is_known_filter(spec.id), ErrorCode::ParseError, "unknown filter id '" + spec.id + "'");
  while (std::getline(in, token, ',')) {
    const auto eq = token.find('=');
    require(eq != std::string::npos, ErrorCode::ParseError, "filter parameter needs key=value: " + token);
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    try {
      if (key == "eps") spec.epsilon = std::stod(value);
      else if (key == "k") spec.k = std::stol(value);
      else if (key == "lmax") spec.lambda_max = std::stod(value);
      else raise(ErrorCode::ParseError, "unknown filter parameter '" + key + "'");
    } catch (const std::logic_error&) {
      raise(ErrorCode::ParseError, "bad filter parameter value: " + token);
    }
  }
  return spec;
}

std::string FilterSpec::to_string() const {
  std::ostringstream out;
  out.precision(17);
  out << id;
  char sep = ':';
  auto add = [&](const char* key, auto value) {
    out << sep << key << '=' << value;
    sep = ',';
  };
  if (id == "gen1" || id == "recon_cos") add("eps", epsilon);
  if (id == "g_bl" && k > 0) add("k", k);
  if (lambda_max > 0.0 && id != "g_bl" && id != "ones") add("lmax", lambda_max);
  return out.str();
}

SpectralFilter make_filter(const FilterSpec& spec, const Vector& lambdas) {
  const double lmax = spec.lambda_max > 0.0 ? spec.lambda_max : lambdas.maxCoeff();
  if (spec.id == "g_bl") return filters::g_bl(lambdas, spec.k);
  if (spec.id == "g_ir") return filters::g_ir(lambdas, lmax);
  if (spec.id == "gen1") return filters::generator_1(lambdas, lmax, spec.epsilon);
  if (spec.id == "gen2") return filters::generator_2(lambdas, lmax);
  if (spec.id == "recon_cos") return filters::recon_cos(lambdas, lmax, spec.epsilon);
  if (spec.id == "smooth_v") return filters::smooth_v(lambdas, lmax);
  if (spec.id == "ones") return filters::ones(lambdas);
  raise(ErrorCode::InvalidParameter, "unknown filter id '" + spec.id + "'");
}

void write_filter_table(std::ostream& out, const Vector& lambdas, const SpectralFilter& f) {
  require(lambdas.size() == f.size(), ErrorCode::DimensionMismatch, "filter table");
  const auto old_precision = out.precision(17);
  for (Index i = 0; i < lambdas.size(); ++i) out << lambdas[i] << ' ' << f.values[i] << '\n';
  out.precision(old_precision);
  if (!out) raise(ErrorCode::IoFailure, "failed writing filter table");
}

std::pair<Vector, SpectralFilter> read_filter_table(std::istream& in) {
  std::vector<double> lam, val;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    double l = 0.0, v = 0.0;
    row >> l >> v;
    require(static_cast<bool>(row), ErrorCode::ParseError, "bad filter line: " + line);
    lam.push_back(l);
    val.push_back(v);
  }
  Vector lambdas = Eigen::Map<Vector>(lam.data(), static_cast<Index>(lam.size()));
  return {lambdas, SpectralFilter::from_values(Eigen::Map<Vector>(val.data(), static_cast<Index>(val.size())), "table")};
}

}  // namespace gsamp
