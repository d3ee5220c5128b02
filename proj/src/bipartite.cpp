#include "gsamp/bipartite.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace gsamp {

namespace {

const double kSqrt2 = std::sqrt(2.0);

// Rows of `m` picked in `rows` order.
Matrix take_rows(const Matrix& m, const std::vector<Index>& rows) {
  Matrix out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Index>(i)) = m.row(rows[i]);
  return out;
}

void check_filter(const BipartiteSystem& sys, const SpectralFilter& f) {
  require(f.size() == sys.size(), ErrorCode::DimensionMismatch, "filter length differs from N");
}

}  // namespace

BipartiteSystem build_system(const Graph& g) {
  std::optional<Bipartition> parts = g.bipartition();
  if (!parts) parts = find_bipartition(g);
  require(parts.has_value(), ErrorCode::NotBipartite, "graph has an odd cycle");
  const Index n = g.size();
  const Index k = static_cast<Index>(parts->v1.size());
  require(2 * k == n && static_cast<Index>(parts->v2.size()) == k, ErrorCode::UnequalParts,
          "bipartition sizes " + std::to_string(parts->v1.size()) + " and " + std::to_string(parts->v2.size()));

  BipartiteSystem sys{g, *parts, normalized_laplacian(g), {}, {}, {}, {}, 0.0};
  const auto& v1 = sys.parts.v1;
  const auto& v2 = sys.parts.v2;

  // L = [I -B; -B^T I] on (V1, V2).
  Matrix b(k, k);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) b(i, j) = -sys.op.matrix(v1[i], v2[j]);

  Eigen::JacobiSVD<Matrix> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix p = svd.matrixU();
  Matrix q = svd.matrixV();
  const Vector sigma = svd.singularValues();  // descending
  for (Index i = 0; i < k; ++i) {
    Index lead = 0;
    while (lead < k - 1 && std::abs(p(lead, i)) <= 1e-10) ++lead;
    if (p(lead, i) < 0.0) {
      p.col(i) = -p.col(i);
      q.col(i) = -q.col(i);
    }
  }

  SpectralBasis& ub = sys.basis_b;
  ub.u = Matrix::Zero(n, n);
  ub.lambdas.resize(n);
  ub.order = FrequencyOrder::BipartitePaired;
  for (Index i = 0; i < k; ++i) {
    for (Index r = 0; r < k; ++r) {
      ub.u(v1[r], i) = p(r, i) / kSqrt2;
      ub.u(v2[r], i) = q(r, i) / kSqrt2;
      ub.u(v1[r], k + i) = p(r, i) / kSqrt2;
      ub.u(v2[r], k + i) = -q(r, i) / kSqrt2;
    }
    ub.lambdas[i] = 1.0 - sigma[i];
    ub.lambdas[k + i] = 1.0 + sigma[i];
  }

  sys.reduced_op = kron_reduce(sys.op, v1);
  sys.basis_reduced.u = p;
  sys.basis_reduced.lambdas = (1.0 - sigma.array().square()).matrix();
  sys.basis_reduced.order = FrequencyOrder::Ascending;
  sys.theorem1_transform = p / kSqrt2;

  sys.theorem1_residual = theorem1_residual(sys);
  if (!(sys.theorem1_residual <= kPairingTolerance)) {
    std::ostringstream msg;
    msg << "paired basis residual " << sys.theorem1_residual << " exceeds " << kPairingTolerance;
    raise(ErrorCode::PairingFailure, msg.str());
  }
  return sys;
}

double theorem1_residual(const BipartiteSystem& sys) {
  const Index n = sys.size();
  const Index k = sys.half();
  const Matrix ut = sys.basis_b.u.transpose();
  const Matrix folded = ut.topRows(k) + ut.bottomRows(k);  // D_samp U^T
  Matrix selector = Matrix::Zero(k, n);
  for (Index i = 0; i < k; ++i) selector(i, sys.parts.v1[i]) = 1.0;
  return (sys.theorem1_transform * folded - selector).cwiseAbs().maxCoeff();
}

double verify_corollary1(const BipartiteSystem& sys, const SpectralFilter& s, const Vector& x) {
  check_filter(sys, s);
  require(x.size() == sys.size(), ErrorCode::DimensionMismatch, "signal length differs from N");
  const SampledSpectrum c = frequency_sample(sys.basis_b, s, x, sys.sampling());
  const Vector gx = apply_filter(sys.basis_b, s, x);
  const Vector lhs = sys.theorem1_transform * c.values;
  const Vector rhs = take_rows(gx, sys.parts.v1);
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

SpectralFilter build_wprime(const SpectralFilter& w, const Vector& h) {
  const Index n = w.size();
  const Index k = h.size();
  require(k > 0 && n == 2 * k, ErrorCode::DimensionMismatch, "W' needs |w| = 2|h|");
  return SpectralFilter::from_values(w.values.cwiseProduct(h.replicate(2, 1)), w.name + "'");
}

Vector mask_v1(const BipartiteSystem& sys, const Vector& x) {
  require(x.size() == sys.size(), ErrorCode::DimensionMismatch, "signal length differs from N");
  Vector out = Vector::Zero(x.size());
  for (Index v : sys.parts.v1) out[v] = x[v];
  return out;
}

Vector vertex_pipeline(const BipartiteSystem& sys, const SpectralFilter& g, const SpectralFilter& wprime,
                       const Vector& x) {
  check_filter(sys, g);
  check_filter(sys, wprime);
  const Vector sampled = mask_v1(sys, apply_filter(sys.basis_b, g, x));
  return 2.0 * apply_filter(sys.basis_b, wprime, sampled);
}

Vector frequency_pipeline(const BipartiteSystem& sys, const SpectralFilter& g, const SpectralFilter& wprime,
                          const Vector& x) {
  check_filter(sys, g);
  check_filter(sys, wprime);
  const SamplingConfig cfg = sys.sampling();
  const RecoveryDesign pass{Vector::Ones(cfg.k), wprime, Strategy::DS, DesignMode::Predefined};
  return reconstruct(sys.basis_b, pass, frequency_sample(sys.basis_b, g, x, cfg));
}

Vector vertex_pipeline_chebyshev(const BipartiteSystem& sys, const ChebyshevFilter& g, const ChebyshevFilter& wprime,
                                 const Vector& x, bool parallel) {
  const Vector sampled = mask_v1(sys, apply_chebyshev(sys.op, g, x, parallel));
  return 2.0 * apply_chebyshev(sys.op, wprime, sampled, parallel);
}

Vector vertex_pipeline_chebyshev(const BipartiteSystem& sys, const std::function<double(double)>& g_resp,
                                 const std::function<double(double)>& wprime_resp, const Vector& x, int order,
                                 bool parallel) {
  const ChebyshevFilter g = chebyshev_fit(g_resp, 0.0, kBipartiteSpectrumBound, order);
  const ChebyshevFilter w = chebyshev_fit(wprime_resp, 0.0, kBipartiteSpectrumBound, order);
  return vertex_pipeline_chebyshev(sys, g, w, x, parallel);
}

std::function<double(double)> one_branch_wprime_response(std::function<double(double)> a) {
  return [a = std::move(a)](double l) { return a(l) / a(std::min(l, 2.0 - l)); };
}

SpectralFilter one_branch_wprime(const BipartiteSystem& sys, const SpectralFilter& a) {
  check_filter(sys, a);
  const SamplingConfig cfg = sys.sampling();
  const RecoveryDesign design =
      design_subspace_unconstrained(filters::g_bl(sys.basis_b.lambdas, cfg.k), a, cfg, Strategy::DS);
  return build_wprime(design.w, design.h);
}

Vector one_branch_signal(const BipartiteSystem& sys, const SpectralFilter& wprime, const Vector& d) {
  check_filter(sys, wprime);
  require(d.size() == sys.half(), ErrorCode::DimensionMismatch, "one-branch coefficients must have length N/2");
  Vector embedded = Vector::Zero(sys.size());
  for (Index i = 0; i < d.size(); ++i) embedded[sys.parts.v1[i]] = d[i];
  return apply_filter(sys.basis_b, wprime, embedded);
}

OneBranchResult one_branch_roundtrip(const BipartiteSystem& sys, const SpectralFilter& a, const Vector& d) {
  const SamplingConfig cfg = sys.sampling();
  const SpectralFilter wprime = one_branch_wprime(sys, a);
  Vector x = one_branch_signal(sys, wprime, d);
  SampledSpectrum c = frequency_sample(sys.basis_b, filters::g_bl(sys.basis_b.lambdas, cfg.k), x, cfg);
  // Vertex samples on V1 recovered from the spectrum, then the vertex-domain decoder.
  const Vector samples = sys.theorem1_transform * c.values;
  Vector embedded = Vector::Zero(sys.size());
  for (Index i = 0; i < cfg.k; ++i) embedded[sys.parts.v1[i]] = samples[i];
  Vector decoded = 2.0 * apply_filter(sys.basis_b, wprime, embedded);
  return {std::move(x), std::move(c), std::move(decoded)};
}

OneBranchResult one_branch_roundtrip_chebyshev(const BipartiteSystem& sys, const SpectralFilter& a,
                                               const Vector& d, int order) {
  require(a.has_response(), ErrorCode::InvalidParameter, "Chebyshev round trip needs a continuous generator");
  const SamplingConfig cfg = sys.sampling();
  Vector x = one_branch_signal(sys, one_branch_wprime(sys, a), d);
  const ChebyshevFilter g =
      chebyshev_fit(filters::g_bl(sys.basis_b.lambdas, cfg.k).response, 0.0, kBipartiteSpectrumBound, order);
  const ChebyshevFilter w =
      chebyshev_fit(one_branch_wprime_response(a.response), 0.0, kBipartiteSpectrumBound, order);
  const Vector sampled = apply_chebyshev(sys.op, g, x);
  Vector samples(cfg.k);
  for (Index i = 0; i < cfg.k; ++i) samples[i] = sampled[sys.parts.v1[i]];
  SampledSpectrum c{kSqrt2 * sys.basis_reduced.u.transpose() * samples, cfg};
  Vector decoded = 2.0 * apply_chebyshev(sys.op, w, mask_v1(sys, sampled));
  return {std::move(x), std::move(c), std::move(decoded)};
}

void write_payload(std::ostream& out, const OneBranchPayload& p) {
  require(p.values.size() == p.k, ErrorCode::DimensionMismatch, "payload values must have length K");
  out << "gsamp-one-branch\n"
      << "N " << p.n << '\n'
      << "K " << p.k << '\n'
      << "generator " << p.generator << '\n'
      << std::setprecision(17) << "values";
  for (double v : p.values) out << ' ' << v;
  out << '\n';
  require(static_cast<bool>(out), ErrorCode::IoFailure, "payload write failed");
}

OneBranchPayload read_payload(std::istream& in) {
  std::string line;
  require(std::getline(in, line) && line == "gsamp-one-branch", ErrorCode::ParseError, "missing payload header");
  OneBranchPayload p;
  bool have_values = false;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string key;
    if (!(row >> key)) continue;
    if (key == "N") {
      require(static_cast<bool>(row >> p.n), ErrorCode::ParseError, "bad N");
    } else if (key == "K") {
      require(static_cast<bool>(row >> p.k), ErrorCode::ParseError, "bad K");
    } else if (key == "generator") {
      require(static_cast<bool>(row >> p.generator), ErrorCode::ParseError, "bad generator");
    } else if (key == "values") {
      std::vector<double> v;
      double x;
      while (row >> x) v.push_back(x);
      require(row.eof(), ErrorCode::ParseError, "bad payload value");
      p.values = Eigen::Map<Vector>(v.data(), static_cast<Index>(v.size()));
      have_values = true;
    } else {
      raise(ErrorCode::ParseError, "unknown payload field '" + key + "'");
    }
  }
  require(have_values && p.n == 2 * p.k && p.values.size() == p.k, ErrorCode::ParseError,
          "payload sizes are inconsistent");
  return p;
}

}  // namespace gsamp
