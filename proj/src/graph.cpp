#include "gsamp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <random>
#include <sstream>
#include <string>

#include "gsamp/error.hpp"

namespace gsamp {

namespace {

constexpr double kSymmetryTol = 1e-12;

void validate_bipartition(const Matrix& w, const Bipartition& part) {
  const Index n = w.rows();
  std::vector<int> side(static_cast<std::size_t>(n), -1);
  auto mark = [&](const std::vector<Index>& set, int label) {
    for (Index v : set) {
      require(v >= 0 && v < n, ErrorCode::InvalidGraph, "bipartition vertex out of range");
      require(side[v] == -1, ErrorCode::InvalidGraph, "bipartition parts overlap");
      side[v] = label;
    }
  };
  mark(part.v1, 0);
  mark(part.v2, 1);
  for (Index v = 0; v < n; ++v)
    require(side[v] != -1, ErrorCode::InvalidGraph, "bipartition does not cover every vertex");
  for (Index m = 0; m < n; ++m)
    for (Index k = m + 1; k < n; ++k)
      if (w(m, k) != 0.0 && side[m] == side[k])
        raise(ErrorCode::InvalidGraph, "edge inside a bipartition part");
}

}  // namespace

Graph::Graph(Matrix weights, std::optional<Bipartition> bipartition)
    : weights_(std::move(weights)), bipartition_(std::move(bipartition)) {
  const Index n = weights_.rows();
  require(n >= 1 && weights_.cols() == n, ErrorCode::InvalidGraph, "weights must be square and nonempty");
  require(weights_.allFinite(), ErrorCode::InvalidGraph, "weights must be finite");
  const double scale = std::max(1.0, weights_.cwiseAbs().maxCoeff());
  for (Index m = 0; m < n; ++m) {
    require(weights_(m, m) == 0.0, ErrorCode::InvalidGraph, "self-loops are not allowed");
    for (Index k = m + 1; k < n; ++k) {
      require(weights_(m, k) >= 0.0 && weights_(k, m) >= 0.0, ErrorCode::InvalidGraph,
              "weights must be nonnegative");
      require(std::abs(weights_(m, k) - weights_(k, m)) <= kSymmetryTol * scale, ErrorCode::InvalidGraph,
              "weights must be symmetric");
    }
  }
  // Store exactly symmetric weights.
  weights_ = (0.5 * (weights_ + weights_.transpose())).eval();
  if (bipartition_) validate_bipartition(weights_, *bipartition_);
}

Index Graph::edge_count() const {
  Index count = 0;
  for (Index m = 0; m < size(); ++m)
    for (Index k = m + 1; k < size(); ++k)
      if (weights_(m, k) != 0.0) ++count;
  return count;
}

bool Graph::is_connected() const {
  const Index n = size();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::queue<Index> frontier;
  frontier.push(0);
  seen[0] = 1;
  Index reached = 1;
  while (!frontier.empty()) {
    const Index v = frontier.front();
    frontier.pop();
    for (Index u = 0; u < n; ++u) {
      if (!seen[u] && weights_(v, u) != 0.0) {
        seen[u] = 1;
        ++reached;
        frontier.push(u);
      }
    }
  }
  return reached == n;
}

Graph Graph::permuted(const std::vector<Index>& perm) const {
  const Index n = size();
  require(static_cast<Index>(perm.size()) == n, ErrorCode::DimensionMismatch, "permutation length");
  std::vector<Index> inverse(static_cast<std::size_t>(n), -1);
  for (Index i = 0; i < n; ++i) {
    require(perm[i] >= 0 && perm[i] < n && inverse[perm[i]] == -1, ErrorCode::InvalidParameter,
            "not a permutation");
    inverse[perm[i]] = i;
  }
  Matrix w(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) w(i, j) = weights_(perm[i], perm[j]);
  std::optional<Bipartition> part;
  if (bipartition_) {
    part.emplace();
    for (Index v : bipartition_->v1) part->v1.push_back(inverse[v]);
    for (Index v : bipartition_->v2) part->v2.push_back(inverse[v]);
    std::sort(part->v1.begin(), part->v1.end());
    std::sort(part->v2.begin(), part->v2.end());
  }
  return Graph(std::move(w), std::move(part));
}

VariationOperator combinatorial_laplacian(const Graph& g) {
  Matrix l = -g.weights();
  l.diagonal() = g.degrees();
  return {std::move(l), OperatorKind::Combinatorial};
}

VariationOperator normalized_laplacian(const Graph& g) {
  const Vector deg = g.degrees();
  for (Index i = 0; i < deg.size(); ++i)
    require(deg[i] > 0.0, ErrorCode::IsolatedVertex, "vertex " + std::to_string(i) + " has degree 0");
  const Vector inv_sqrt = deg.cwiseSqrt().cwiseInverse();
  Matrix l = -(inv_sqrt.asDiagonal() * g.weights() * inv_sqrt.asDiagonal());
  l.diagonal().setOnes();
  return {std::move(l), OperatorKind::SymmetricNormalized};
}

VariationOperator kron_reduce(const VariationOperator& op, const std::vector<Index>& keep) {
  require(op.kind == OperatorKind::SymmetricNormalized, ErrorCode::InvalidParameter,
          "Kron reduction expects a symmetric normalized Laplacian");
  const Index n = op.size();
  std::vector<char> kept(static_cast<std::size_t>(n), 0);
  for (Index v : keep) {
    require(v >= 0 && v < n, ErrorCode::IndexOutOfRange, "kept vertex out of range");
    require(!kept[v], ErrorCode::InvalidParameter, "kept vertex listed twice");
    kept[v] = 1;
  }
  std::vector<Index> drop;
  for (Index v = 0; v < n; ++v)
    if (!kept[v]) drop.push_back(v);

  const Index k = static_cast<Index>(keep.size());
  const Index r = static_cast<Index>(drop.size());
  Matrix a(k, k), b(k, r), c(r, r);
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) a(i, j) = op.matrix(keep[i], keep[j]);
    for (Index j = 0; j < r; ++j) b(i, j) = op.matrix(keep[i], drop[j]);
  }
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < r; ++j) c(i, j) = op.matrix(drop[i], drop[j]);
  if (r == 0) return {std::move(a), op.kind};

  Eigen::SelfAdjointEigenSolver<Matrix> eig(c);
  require(eig.info() == Eigen::Success, ErrorCode::EigensolveFailure, "interior block eigensolve");
  const Vector mags = eig.eigenvalues().cwiseAbs();
  const double largest = mags.maxCoeff();
  const double smallest = mags.minCoeff();
  if (smallest == 0.0 || largest / smallest > 1e12)
    raise(ErrorCode::SingularInteriorBlock, "interior block is numerically singular");

  Matrix reduced = a - b * eig.eigenvectors() * eig.eigenvalues().cwiseInverse().asDiagonal() *
                           eig.eigenvectors().transpose() * b.transpose();
  reduced = (0.5 * (reduced + reduced.transpose())).eval();
  return {std::move(reduced), op.kind};
}

std::optional<Bipartition> find_bipartition(const Graph& g) {
  const Index n = g.size();
  std::vector<int> colour(static_cast<std::size_t>(n), -1);
  for (Index start = 0; start < n; ++start) {
    if (colour[start] != -1) continue;
    colour[start] = 0;
    std::queue<Index> frontier;
    frontier.push(start);
    while (!frontier.empty()) {
      const Index v = frontier.front();
      frontier.pop();
      for (Index u = 0; u < n; ++u) {
        if (g.weights()(v, u) == 0.0) continue;
        if (colour[u] == -1) {
          colour[u] = 1 - colour[v];
          frontier.push(u);
        } else if (colour[u] == colour[v]) {
          return std::nullopt;
        }
      }
    }
  }
  Bipartition part;
  for (Index v = 0; v < n; ++v) (colour[v] == 0 ? part.v1 : part.v2).push_back(v);
  return part;
}

Graph gen_circular(Index n) {
  require(n >= 2, ErrorCode::InvalidParameter, "circular graph needs n >= 2");
  Matrix w = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    const Index j = (i + 1) % n;
    if (i == j) continue;
    w(i, j) = 1.0;
    w(j, i) = 1.0;
  }
  return Graph(std::move(w));
}

Graph gen_random_sensor(Index n, std::uint64_t seed, SensorGraphParams params) {
  require(n >= 2, ErrorCode::InvalidParameter, "sensor graph needs n >= 2");
  const int k = std::min<int>(params.neighbors, static_cast<int>(n - 1));
  require(k >= 1, ErrorCode::InvalidParameter, "neighbor count must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (int attempt = 0; attempt < kMaxGeneratorAttempts; ++attempt) {
    Matrix pts(n, 2);
    for (Index i = 0; i < n; ++i) {
      pts(i, 0) = unit(rng);
      pts(i, 1) = unit(rng);
    }
    std::vector<std::vector<std::pair<double, Index>>> nearest(static_cast<std::size_t>(n));
    double dist_sum = 0.0;
    for (Index i = 0; i < n; ++i) {
      std::vector<std::pair<double, Index>> cand;
      cand.reserve(static_cast<std::size_t>(n - 1));
      for (Index j = 0; j < n; ++j)
        if (j != i) cand.emplace_back((pts.row(i) - pts.row(j)).norm(), j);
      std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
      cand.resize(static_cast<std::size_t>(k));
      for (const auto& c : cand) dist_sum += c.first;
      nearest[i] = std::move(cand);
    }
    const double theta = dist_sum / static_cast<double>(n * k);
    Matrix w = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
      for (const auto& [d, j] : nearest[i]) {
        const double weight = std::exp(-d * d / (2.0 * theta * theta));
        w(i, j) = weight;
        w(j, i) = weight;
      }
    }
    Graph g(std::move(w));
    if (g.is_connected()) return g;
  }
  raise(ErrorCode::ConnectivityFailure, "no connected sensor graph after resampling");
}

Graph gen_random_bipartite(Index n_half, std::uint64_t seed, BipartiteGraphParams params) {
  require(n_half >= 1, ErrorCode::InvalidParameter, "bipartite graph needs n_half >= 1");
  require(params.edge_probability > 0.0 && params.edge_probability <= 1.0, ErrorCode::InvalidParameter,
          "edge probability must lie in (0, 1]");
  const Index n = 2 * n_half;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Bipartition part;
  for (Index i = 0; i < n_half; ++i) {
    part.v1.push_back(i);
    part.v2.push_back(n_half + i);
  }
  for (int attempt = 0; attempt < kMaxGeneratorAttempts; ++attempt) {
    Matrix w = Matrix::Zero(n, n);
    for (Index i = 0; i < n_half; ++i) {
      for (Index j = 0; j < n_half; ++j) {
        if (unit(rng) < params.edge_probability) {
          w(i, n_half + j) = 1.0;
          w(n_half + j, i) = 1.0;
        }
      }
    }
    Graph g(std::move(w), part);
    if (g.is_connected()) return g;
  }
  raise(ErrorCode::ConnectivityFailure, "no connected bipartite graph after resampling");
}

void write_edge_list(std::ostream& out, const Graph& g) {
  const Index n = g.size();
  out << "N " << n;
  if (const auto& part = g.bipartition()) {
    const Index size_v1 = static_cast<Index>(part->v1.size());
    for (Index i = 0; i < size_v1; ++i)
      require(part->v1[i] == i, ErrorCode::InvalidParameter,
              "edge-list format needs V1 to be the leading vertices");
    out << " bipartite " << size_v1;
  }
  out << '\n';
  const auto old_precision = out.precision(17);
  for (Index m = 0; m < n; ++m)
    for (Index k = m + 1; k < n; ++k)
      if (g.weights()(m, k) != 0.0) out << m << ' ' << k << ' ' << g.weights()(m, k) << '\n';
  out.precision(old_precision);
  if (!out) raise(ErrorCode::IoFailure, "failed writing edge list");
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };
  require(next_line(), ErrorCode::ParseError, "missing edge-list header");
  std::istringstream header(line);
  std::string tag;
  Index n = 0;
  header >> tag >> n;
  require(header && tag == "N" && n >= 1, ErrorCode::ParseError, "bad header: " + line);
  std::optional<Bipartition> part;
  std::string kind;
  if (header >> kind) {
    Index size_v1 = 0;
    require(kind == "bipartite" && (header >> size_v1) && size_v1 >= 0 && size_v1 <= n,
            ErrorCode::ParseError, "bad header: " + line);
    part.emplace();
    for (Index v = 0; v < n; ++v) (v < size_v1 ? part->v1 : part->v2).push_back(v);
  }
  Matrix w = Matrix::Zero(n, n);
  while (next_line()) {
    std::istringstream row(line);
    Index m = 0, k = 0;
    double weight = 0.0;
    row >> m >> k >> weight;
    require(static_cast<bool>(row), ErrorCode::ParseError, "bad edge line: " + line);
    require(m >= 0 && m < n && k >= 0 && k < n, ErrorCode::ParseError, "edge vertex out of range: " + line);
    w(m, k) = weight;
    w(k, m) = weight;
  }
  return Graph(std::move(w), std::move(part));
}

}  // namespace gsamp
