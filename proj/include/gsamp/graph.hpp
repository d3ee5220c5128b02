#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace gsamp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

struct Bipartition {
  std::vector<Index> v1;
  std::vector<Index> v2;
};

// Undirected weighted graph with dense weights. Immutable after construction;
// the constructor enforces symmetry, a zero diagonal, nonnegative weights and
// (when given) the bipartition edge rule.
class Graph {
 public:
  explicit Graph(Matrix weights, std::optional<Bipartition> bipartition = std::nullopt);

  Index size() const { return weights_.rows(); }
  const Matrix& weights() const { return weights_; }
  const std::optional<Bipartition>& bipartition() const { return bipartition_; }

  Vector degrees() const { return weights_.rowwise().sum(); }
  Index edge_count() const;
  bool is_connected() const;

  // Relabels vertices: vertex perm[i] of this graph becomes vertex i.
  Graph permuted(const std::vector<Index>& perm) const;

 private:
  Matrix weights_;
  std::optional<Bipartition> bipartition_;
};

enum class OperatorKind { Combinatorial, SymmetricNormalized };

struct VariationOperator {
  Matrix matrix;
  OperatorKind kind;

  Index size() const { return matrix.rows(); }
};

VariationOperator combinatorial_laplacian(const Graph& g);
VariationOperator normalized_laplacian(const Graph& g);

// Schur complement of the operator onto `keep` (eliminates the complement).
// The output rows/columns follow the order of `keep`.
VariationOperator kron_reduce(const VariationOperator& op, const std::vector<Index>& keep);

// Two-colouring by BFS; nullopt when the graph has an odd cycle.
std::optional<Bipartition> find_bipartition(const Graph& g);

// Generators for the experiment graphs. All are deterministic in `seed`.
Graph gen_circular(Index n);

struct SensorGraphParams {
  int neighbors = 6;
};
Graph gen_random_sensor(Index n, std::uint64_t seed, SensorGraphParams params = {});

struct BipartiteGraphParams {
  double edge_probability = 0.5;
};
// Parts are V1 = {0..n_half-1}, V2 = {n_half..2 n_half-1}.
Graph gen_random_bipartite(Index n_half, std::uint64_t seed, BipartiteGraphParams params = {});

inline constexpr int kMaxGeneratorAttempts = 100;

// Edge-list text: header `N <count> [bipartite <size_v1>]`, then `m n weight`
// per edge (m < n). A bipartite header means V1 = {0..size_v1-1}.
void write_edge_list(std::ostream& out, const Graph& g);
Graph read_edge_list(std::istream& in);

}  // namespace gsamp
