#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "gsamp/bipartite.hpp"
#include "oracles.hpp"

using namespace gsamp;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Graph complete_bipartite(Index half) {
  Matrix w = Matrix::Zero(2 * half, 2 * half);
  w.topRightCorner(half, half).setOnes();
  w.bottomLeftCorner(half, half).setOnes();
  return Graph(w);
}

// Residual of the selection identity computed from the dense fold matrix.
double dense_theorem1(const BipartiteSystem& sys) {
  const Index n = sys.size(), k = sys.half();
  Matrix sel = Matrix::Zero(k, n);
  for (Index i = 0; i < k; ++i) sel(i, sys.parts.v1[i]) = 1.0;
  return max_abs(sys.theorem1_transform * oracle::dsamp(n, k) * sys.basis_b.u.transpose() - sel);
}

void check_system(const BipartiteSystem& sys) {
  const Index n = sys.size(), k = sys.half();
  const Matrix& u = sys.basis_b.u;
  CHECK(max_abs(u.transpose() * u - Matrix::Identity(n, n)) < 1e-10);
  CHECK(max_abs(u.transpose() * sys.op.matrix * u - Matrix(sys.basis_b.lambdas.asDiagonal())) < 1e-10);
  for (Index i = 0; i < k; ++i) CHECK(std::abs(sys.basis_b.lambdas[k + i] - (2.0 - sys.basis_b.lambdas[i])) < 1e-8);
  CHECK(std::is_sorted(sys.basis_b.lambdas.data(), sys.basis_b.lambdas.data() + k));
  // Descending pairs: lambda_{N-1-i} view of the same symmetry.
  const Vector sorted = Eigen::SelfAdjointEigenSolver<Matrix>(sys.op.matrix).eigenvalues();
  for (Index i = 0; i < n; ++i) CHECK(std::abs(sorted[n - 1 - i] - (2.0 - sorted[i])) < 1e-8);

  const Matrix red = oracle::schur(sys.op.matrix, sys.parts.v1);
  CHECK(max_abs(sys.reduced_op.matrix - red) < 1e-10);
  const Matrix& p = sys.basis_reduced.u;
  CHECK(max_abs(p.transpose() * red * p - Matrix(sys.basis_reduced.lambdas.asDiagonal())) < 1e-10);

  const double dense = dense_theorem1(sys);
  CHECK(dense <= 1e-8);
  CHECK(std::abs(sys.theorem1_residual - dense) < 1e-13);
}

}  // namespace

TEST_CASE("complete bipartite systems") {
  for (Index half : {2, 4}) {
    const BipartiteSystem sys = build_system(complete_bipartite(half));
    check_system(sys);
    CHECK(sys.theorem1_residual < 1e-10);
  }
}

TEST_CASE("random bipartite systems") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Index half = 4 + 6 * static_cast<Index>(seed);
    const BipartiteSystem sys = build_system(gen_random_bipartite(half, seed));
    check_system(sys);
  }
  const BipartiteSystem s64 = build_system(gen_random_bipartite(32, 17));
  CHECK(s64.theorem1_residual < 1e-8);
}

TEST_CASE("caller vertex order is kept") {
  const Graph g = gen_random_bipartite(6, 3);
  std::vector<Index> perm(12);
  for (Index i = 0; i < 12; ++i) perm[i] = (5 * i + 3) % 12;
  const Graph shuffled = g.permuted(perm);
  const BipartiteSystem sys = build_system(shuffled);
  check_system(sys);
  CHECK(sys.op.matrix == normalized_laplacian(shuffled).matrix);

  // Bipartition discovered when not recorded.
  const BipartiteSystem found = build_system(Graph(g.weights()));
  check_system(found);
}

TEST_CASE("build_system errors") {
  auto code_of = [](const Graph& g) {
    try {
      build_system(g);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  CHECK(code_of(gen_circular(5)) == ErrorCode::NotBipartite);
  Matrix star = Matrix::Zero(4, 4);
  for (Index i = 1; i < 4; ++i) star(0, i) = star(i, 0) = 1.0;
  CHECK(code_of(Graph(star)) == ErrorCode::UnequalParts);
}

TEST_CASE("corollary 1") {
  std::mt19937_64 rng(4);
  const BipartiteSystem k44 = build_system(complete_bipartite(4));
  const Vector x = oracle::random_vector(rng, 8);
  CHECK(verify_corollary1(k44, filters::ones(k44.basis_b.lambdas), x) < 1e-12);
  CHECK(verify_corollary1(k44, filters::g_bl(k44.basis_b.lambdas, 4), x) < 1e-9);

  const BipartiteSystem sys = build_system(gen_random_bipartite(32, 8));
  const Vector y = oracle::random_vector(rng, 64);
  CHECK(verify_corollary1(sys, filters::g_ir(sys.basis_b.lambdas, 2.0), y) < 1e-8);

  // Independent: dense filter matrix, then pick V1 rows.
  const Vector f = oracle::random_vector(rng, 64);
  const Vector dense = oracle::spectral_operator(sys.basis_b.u, f) * y;
  const SampledSpectrum c = frequency_sample(sys.basis_b, SpectralFilter::from_values(f), y, sys.sampling());
  const Vector lhs = sys.theorem1_transform * c.values;
  for (Index i = 0; i < 32; ++i) CHECK(std::abs(lhs[i] - dense[sys.parts.v1[i]]) < 1e-10);
}

TEST_CASE("build_wprime") {
  const SpectralFilter w = SpectralFilter::from_values((Vector(4) << 0.5, 1, 2, 3).finished());
  CHECK(build_wprime(w, Vector::Ones(2)).values == w.values);
  CHECK(build_wprime(SpectralFilter::from_values(Vector::Ones(4)), (Vector(2) << 2, 3).finished()).values ==
        (Vector(4) << 2, 3, 2, 3).finished());
  CHECK_THROWS_AS(build_wprime(w, Vector::Ones(3)), Error);

  const BipartiteSystem sys = build_system(gen_random_bipartite(16, 2));
  const SpectralFilter ir = filters::g_ir(sys.basis_b.lambdas, 2.0);
  const SpectralFilter wp = one_branch_wprime(sys, ir);
  CHECK(max_abs(wp.values - ir.values) < 1e-12);
}

TEST_CASE("vertex and frequency pipelines") {
  const BipartiteSystem sys = build_system(gen_random_bipartite(8, 5));
  std::mt19937_64 rng(6);
  const SpectralFilter id = filters::ones(sys.basis_b.lambdas);
  Vector x = oracle::random_vector(rng, 16);
  for (Index v : sys.parts.v2) x[v] = 0.0;
  // The mask keeps V1 intact; the fold gain is 2.
  CHECK(max_abs(vertex_pipeline(sys, id, id, x) - 2.0 * x) < 1e-12);
  const SpectralFilter half = build_wprime(id, Vector::Constant(8, 0.5));
  CHECK(max_abs(vertex_pipeline(sys, id, half, x) - x) < 1e-12);

  for (int t = 0; t < 5; ++t) {
    const SpectralFilter g = SpectralFilter::from_values(oracle::random_vector(rng, 16));
    const SpectralFilter w = SpectralFilter::from_values(oracle::random_vector(rng, 16));
    const Vector y = oracle::random_vector(rng, 16);
    CHECK(max_abs(vertex_pipeline(sys, g, w, y) - frequency_pipeline(sys, g, w, y)) < 1e-10);
    CHECK((vertex_pipeline(sys, g, w, y) - frequency_pipeline(sys, g, w, y)).norm() <= 1e-9 * y.norm());
  }
}

TEST_CASE("one-branch round trip") {
  const BipartiteSystem sys = build_system(gen_random_bipartite(32, 9));
  std::mt19937_64 rng(7);
  const Vector d = oracle::random_vector(rng, 32, 0.0, 2.0);

  const SpectralFilter ir = filters::g_ir(sys.basis_b.lambdas, 2.0);
  const OneBranchResult r = one_branch_roundtrip(sys, ir, d);
  CHECK((r.decoded - r.original).norm() <= 1e-9 * r.original.norm());
  CHECK(r.encoded.values.size() == 32);

  // Same signal through the explicit vertex pipeline with G = g_bl(N/2), W' = g_ir.
  const SpectralFilter bl = filters::g_bl(sys.basis_b.lambdas, 32);
  CHECK((vertex_pipeline(sys, bl, ir, r.original) - r.original).norm() <= 1e-9 * r.original.norm());

  const OneBranchResult b = one_branch_roundtrip(sys, bl, d);
  CHECK((b.decoded - b.original).norm() <= 1e-9 * b.original.norm());

  double prev = 1e9;
  for (int p : {4, 8, 16, 32}) {
    const OneBranchResult c = one_branch_roundtrip_chebyshev(sys, ir, d, p);
    const double mse = mse_db(c.original, c.decoded);
    CHECK(mse <= prev + 0.5);
    prev = mse;
  }
  CHECK_THROWS_AS(one_branch_roundtrip(sys, ir, Vector::Ones(5)), Error);
  CHECK_THROWS_AS(one_branch_roundtrip_chebyshev(sys, SpectralFilter::from_values(ir.values), d, 8), Error);
}

TEST_CASE("chebyshev vertex pipeline") {
  const BipartiteSystem sys = build_system(gen_random_bipartite(16, 4));
  std::mt19937_64 rng(8);
  const Vector x = oracle::random_vector(rng, 32);
  const auto smooth_g = [](double l) { return std::exp(-l); };
  const auto smooth_w = [](double l) { return 1.0 / (1.0 + l * l); };
  const SpectralFilter g = SpectralFilter::sampled(sys.basis_b.lambdas, smooth_g, "g");
  const SpectralFilter w = SpectralFilter::sampled(sys.basis_b.lambdas, smooth_w, "w");
  const Vector exact = vertex_pipeline(sys, g, w, x);
  CHECK((vertex_pipeline_chebyshev(sys, smooth_g, smooth_w, x, 64) - exact).norm() < 1e-6 * x.norm());

  const auto c1 = [](double) { return 0.7; };
  const SpectralFilter cf = SpectralFilter::sampled(sys.basis_b.lambdas, c1, "c");
  CHECK(max_abs(vertex_pipeline_chebyshev(sys, c1, c1, x, 1) - vertex_pipeline(sys, cf, cf, x)) < 1e-12);
  CHECK(vertex_pipeline_chebyshev(sys, smooth_g, smooth_w, x, 16, false) ==
        vertex_pipeline_chebyshev(sys, smooth_g, smooth_w, x, 16, true));
}

TEST_CASE("payload text") {
  const OneBranchPayload p{8, 4, "g_ir:lmax=2", (Vector(4) << 1.0 / 3.0, -2, 0, 1e-300).finished()};
  std::stringstream io;
  write_payload(io, p);
  const OneBranchPayload back = read_payload(io);
  CHECK(back.n == 8);
  CHECK(back.k == 4);
  CHECK(back.generator == p.generator);
  CHECK(back.values == p.values);

  std::istringstream no_header("N 8\n");
  CHECK_THROWS_AS(read_payload(no_header), Error);
  std::istringstream short_values("gsamp-one-branch\nN 8\nK 4\ngenerator g_ir\nvalues 1 2\n");
  CHECK_THROWS_AS(read_payload(short_values), Error);
  CHECK_THROWS_AS(write_payload(io, {8, 4, "g", Vector::Ones(3)}), Error);
}
