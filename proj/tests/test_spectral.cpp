#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "gsamp/chebyshev.hpp"
#include "gsamp/kernels.hpp"
#include "gsamp/spectral.hpp"
#include "oracles.hpp"

using namespace gsamp;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Graph k22() {
  Matrix w = Matrix::Zero(4, 4);
  w.topRightCorner(2, 2).setOnes();
  w.bottomLeftCorner(2, 2).setOnes();
  return Graph(w);
}

}  // namespace

TEST_CASE("eigendecompose examples") {
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 3, 1, 2;
  const SpectralBasis b = eigendecompose({d, OperatorKind::Combinatorial});
  CHECK(b.lambdas[0] == doctest::Approx(1.0));
  CHECK(b.lambdas[1] == doctest::Approx(2.0));
  CHECK(b.lambdas[2] == doctest::Approx(3.0));
  CHECK((b.u.array() >= 0.0).all());
  CHECK(max_abs(b.u.cwiseAbs() - Eigen::PermutationMatrix<3>(Eigen::Vector3i(1, 2, 0)).toDenseMatrix().cast<double>()) <
        1e-14);

  const Graph g = gen_random_sensor(32, 4);
  const SpectralBasis lb = eigendecompose(combinatorial_laplacian(g));
  CHECK(std::abs(lb.lambdas[0]) < 1e-10);
  CHECK(max_abs(lb.u.col(0) - Vector::Constant(32, 1.0 / std::sqrt(32.0))) < 1e-10);

  const SpectralBasis kb = eigendecompose(normalized_laplacian(k22()));
  const Vector ref = Eigen::SelfAdjointEigenSolver<Matrix>(normalized_laplacian(k22()).matrix).eigenvalues();
  CHECK(max_abs(kb.lambdas - ref) < 1e-12);
  CHECK(kb.lambdas[3] == doctest::Approx(2.0));
}

TEST_CASE("eigendecompose invariants") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const VariationOperator op = combinatorial_laplacian(gen_random_sensor(24, seed));
    const SpectralBasis a = eigendecompose(op), b = eigendecompose(op);
    CHECK(a.u == b.u);
    CHECK(a.lambdas == b.lambdas);
    const BasisCheck c = check_basis(a, op.matrix);
    CHECK(c.orthonormality < 1e-12);
    CHECK(c.diagonalization < 1e-10);
    CHECK(c.ordered);
  }
  // Degenerate spectrum: K_{4,4} has a multiplicity-6 eigenvalue.
  Matrix w = Matrix::Zero(8, 8);
  w.topRightCorner(4, 4).setOnes();
  w.bottomLeftCorner(4, 4).setOnes();
  const VariationOperator op = normalized_laplacian(Graph(w));
  const SpectralBasis a = eigendecompose(op);
  CHECK(a.u == eigendecompose(op).u);
  CHECK(check_basis(a, op.matrix).orthonormality < 1e-12);

  Matrix asym = Matrix::Identity(2, 2);
  asym(0, 1) = 1.0;
  CHECK_THROWS_AS(eigendecompose({asym, OperatorKind::Combinatorial}), Error);
}

TEST_CASE("dft basis") {
  const ComplexBasis b2 = dft_basis(2);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(b2.u(0, 0) - Complex(r)) < 1e-15);
  CHECK(std::abs(b2.u(1, 1) - Complex(-r)) < 1e-15);
  CHECK(std::abs(b2.u(0, 1) - Complex(r)) < 1e-15);

  const ComplexBasis b8 = dft_basis(8);
  Vector delta = Vector::Zero(8);
  delta[0] = 1.0;
  const ComplexVector xhat = gft(b8, delta);
  CHECK((xhat - ComplexVector::Constant(8, 1.0 / std::sqrt(8.0))).cwiseAbs().maxCoeff() < 1e-15);

  // Diagonalizes the circular Laplacian and matches the naive DFT.
  const Matrix l = combinatorial_laplacian(gen_circular(8)).matrix;
  CHECK(check_basis(b8, l).diagonalization < 1e-12);
  std::mt19937_64 rng(3);
  const Vector x = oracle::random_vector(rng, 8);
  CHECK((gft(b8, x) - oracle::dft(x)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("gft round trip and Parseval") {
  const SpectralBasis b = eigendecompose(combinatorial_laplacian(gen_random_sensor(16, 7)));
  Vector u3 = b.u.col(3);
  Vector d3 = Vector::Zero(16);
  d3[3] = 1.0;
  CHECK(max_abs(gft(b, u3) - d3) < 1e-12);
  CHECK(gft(b, Vector::Zero(16)).isZero(0.0));
  CHECK(igft(b, Vector::Zero(16)).isZero(0.0));
  CHECK(max_abs(igft(b, d3) - u3) < 1e-15);

  std::mt19937_64 rng(11);
  for (int t = 0; t < 5; ++t) {
    const Vector x = oracle::random_vector(rng, 16);
    CHECK(max_abs(igft(b, gft(b, x)) - x) < 1e-10);
    CHECK(std::abs(gft(b, x).norm() - x.norm()) < 1e-10 * x.norm());
  }
  const ComplexBasis cb = dft_basis(12);
  const Vector x = oracle::random_vector(rng, 12);
  CHECK(std::abs(gft(cb, x).norm() - x.norm()) < 1e-10 * x.norm());
  CHECK((igft(cb, gft(cb, x)) - x.cast<Complex>()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS(gft(b, Vector::Zero(5)), Error);
}

TEST_CASE("apply_filter") {
  const Graph g = gen_random_sensor(8, 5);
  const SpectralBasis b = eigendecompose(combinatorial_laplacian(g));
  std::mt19937_64 rng(17);
  const Vector x = oracle::random_vector(rng, 8);

  CHECK(max_abs(apply_filter(b, filters::ones(b.lambdas), x) - x) < 1e-10);

  Vector ind = Vector::Zero(8);
  ind[0] = 1.0;
  CHECK(max_abs(apply_filter(b, SpectralFilter::from_values(ind), x) - Vector::Constant(8, x.mean())) < 1e-10);

  const Vector f = oracle::random_vector(rng, 8), h = oracle::random_vector(rng, 8);
  CHECK(max_abs(apply_filter(b, SpectralFilter::from_values(f), x) - oracle::spectral_operator(b.u, f) * x) < 1e-12);

  const SpectralFilter ff = SpectralFilter::from_values(f), hh = SpectralFilter::from_values(h);
  CHECK(max_abs(apply_filter(b, ff, apply_filter(b, hh, x)) - apply_filter(b, ff * hh, x)) < 1e-10);
}

TEST_CASE("standard filters") {
  CHECK(filters::generator_1(0.0, 5.0, 0.1) == 1.0);
  CHECK(filters::generator_2(3.0, 3.0) == doctest::Approx(0.2231).epsilon(1e-4));
  CHECK(filters::generator_2(3.0, 3.0) == doctest::Approx(std::exp(-1.5)));
  CHECK(filters::recon_cos(0.0, 4.0, 0.1) == 1.0);
  CHECK(filters::smooth_v(4.0, 4.0) == 2.0);
  CHECK(filters::g_ir(1.0, 2.0) == 1.0);
  CHECK(filters::g_ir(1.5, 2.0) == -1.5);

  const Vector lam = Vector::LinSpaced(6, 0.0, 2.5);
  const SpectralFilter bl = filters::g_bl(lam, 2);
  CHECK(bl.values == (Vector(6) << 1, 1, 0, 0, 0, 0).finished());
  CHECK(filters::g_bl_cutoff(lam, 2) == doctest::Approx(0.75));
  CHECK(bl.response(0.7) == 1.0);
  CHECK(bl.response(0.8) == 0.0);

  CHECK_THROWS_AS(filters::g_bl(lam, 0), Error);
  CHECK_THROWS_AS(filters::g_bl(lam, 7), Error);
  CHECK_THROWS_AS(filters::generator_1(lam, 0.0, 0.1), Error);
  CHECK_THROWS_AS(filters::recon_cos(lam, 1.0, -1.0), Error);
}

TEST_CASE("filter specs and tables") {
  const FilterSpec s = FilterSpec::parse("gen1:eps=0.2,lmax=3");
  CHECK(s.id == "gen1");
  CHECK(s.epsilon == 0.2);
  CHECK(s.lambda_max == 3.0);
  CHECK(FilterSpec::parse(s.to_string()).epsilon == 0.2);
  CHECK(FilterSpec::parse("g_bl:k=4").k == 4);
  CHECK_THROWS_AS(FilterSpec::parse("nope"), Error);
  CHECK_THROWS_AS(FilterSpec::parse("gen1:eps"), Error);
  CHECK_THROWS_AS(FilterSpec::parse("gen1:eps=abc"), Error);
  CHECK_THROWS_AS(FilterSpec::parse("gen1:q=1"), Error);

  const Vector lam = Vector::LinSpaced(5, 0.0, 4.0);
  const SpectralFilter f = make_filter(FilterSpec::parse("gen2"), lam);
  CHECK(f.values[4] == doctest::Approx(std::exp(-1.5)));
  std::stringstream io;
  write_filter_table(io, lam, f);
  const auto [lam2, f2] = read_filter_table(io);
  CHECK(lam2 == lam);
  CHECK(f2.values == f.values);
  std::istringstream bad("0 1\nxyz\n");
  CHECK_THROWS_AS(read_filter_table(bad), Error);
}

TEST_CASE("chebyshev fit") {
  for (int p : {1, 3, 8}) {
    const ChebyshevFilter c = chebyshev_fit([](double) { return 1.0; }, 0.0, 2.0, p);
    CHECK(c.coeffs[0] == doctest::Approx(2.0));
    for (int j = 1; j <= p; ++j) CHECK(std::abs(c.coeffs[j]) < 1e-14);
    CHECK(c.grid_error < 1e-14);
  }
  const ChebyshevFilter lin = chebyshev_fit([](double l) { return l; }, 0.0, 3.0, 4);
  CHECK(lin.grid_error < 1e-12);
  CHECK(lin(1.7) == doctest::Approx(1.7).epsilon(1e-12));

  const double lmax = 5.0;
  const ChebyshevFilter g1 =
      chebyshev_fit([lmax](double l) { return filters::generator_1(l, lmax, 0.1); }, 0.0, lmax, 16);
  CHECK(g1.grid_error < 1e-10);

  // grid error against an independent evaluation
  const auto fn = [](double l) { return std::exp(-l) * std::sin(3 * l); };
  const ChebyshevFilter c = chebyshev_fit(fn, 0.0, 2.0, 12);
  double worst = 0.0;
  for (int i = 0; i < kChebyshevGridPoints; ++i) {
    const double l = 2.0 * i / (kChebyshevGridPoints - 1);
    worst = std::max(worst, std::abs(fn(l) - c(l)));
  }
  CHECK(c.grid_error == doctest::Approx(worst).epsilon(1e-9));

  CHECK_THROWS_AS(chebyshev_fit(fn, 0.0, 2.0, 0), Error);
  CHECK_THROWS_AS(chebyshev_fit(fn, 1.0, 1.0, 3), Error);
}

TEST_CASE("apply_chebyshev") {
  const Graph g = gen_random_bipartite(32, 3);
  const VariationOperator op = normalized_laplacian(g);
  const SpectralBasis b = eigendecompose(op);
  std::mt19937_64 rng(5);
  const Vector x = oracle::random_vector(rng, 64);

  const ChebyshevFilter one = chebyshev_fit([](double) { return 1.0; }, 0.0, 2.0, 3);
  CHECK(max_abs(apply_chebyshev(op, one, x) - x) < 1e-10);
  const ChebyshevFilter lin = chebyshev_fit([](double l) { return l; }, 0.0, 2.0, 1);
  CHECK(max_abs(apply_chebyshev(op, lin, x) - op.matrix * x) < 1e-10);

  const auto ir = [](double l) { return filters::g_ir(l, 2.0); };
  const ChebyshevFilter c = chebyshev_fit(ir, 0.0, 2.0, 32);
  const Vector exact = apply_filter(b, SpectralFilter::sampled(b.lambdas, ir, "g_ir"), x);
  const Vector approx = apply_chebyshev(op, c, x);
  // Bounded by the fit error at the eigenvalues themselves.
  double at_eigs = 0.0;
  for (Index i = 0; i < b.size(); ++i) at_eigs = std::max(at_eigs, std::abs(ir(b.lambdas[i]) - c(b.lambdas[i])));
  CHECK((approx - exact).norm() <= at_eigs * x.norm() * (1 + 1e-6));
  CHECK((approx - exact).norm() <= c.grid_error * x.norm() * (1 + 1e-6));

  CHECK(apply_chebyshev(op, c, x, false) == apply_chebyshev(op, c, x, true));

  // Interval too short for the operator.
  const ChebyshevFilter narrow = chebyshev_fit(ir, 0.0, 1.0, 4);
  try {
    apply_chebyshev(op, narrow, x);
    FAIL("expected IntervalMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IntervalMismatch);
  }
}

TEST_CASE("serial and parallel kernels agree bitwise") {
  const Matrix a = normalized_laplacian(gen_random_sensor(96, 8)).matrix;
  std::mt19937_64 rng(2);
  const Vector x = oracle::random_vector(rng, 96);
  Vector ys(96), yp(96);
  const std::span<const double> xs(x.data(), 96);
  kernels::serial::symv(a, xs, {ys.data(), 96});
  kernels::parallel::symv(a, xs, {yp.data(), 96});
  CHECK(ys == yp);
  CHECK(max_abs(ys - a * x) < 1e-12);

  const std::vector<double> coeffs = {1.0, 0.5, -0.25, 0.125, 0.3};
  const kernels::ChebyshevPlan plan{coeffs, 1.0, 1.0};
  kernels::serial::chebyshev(a, plan, xs, {ys.data(), 96});
  kernels::parallel::chebyshev(a, plan, xs, {yp.data(), 96});
  CHECK(ys == yp);
}
