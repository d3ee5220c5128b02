#include <doctest.h>

#include "gsamp/bipartite.hpp"
#include "gsamp/sampling.hpp"
#include "oracles.hpp"

using namespace gsamp;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

SpectralBasis sensor_basis(Index n, std::uint64_t seed) {
  return eigendecompose(combinatorial_laplacian(gen_random_sensor(n, seed)));
}

}  // namespace

TEST_CASE("sampling config") {
  const SamplingConfig a = SamplingConfig::from_ratio(256, 8);
  CHECK(a.k == 32);
  const SamplingConfig b = SamplingConfig::from_k(12, 4);
  CHECK(b.m == 3);
  CHECK_THROWS_AS(SamplingConfig::from_ratio(10, 3), Error);
  CHECK_THROWS_AS(SamplingConfig::from_k(10, 4), Error);
  CHECK_THROWS_AS(SamplingConfig::from_ratio(10, 0), Error);
}

TEST_CASE("spectral fold and upsample") {
  std::mt19937_64 rng(1);
  const Vector x = oracle::random_vector(rng, 8);
  CHECK(spectral_fold(x, SamplingConfig::from_ratio(8, 1)).values == x);

  const Vector v = (Vector(4) << 1, 2, 3, 4).finished();
  CHECK(spectral_fold(v, SamplingConfig::from_k(4, 2)).values == (Vector(2) << 4, 6).finished());

  const SamplingConfig c16 = SamplingConfig::from_k(16, 4);
  const Vector r = oracle::random_vector(rng, 16), s = oracle::random_vector(rng, 16);
  CHECK(max_abs(spectral_fold(r, c16).values - oracle::dsamp(16, 4) * r) < 1e-14);
  CHECK(max_abs(spectral_fold(Vector(2.0 * r - 3.0 * s), c16).values -
                (2.0 * spectral_fold(r, c16).values - 3.0 * spectral_fold(s, c16).values)) < 1e-12);

  CHECK(spectral_upsample(x, SamplingConfig::from_k(8, 8)) == x);
  CHECK(spectral_upsample((Vector(2) << 1, 2).finished(), SamplingConfig::from_k(6, 2)) ==
        (Vector(6) << 1, 2, 1, 2, 1, 2).finished());
  // Upsampling is the adjoint of folding.
  CHECK(max_abs(spectral_upsample(s.head(4), c16) - oracle::dsamp(16, 4).transpose() * s.head(4)) < 1e-15);

  CHECK_THROWS_AS(spectral_fold(x, c16), Error);
  CHECK_THROWS_AS(spectral_upsample(x, c16), Error);
}

TEST_CASE("frequency_sample") {
  const SpectralBasis b = sensor_basis(12, 2);
  std::mt19937_64 rng(4);
  const Vector x = oracle::random_vector(rng, 12);

  const SamplingConfig id = SamplingConfig::from_ratio(12, 1);
  CHECK(max_abs(frequency_sample(b, filters::ones(b.lambdas), x, id).values - gft(b, x)) < 1e-14);

  const SamplingConfig c3 = SamplingConfig::from_ratio(12, 3);
  CHECK(max_abs(frequency_sample(b, filters::g_bl(b.lambdas, 4), x, c3).values - gft(b, x).head(4)) < 1e-14);

  for (int t = 0; t < 5; ++t) {
    const Vector sv = oracle::random_vector(rng, 12), xv = oracle::random_vector(rng, 12);
    const Vector got = frequency_sample(b, SpectralFilter::from_values(sv), xv, c3).values;
    CHECK(max_abs(got - oracle::sampling_op(b.u, sv, 4) * xv) < 1e-12);
  }
  CHECK_THROWS_AS(frequency_sample(b, filters::ones(Vector::Zero(6)), x, c3), Error);
}

TEST_CASE("frequency_sample on the DFT basis is classical aliasing") {
  std::mt19937_64 rng(9);
  for (Index n : {8, 12, 16}) {
    const ComplexBasis b = dft_basis(n);
    for (Index m : {2, 4}) {
      if (n % m) continue;
      const SamplingConfig cfg = SamplingConfig::from_ratio(n, m);
      const Vector x = oracle::random_vector(rng, n), s = oracle::random_vector(rng, n);
      const ComplexVector got = frequency_sample(b, SpectralFilter::from_values(s), x, cfg).values;
      const ComplexVector X = oracle::dft(x);
      ComplexVector expect = ComplexVector::Zero(cfg.k);
      for (Index i = 0; i < cfg.k; ++i)
        for (Index l = 0; l < m; ++l) expect[i] += s[i + cfg.k * l] * X[i + cfg.k * l];
      CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("vertex_sample") {
  const Vector x = (Vector(4) << 5, 6, 7, 8).finished();
  const Matrix eye = Matrix::Identity(4, 4);
  CHECK(vertex_sample(eye, {0, 1, 2, 3}, x) == x);
  CHECK(vertex_sample(eye, {0, 2}, x) == (Vector(2) << 5, 7).finished());
  CHECK_THROWS_AS(vertex_sample(eye, {0, 4}, x), Error);
  CHECK_THROWS_AS(vertex_sample(eye, {-1}, x), Error);

  const BipartiteSystem sys = build_system(gen_random_bipartite(4, 6));
  std::mt19937_64 rng(8);
  const Vector xs = oracle::random_vector(rng, 8);
  const SpectralFilter g = SpectralFilter::from_values(oracle::random_vector(rng, 8));
  const Vector vs = vertex_sample(sys.basis_b, g, sys.parts.v1, xs);
  const Vector fs = sys.theorem1_transform * frequency_sample(sys.basis_b, g, xs, sys.sampling()).values;
  CHECK(max_abs(vs - fs) < 1e-12);
  CHECK(max_abs(vs - vertex_sample(oracle::spectral_operator(sys.basis_b.u, g.values), sys.parts.v1, xs)) < 1e-12);
}

TEST_CASE("sampled cross correlation") {
  const SpectralBasis b = sensor_basis(16, 3);
  const SamplingConfig cfg = SamplingConfig::from_ratio(16, 4);
  const SpectralFilter bl = filters::g_bl(b.lambdas, 4);
  CHECK(sampled_cross_correlation(bl, bl, cfg) == Vector::Ones(4));

  const SpectralFilter f1 = filters::generator_1(b.lambdas, b.lambda_max(), 0.1);
  const SpectralFilter f2 = filters::recon_cos(b.lambdas, b.lambda_max(), 0.1);
  CHECK(max_abs(sampled_cross_correlation(f1, f2, SamplingConfig::from_ratio(16, 1)) -
                f1.values.cwiseProduct(f2.values)) < 1e-15);

  const BipartiteSystem sys = build_system(gen_random_bipartite(4, 2));
  const SpectralFilter s = filters::g_bl(sys.basis_b.lambdas, 4);
  const SpectralFilter ir = filters::g_ir(sys.basis_b.lambdas, 2.0);
  const Matrix d = oracle::dsamp(8, 4);
  const Vector expect = (d * s.values.cwiseProduct(ir.values).asDiagonal() * d.transpose()).diagonal();
  CHECK(max_abs(sampled_cross_correlation(s, ir, sys.sampling()) - expect) < 1e-15);
}

TEST_CASE("sampled spectrum json") {
  const SampledSpectrum c{(Vector(3) << 1.5, -2.0, 0.1).finished(), SamplingConfig::from_k(12, 3)};
  const SampledSpectrum back = sampled_spectrum_from_json(to_json_line(c));
  CHECK(back.values == c.values);
  CHECK(back.config.m == 4);
  CHECK(to_json_line(ComplexSampledSpectrum{ComplexVector::Constant(2, Complex(1, -1)), SamplingConfig::from_k(4, 2)})
            .find("[1.0,-1.0]") != std::string::npos);
  CHECK_THROWS_AS(sampled_spectrum_from_json("{\"K\":2,\"M\":2,\"values\":[1]}"), Error);
  CHECK_THROWS_AS(sampled_spectrum_from_json("not json"), Error);
}
