#pragma once

#include <string>
#include <vector>

#include "gsamp/spectral.hpp"

namespace gsamp {

// N = M * K; M is the sampling ratio, K the sampled length.
struct SamplingConfig {
  Index n = 0;
  Index m = 1;
  Index k = 0;

  static SamplingConfig from_ratio(Index n, Index m);
  static SamplingConfig from_k(Index n, Index k);
};

template <class Scalar>
struct BasicSampledSpectrum {
  VectorOf<Scalar> values;
  SamplingConfig config;
};

using SampledSpectrum = BasicSampledSpectrum<double>;
using ComplexSampledSpectrum = BasicSampledSpectrum<Complex>;

// c[i] = sum_l xhat[i + K l], i in [0, K).
template <class Derived>
auto spectral_fold(const Eigen::MatrixBase<Derived>& xhat, const SamplingConfig& cfg)
    -> BasicSampledSpectrum<typename Derived::Scalar> {
  using Scalar = typename Derived::Scalar;
  require(xhat.size() == cfg.n, ErrorCode::DimensionMismatch, "spectral_fold: spectrum length");
  BasicSampledSpectrum<Scalar> out{VectorOf<Scalar>::Zero(cfg.k), cfg};
  for (Index l = 0; l < cfg.m; ++l) out.values += xhat.segment(l * cfg.k, cfg.k);
  return out;
}

// Periodic replication: out[i] = dhat[i mod K].
template <class Derived>
auto spectral_upsample(const Eigen::MatrixBase<Derived>& dhat, const SamplingConfig& cfg)
    -> VectorOf<typename Derived::Scalar> {
  require(dhat.size() == cfg.k, ErrorCode::DimensionMismatch, "spectral_upsample: length");
  return dhat.replicate(cfg.m, 1);
}

// D_samp S(Lambda) U^H x.
template <class Scalar, class Derived>
BasicSampledSpectrum<Scalar> frequency_sample(const BasicSpectralBasis<Scalar>& b, const SpectralFilter& s,
                                              const Eigen::MatrixBase<Derived>& x, const SamplingConfig& cfg) {
  require(b.size() == cfg.n && s.size() == cfg.n, ErrorCode::DimensionMismatch, "frequency_sample: sizes");
  VectorOf<Scalar> xhat = gft(b, x);
  xhat.array() *= s.values.array().template cast<Scalar>();
  return spectral_fold(xhat, cfg);
}

// I_T G x.
Vector vertex_sample(const Matrix& g, const std::vector<Index>& t, const Vector& x);
Vector vertex_sample(const SpectralBasis& b, const SpectralFilter& g, const std::vector<Index>& t, const Vector& x);

// R[i] = sum_l f1[i + K l] f2[i + K l].
Vector sampled_cross_correlation(const SpectralFilter& f1, const SpectralFilter& f2, const SamplingConfig& cfg);

// One-line record {"K":..,"M":..,"values":[..]}; complex values are [re, im] pairs.
std::string to_json_line(const SampledSpectrum& c);
std::string to_json_line(const ComplexSampledSpectrum& c);
SampledSpectrum sampled_spectrum_from_json(const std::string& line);

}  // namespace gsamp
