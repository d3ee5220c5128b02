#include "gsamp/sampling.hpp"

#include <json.hpp>

namespace gsamp {

SamplingConfig SamplingConfig::from_ratio(Index n, Index m) {
  require(n >= 1 && m >= 1, ErrorCode::InvalidParameter, "N and M must be positive");
  require(n % m == 0, ErrorCode::InvalidParameter,
          "sampling ratio M=" + std::to_string(m) + " does not divide N=" + std::to_string(n));
  return {n, m, n / m};
}

SamplingConfig SamplingConfig::from_k(Index n, Index k) {
  require(n >= 1 && k >= 1, ErrorCode::InvalidParameter, "N and K must be positive");
  require(n % k == 0, ErrorCode::InvalidParameter,
          "K=" + std::to_string(k) + " does not divide N=" + std::to_string(n));
  return {n, n / k, k};
}

Vector vertex_sample(const Matrix& g, const std::vector<Index>& t, const Vector& x) {
  require(g.rows() == g.cols() && g.cols() == x.size(), ErrorCode::DimensionMismatch, "vertex_sample: sizes");
  Vector out(static_cast<Index>(t.size()));
  for (std::size_t i = 0; i < t.size(); ++i) {
    require(t[i] >= 0 && t[i] < x.size(), ErrorCode::IndexOutOfRange, "sampling vertex out of range");
    out[static_cast<Index>(i)] = g.row(t[i]).dot(x);
  }
  return out;
}

Vector vertex_sample(const SpectralBasis& b, const SpectralFilter& g, const std::vector<Index>& t, const Vector& x) {
  for (Index v : t) require(v >= 0 && v < b.size(), ErrorCode::IndexOutOfRange, "sampling vertex out of range");
  const Vector filtered = apply_filter(b, g, x);
  Vector out(static_cast<Index>(t.size()));
  for (std::size_t i = 0; i < t.size(); ++i) out[static_cast<Index>(i)] = filtered[t[i]];
  return out;
}

Vector sampled_cross_correlation(const SpectralFilter& f1, const SpectralFilter& f2, const SamplingConfig& cfg) {
  require(f1.size() == cfg.n && f2.size() == cfg.n, ErrorCode::DimensionMismatch, "cross correlation: lengths");
  return spectral_fold(f1.values.cwiseProduct(f2.values), cfg).values;
}

std::string to_json_line(const SampledSpectrum& c) {
  nlohmann::json j;
  j["K"] = c.config.k;
  j["M"] = c.config.m;
  j["values"] = std::vector<double>(c.values.data(), c.values.data() + c.values.size());
  return j.dump();
}

std::string to_json_line(const ComplexSampledSpectrum& c) {
  nlohmann::json j;
  j["K"] = c.config.k;
  j["M"] = c.config.m;
  auto values = nlohmann::json::array();
  for (Index i = 0; i < c.values.size(); ++i) values.push_back({c.values[i].real(), c.values[i].imag()});
  j["values"] = std::move(values);
  return j.dump();
}

SampledSpectrum sampled_spectrum_from_json(const std::string& line) {
  try {
    const auto j = nlohmann::json::parse(line);
    const auto k = j.at("K").get<Index>();
    const auto m = j.at("M").get<Index>();
    const auto values = j.at("values").get<std::vector<double>>();
    require(static_cast<Index>(values.size()) == k, ErrorCode::ParseError, "values length differs from K");
    SampledSpectrum out{Eigen::Map<const Vector>(values.data(), k), SamplingConfig::from_ratio(k * m, m)};
    return out;
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::ParseError, std::string("sampled spectrum record: ") + e.what());
  }
}

}  // namespace gsamp
