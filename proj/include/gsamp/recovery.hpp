#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include "gsamp/sampling.hpp"

namespace gsamp {

// Periodic graph spectrum (PGS) subspace: x = U A(Lambda) upsample(dhat).
struct PgsModel {
  SpectralFilter generator;
  SamplingConfig cfg;
  SpectralBasis basis;
};

struct SubspacePrior {
  SpectralFilter a;
};

// rho is the smoothness bound; no design formula uses it.
struct SmoothnessPrior {
  SpectralFilter v;
  std::optional<double> rho;
};

using Prior = std::variant<SubspacePrior, SmoothnessPrior>;

enum class Strategy { DS, LS, MX };
enum class DesignMode { Unconstrained, Predefined };

std::string to_string(Strategy s);
std::string to_string(DesignMode m);
Strategy parse_strategy(const std::string& text);
DesignMode parse_mode(const std::string& text);

// h has K entries (applied to the sampled spectrum), w has N.
struct RecoveryDesign {
  Vector h;
  SpectralFilter w;
  Strategy strategy = Strategy::DS;
  DesignMode mode = DesignMode::Unconstrained;
};

// Values at or below this fraction of max|R| count as zero.
inline constexpr double kRelativeTolerance = 1e-10;

Vector generate_pgs(const PgsModel& model, const Vector& dhat);

struct DsCheck {
  bool holds = false;
  double min_abs = 0.0;
};
// `tol` defaults to kRelativeTolerance * max|R_SA|.
DsCheck check_ds(const SpectralFilter& s, const SpectralFilter& a, const SamplingConfig& cfg,
                 std::optional<double> tol = std::nullopt);

RecoveryDesign design_subspace_unconstrained(const SpectralFilter& s, const SpectralFilter& a,
                                             const SamplingConfig& cfg, Strategy strategy);
RecoveryDesign design_subspace_predefined(const SpectralFilter& s, const SpectralFilter& a, const SpectralFilter& w,
                                          const SamplingConfig& cfg, Strategy strategy);
// LS and MX coincide here; the result is tagged MX.
RecoveryDesign design_smoothness_unconstrained(const SpectralFilter& s, const SpectralFilter& v,
                                               const SamplingConfig& cfg);
RecoveryDesign design_smoothness_predefined(const SpectralFilter& s, const SpectralFilter& v, const SpectralFilter& w,
                                            const SamplingConfig& cfg, Strategy strategy);

// x~ = U W(Lambda) upsample(h .* chat).
template <class Scalar, class CScalar>
VectorOf<Scalar> reconstruct(const BasicSpectralBasis<Scalar>& b, const RecoveryDesign& design,
                             const BasicSampledSpectrum<CScalar>& chat) {
  const SamplingConfig& cfg = chat.config;
  require(b.size() == cfg.n && design.w.size() == cfg.n, ErrorCode::DimensionMismatch, "reconstruct: N");
  require(design.h.size() == cfg.k && chat.values.size() == cfg.k, ErrorCode::DimensionMismatch, "reconstruct: K");
  const VectorOf<Scalar> corrected =
      (chat.values.array() * design.h.array().template cast<CScalar>()).matrix().template cast<Scalar>();
  VectorOf<Scalar> spectrum = spectral_upsample(corrected, cfg);
  spectrum.array() *= design.w.values.array().template cast<Scalar>();
  return b.u * spectrum;
}

// sum_i v_i^2 |xhat_i|^2.
double smoothness_energy(const SpectralBasis& b, const SpectralFilter& v, const Vector& x);

inline constexpr double kMseFloorDb = -320.0;

// ||x - xt||^2 / ||x||^2, linear and in dB (clamped at kMseFloorDb).
double mse_ratio(const Vector& x, const Vector& xtilde);
double ratio_to_db(double ratio);
double mse_db(const Vector& x, const Vector& xtilde);

// Text form: `strategy DS`, `mode unconstrained`, `h <K values>`, `w <N values>`.
void write_design(std::ostream& out, const RecoveryDesign& d);
RecoveryDesign read_design(std::istream& in);

}  // namespace gsamp
