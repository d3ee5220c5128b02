#include "gsamp/recovery.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

namespace gsamp {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::DS: return "DS";
    case Strategy::LS: return "LS";
    case Strategy::MX: return "MX";
  }
  return "?";
}

std::string to_string(DesignMode m) {
  return m == DesignMode::Unconstrained ? "unconstrained" : "predefined";
}

Strategy parse_strategy(const std::string& text) {
  if (text == "DS" || text == "ds") return Strategy::DS;
  if (text == "LS" || text == "ls") return Strategy::LS;
  if (text == "MX" || text == "mx") return Strategy::MX;
  raise(ErrorCode::ParseError, "unknown strategy '" + text + "'");
}

DesignMode parse_mode(const std::string& text) {
  if (text == "unconstrained") return DesignMode::Unconstrained;
  if (text == "predefined") return DesignMode::Predefined;
  raise(ErrorCode::ParseError, "unknown design mode '" + text + "'");
}

namespace {

double tolerance_for(const Vector& r) { return r.size() ? kRelativeTolerance * r.cwiseAbs().maxCoeff() : 0.0; }

// Elementwise pseudo-inverse: 1/r where |r| > tol, else 0.
Vector pinv(const Vector& r) {
  const double tol = tolerance_for(r);
  return r.unaryExpr([tol](double v) { return std::abs(v) > tol ? 1.0 / v : 0.0; });
}

bool nonvanishing(const Vector& r) {
  const double tol = tolerance_for(r);
  return r.size() > 0 && (r.cwiseAbs().array() > tol).all();
}

void check_lengths(const SamplingConfig& cfg, std::initializer_list<const SpectralFilter*> fs) {
  for (const auto* f : fs) require(f->size() == cfg.n, ErrorCode::DimensionMismatch, "filter length differs from N");
}

SpectralFilter tilde_w(const SpectralFilter& s, const SpectralFilter& v) {
  require((v.values.array() != 0.0).all(), ErrorCode::InvalidParameter, "smoothness filter V must be nonzero");
  return SpectralFilter::from_values(s.values.array() / v.values.array().square(), "s/v^2");
}

}  // namespace

Vector generate_pgs(const PgsModel& model, const Vector& dhat) {
  require(model.generator.size() == model.cfg.n && model.basis.size() == model.cfg.n, ErrorCode::DimensionMismatch,
          "PGS model sizes");
  require(dhat.size() == model.cfg.k, ErrorCode::DimensionMismatch, "PGS coefficients must have length K");
  const Vector spectrum = model.generator.values.cwiseProduct(spectral_upsample(dhat, model.cfg));
  return model.basis.u * spectrum;
}

DsCheck check_ds(const SpectralFilter& s, const SpectralFilter& a, const SamplingConfig& cfg,
                 std::optional<double> tol) {
  check_lengths(cfg, {&s, &a});
  const Vector r = sampled_cross_correlation(s, a, cfg);
  const double t = tol ? *tol : tolerance_for(r);
  const double min_abs = r.cwiseAbs().minCoeff();
  return {min_abs > t, min_abs};
}

RecoveryDesign design_subspace_unconstrained(const SpectralFilter& s, const SpectralFilter& a,
                                             const SamplingConfig& cfg, Strategy strategy) {
  check_lengths(cfg, {&s, &a});
  const Vector r_sa = sampled_cross_correlation(s, a, cfg);
  RecoveryDesign d{Vector(), a, strategy, DesignMode::Unconstrained};
  if (strategy == Strategy::DS) {
    const DsCheck ds = check_ds(s, a, cfg);
    if (!ds.holds) {
      std::ostringstream msg;
      msg << "DS condition fails: min |R_SA| = " << ds.min_abs << " for S=" << s.name << ", A=" << a.name;
      raise(ErrorCode::DsConditionViolated, msg.str());
    }
    d.h = r_sa.cwiseInverse();
  } else {
    d.h = pinv(r_sa);
  }
  return d;
}

RecoveryDesign design_subspace_predefined(const SpectralFilter& s, const SpectralFilter& a, const SpectralFilter& w,
                                          const SamplingConfig& cfg, Strategy strategy) {
  check_lengths(cfg, {&s, &a, &w});
  RecoveryDesign d{Vector(), w, strategy, DesignMode::Predefined};
  if (strategy == Strategy::LS) {
    d.h = pinv(sampled_cross_correlation(s, w, cfg));
    return d;
  }
  const Vector r_sa = sampled_cross_correlation(s, a, cfg);
  const Vector r_ww = sampled_cross_correlation(w, w, cfg);
  const Vector r_wa = sampled_cross_correlation(w, a, cfg);
  if (strategy == Strategy::DS) {
    require(nonvanishing(r_sa), ErrorCode::DsConditionViolated, "DS condition fails: R_SA vanishes");
    require(nonvanishing(r_ww), ErrorCode::DsConditionViolated, "DS condition fails: R_WW vanishes");
    d.h = r_wa.array() / (r_sa.array() * r_ww.array());
  } else {
    d.h = r_wa.cwiseProduct(pinv(r_sa)).cwiseProduct(pinv(r_ww));
  }
  return d;
}

RecoveryDesign design_smoothness_unconstrained(const SpectralFilter& s, const SpectralFilter& v,
                                               const SamplingConfig& cfg) {
  check_lengths(cfg, {&s, &v});
  SpectralFilter wt = tilde_w(s, v);
  const Vector r = sampled_cross_correlation(s, wt, cfg);
  require(nonvanishing(r), ErrorCode::SingularCorrelation, "R_SW~ vanishes for S=" + s.name);
  return {r.cwiseInverse(), std::move(wt), Strategy::MX, DesignMode::Unconstrained};
}

RecoveryDesign design_smoothness_predefined(const SpectralFilter& s, const SpectralFilter& v, const SpectralFilter& w,
                                            const SamplingConfig& cfg, Strategy strategy) {
  check_lengths(cfg, {&s, &v, &w});
  require(strategy != Strategy::DS, ErrorCode::InvalidParameter, "smoothness prior has no DS design");
  if (strategy == Strategy::LS) return design_subspace_predefined(s, s, w, cfg, Strategy::LS);
  const SpectralFilter wt = tilde_w(s, v);
  const Vector r_swt = sampled_cross_correlation(s, wt, cfg);
  const Vector r_ww = sampled_cross_correlation(w, w, cfg);
  require(nonvanishing(r_swt), ErrorCode::SingularCorrelation, "R_SW~ vanishes for S=" + s.name);
  require(nonvanishing(r_ww), ErrorCode::SingularCorrelation, "R_WW vanishes for W=" + w.name);
  const Vector r_wwt = sampled_cross_correlation(w, wt, cfg);
  return {r_wwt.array() / (r_swt.array() * r_ww.array()), w, Strategy::MX, DesignMode::Predefined};
}

double smoothness_energy(const SpectralBasis& b, const SpectralFilter& v, const Vector& x) {
  require(v.size() == b.size(), ErrorCode::DimensionMismatch, "smoothness_energy: filter length");
  const Vector xhat = gft(b, x);
  return (v.values.array().square() * xhat.array().square()).sum();
}

double mse_ratio(const Vector& x, const Vector& xtilde) {
  require(x.size() == xtilde.size(), ErrorCode::DimensionMismatch, "mse: lengths");
  const double ref = x.squaredNorm();
  require(ref > 0.0, ErrorCode::ZeroReference, "mse: reference signal is zero");
  return (x - xtilde).squaredNorm() / ref;
}

double ratio_to_db(double ratio) {
  if (!(ratio > 0.0)) return kMseFloorDb;
  return std::max(kMseFloorDb, 10.0 * std::log10(ratio));
}

double mse_db(const Vector& x, const Vector& xtilde) { return ratio_to_db(mse_ratio(x, xtilde)); }

void write_design(std::ostream& out, const RecoveryDesign& d) {
  out << "strategy " << to_string(d.strategy) << '\n' << "mode " << to_string(d.mode) << '\n';
  out << std::setprecision(17);
  out << 'h';
  for (double v : d.h) out << ' ' << v;
  out << "\nw";
  for (double v : d.w.values) out << ' ' << v;
  out << '\n';
}

RecoveryDesign read_design(std::istream& in) {
  RecoveryDesign d;
  bool seen[4] = {false, false, false, false};
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string key;
    if (!(row >> key) || key[0] == '#') continue;
    if (key == "strategy" || key == "mode") {
      std::string value;
      require(static_cast<bool>(row >> value), ErrorCode::ParseError, "missing value for " + key);
      if (key == "strategy") d.strategy = parse_strategy(value), seen[0] = true;
      else d.mode = parse_mode(value), seen[1] = true;
    } else if (key == "h" || key == "w") {
      std::vector<double> values;
      std::string tok;
      while (row >> tok) {
        try {
          values.push_back(std::stod(tok));
        } catch (const std::exception&) {
          raise(ErrorCode::ParseError, "bad number '" + tok + "'");
        }
      }
      Vector v = Eigen::Map<Vector>(values.data(), static_cast<Index>(values.size()));
      if (key == "h") d.h = std::move(v), seen[2] = true;
      else d.w = SpectralFilter::from_values(std::move(v), "w"), seen[3] = true;
    } else {
      raise(ErrorCode::ParseError, "unknown design field '" + key + "'");
    }
  }
  require(seen[0] && seen[1] && seen[2] && seen[3], ErrorCode::ParseError, "incomplete design record");
  return d;
}

}  // namespace gsamp
