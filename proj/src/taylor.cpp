#include "dropaudit/taylor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dropaudit {

std::string to_string(SeriesVerdict v) {
  switch (v) {
    case SeriesVerdict::Converged: return "Converged";
    case SeriesVerdict::Diverging: return "Diverging";
    default: return "Inconclusive";
  }
}

namespace {

// E[Z^j] under the scalar law, in extended precision (B^j overflows doubles
// well before the terms themselves do).
Float300 scalar_moment_hp(int j, double xb, const DropoutConfig& cfg) {
  const Float300 delta(cfg.delta);
  const Float300 keep = 1 - delta;
  const Float300 b = Float300(xb) * delta / keep;
  if (cfg.scalar_drop_to_zero) {
    return keep * pow(b, j) + delta * pow(Float300(-xb), j);
  }
  return keep * pow(b, j);
}

double penalty_term(int j, double xb, std::span<const double> x, std::span<const double> beta,
                    const DropoutConfig& cfg, PartitionFamily family) {
  Float300 moment;
  if (cfg.model == NoiseModel::ScalarCoupling) {
    moment = scalar_moment_hp(j, xb, cfg);
  } else {
    moment = Float300(coordinate_moment(j, x, beta, cfg).value);
  }
  Float300 deriv;
  if (family == PartitionFamily::LinearGaussian) {
    deriv = (j == 2) ? Float300(1) : Float300(0);
  } else {
    deriv = Float300(partition_derivative(family, j, xb));
  }
  Float300 factorial = 1;
  for (int i = 2; i <= j; ++i) factorial *= i;
  return static_cast<double>(deriv * moment / factorial);
}

}  // namespace

double rk_penalty(int k, std::span<const double> x, std::span<const double> beta,
                  const DropoutConfig& cfg, PartitionFamily family) {
  cfg.validate();
  if (k < 2) throw std::domain_error("rk_penalty: k must be >= 2");
  const double xb = dot(x, beta);
  double acc = 0.0;
  for (int j = 2; j <= k; ++j) acc += penalty_term(j, xb, x, beta, cfg, family);
  return acc;
}

SeriesDiagnostics diagnose_series(double xb, const DropoutConfig& cfg, int max_order,
                                  double tolerance) {
  cfg.validate();
  if (max_order < 12) throw std::domain_error("diagnose_series: max_order must be >= 12");
  SeriesDiagnostics diag;
  diag.expansion_point = xb;
  diag.displacement = std::fabs(xb) * cfg.delta / (1.0 - cfg.delta);
  diag.tolerance = tolerance;
  diag.terms.reserve(max_order);
  diag.partial_sums.reserve(max_order);
  diag.root_test.reserve(max_order);

  const auto scaled = scaled_derivatives(xb, max_order);  // A^{(k)}(z)/k!
  Float300 sum = 0;
  for (int k = 1; k <= max_order; ++k) {
    const Float300 term = scaled[k - 1] * scalar_moment_hp(k, xb, cfg);
    sum += term;
    diag.terms.push_back(static_cast<double>(term));
    diag.partial_sums.push_back(static_cast<double>(sum));
    diag.root_test.push_back(
        static_cast<double>(pow(abs(scaled[k - 1]), Float300(1) / k)));
  }

  // Converged: both trailing increments below tolerance.
  const int n = max_order;
  if (n >= 3 && std::fabs(diag.terms[n - 1]) < tolerance &&
      std::fabs(diag.terms[n - 2]) < tolerance) {
    diag.verdict = SeriesVerdict::Converged;
    int at = n;
    while (at >= 3 && std::fabs(diag.terms[at - 1]) < tolerance &&
           std::fabs(diag.terms[at - 2]) < tolerance) {
      --at;
    }
    diag.verdict_order = at + 1;
    return diag;
  }

  // Diverging: |t_k| strictly increasing over the final 10 recorded orders.
  if (n >= 11) {
    bool growing = true;
    for (int k = n - 9; k <= n; ++k) {
      if (!(std::fabs(diag.terms[k - 1]) > std::fabs(diag.terms[k - 2]))) {
        growing = false;
        break;
      }
    }
    if (growing) {
      int onset = n - 9;
      while (onset > 2 && std::fabs(diag.terms[onset - 2]) < std::fabs(diag.terms[onset - 1])) {
        --onset;
      }
      diag.verdict = SeriesVerdict::Diverging;
      diag.verdict_order = onset;
      return diag;
    }
  }

  diag.verdict = SeriesVerdict::Inconclusive;
  return diag;
}

RadiusEstimate estimate_radius(double xb, int max_order) {
  if (max_order < 30) throw std::domain_error("estimate_radius: max_order must be >= 30");
  RadiusEstimate est;
  est.z = xb;
  est.max_order = max_order;
  const auto scaled = scaled_derivatives(xb, max_order);
  est.root_test.reserve(max_order);
  for (int k = 1; k <= max_order; ++k) {
    est.root_test.push_back(static_cast<double>(pow(abs(scaled[k - 1]), Float300(1) / k)));
  }
  const int window = std::max(10, max_order / 3);
  est.window_begin = max_order - window + 1;
  double peak = 0.0;
  for (int k = est.window_begin; k <= max_order; ++k) {
    peak = std::max(peak, est.root_test[k - 1]);
  }
  if (!(peak > 0.0)) {
    throw PrecisionExhausted("estimate_radius: tail of root-test sequence vanished");
  }
  est.radius = 1.0 / peak;
  return est;
}

std::vector<double> feature_scale_bound(std::span<const double> x, double cap) {
  if (!(cap > 0.0)) throw std::domain_error("feature_scale_bound: cap must be positive");
  double max_abs = 0.0;
  for (double v : x) max_abs = std::max(max_abs, std::fabs(v));
  std::vector<double> out(x.begin(), x.end());
  if (max_abs == 0.0) return out;  // zero vector passes through
  const double target = 2.0 * std::numbers::pi / (static_cast<double>(x.size()) * cap);
  const double factor = target / max_abs;
  for (double& v : out) v *= factor;
  return out;
}

}  // namespace dropaudit
