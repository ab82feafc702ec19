#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dropaudit/partition.hpp"

namespace dropaudit {

// ScalarCoupling is the all-or-nothing displacement law Z = B*Y with a
// single Bernoulli Y (the analytical simplification); IndependentCoordinates
// is dropout as practiced, one Bernoulli mask per feature.
enum class NoiseModel { ScalarCoupling, IndependentCoordinates };

struct DropoutConfig {
  double delta = 0.5;  // drop probability
  NoiseModel model = NoiseModel::ScalarCoupling;
  // Variant reading of the scalar law: a dropped draw displaces the inner
  // product all the way to 0 (displacement -x.beta) instead of leaving it
  // unchanged. Off by default: the default follows the printed moment
  // formula E[Z^n] = (x.beta)^n * delta^n / (1-delta)^{n-1}.
  bool scalar_drop_to_zero = false;

  double scale() const { return 1.0 / (1.0 - delta); }
  void validate() const;
};

// The two-point law of the scalar displacement: Z = B w.p. (1-delta),
// Z = 0 w.p. delta, with B = (x.beta) * delta / (1-delta).
struct NoiseDisplacement {
  double b = 0.0;
  double delta = 0.0;

  double mean() const { return b * (1.0 - delta); }
  static NoiseDisplacement from_inner(double xb, const DropoutConfig& cfg);
};

struct Example {
  std::vector<double> x;
  int y = 0;  // {0,1} for binary; class id for multiclass
};

double dot(std::span<const double> a, std::span<const double> b);

// E[Z^n] = (xb)^n * delta^n / (1-delta)^{n-1} under the scalar law
// (or the drop-to-zero variant's two-point moments when that flag is set).
// n = 0 is rejected.
double scalar_moment(int n, double xb, const DropoutConfig& cfg);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;  // 0 for exact enumeration
  std::int64_t draws = 0;
};

enum class MomentMode { Auto, Exact, MonteCarlo };

inline constexpr int kExactEnumerationMaxDim = 22;  // ~4M masks, sub-second
inline constexpr std::int64_t kDefaultMcDraws = 1'000'000;

// E[(x~.beta - x.beta)^m] under independent per-coordinate dropout.
// Exact mode enumerates all 2^d masks (d <= 22; larger d refuses);
// MonteCarlo uses the counter-based generator and reports standard error.
// Auto picks exact when it can and MC otherwise.
McEstimate coordinate_moment(int m, std::span<const double> x, std::span<const double> beta,
                             const DropoutConfig& cfg, MomentMode mode = MomentMode::Auto,
                             std::uint64_t seed = 0, std::int64_t draws = kDefaultMcDraws);

// R(beta) = E[A(x~.beta)] - A(x.beta), without any series truncation.
// ScalarCoupling has a closed form from the two-point law; the independent
// model enumerates or samples masks.
McEstimate exact_regularizer(std::span<const double> x, std::span<const double> beta,
                             const DropoutConfig& cfg,
                             PartitionFamily family = PartitionFamily::Logistic,
                             MomentMode mode = MomentMode::Auto, std::uint64_t seed = 0,
                             std::int64_t draws = kDefaultMcDraws);

// The quadratic approximation: 1/2 * A''(x.beta) * E[Delta^2], with the
// second moment taken from the configured noise model.
double variance_r2(std::span<const double> x, std::span<const double> beta,
                   const DropoutConfig& cfg, PartitionFamily family = PartitionFamily::Logistic);

}  // namespace dropaudit
