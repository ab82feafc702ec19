#include "dropaudit/noise.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dropaudit/rng.hpp"

namespace dropaudit {

void DropoutConfig::validate() const {
  if (!(delta >= 0.0) || !(delta < 1.0)) {
    throw std::domain_error("DropoutConfig: delta must lie in [0,1)");
  }
}

NoiseDisplacement NoiseDisplacement::from_inner(double xb, const DropoutConfig& cfg) {
  cfg.validate();
  return NoiseDisplacement{xb * cfg.delta / (1.0 - cfg.delta), cfg.delta};
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double scalar_moment(int n, double xb, const DropoutConfig& cfg) {
  cfg.validate();
  if (n < 1) throw std::domain_error("scalar_moment: n must be >= 1");
  const double delta = cfg.delta;
  if (delta == 0.0) return 0.0;
  const double b = xb * delta / (1.0 - delta);
  if (cfg.scalar_drop_to_zero) {
    // two-point law {B w.p. 1-delta, -xb w.p. delta}
    return (1.0 - delta) * std::pow(b, n) + delta * std::pow(-xb, n);
  }
  return (1.0 - delta) * std::pow(b, n);
}

namespace {

McEstimate enumerate_masks(int d, double delta, double scale,
                           const std::vector<double>& contrib, double base,
                           int m, PartitionFamily family, bool regularizer) {
  const std::uint32_t total = 1u << d;
  double acc = 0.0;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    double noised = 0.0;
    for (int j = 0; j < d; ++j) {
      if (mask & (1u << j)) noised += scale * contrib[j];
    }
    const int kept = std::popcount(mask);
    const double weight = std::pow(1.0 - delta, kept) * std::pow(delta, d - kept);
    if (regularizer) {
      acc += weight * (partition_value(family, noised) - partition_value(family, base));
    } else {
      const double disp = noised - base;
      double power = 1.0;
      for (int i = 0; i < m; ++i) power *= disp;
      acc += weight * power;
    }
  }
  return McEstimate{acc, 0.0, static_cast<std::int64_t>(total)};
}

McEstimate sample_masks(int d, double delta, double scale,
                        const std::vector<double>& contrib, double base, int m,
                        PartitionFamily family, bool regularizer, std::uint64_t seed,
                        std::int64_t draws) {
  if (draws < 1) throw std::domain_error("Monte Carlo requires draws >= 1");
  const CounterRng rng{splitmix64(seed)};
  double sum = 0.0, sumsq = 0.0;
  for (std::int64_t i = 0; i < draws; ++i) {
    double noised = 0.0;
    for (int j = 0; j < d; ++j) {
      // per-(draw, coordinate) counter: value independent of loop scheduling
      if (!rng.bernoulli_at(static_cast<std::uint64_t>(i) * d + j, delta)) {
        noised += scale * contrib[j];
      }
    }
    double v;
    if (regularizer) {
      v = partition_value(family, noised) - partition_value(family, base);
    } else {
      const double disp = noised - base;
      v = 1.0;
      for (int k = 0; k < m; ++k) v *= disp;
    }
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / static_cast<double>(draws);
  const double var = std::max(0.0, sumsq / static_cast<double>(draws) - mean * mean);
  const double se = std::sqrt(var / static_cast<double>(draws));
  return McEstimate{mean, se, draws};
}

std::vector<double> contributions(std::span<const double> x, std::span<const double> beta) {
  if (x.size() != beta.size()) throw std::invalid_argument("dimension mismatch");
  std::vector<double> c(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) c[j] = x[j] * beta[j];
  return c;
}

MomentMode resolve(MomentMode mode, int d) {
  if (mode == MomentMode::Exact && d > kExactEnumerationMaxDim) {
    throw std::domain_error("exact enumeration refused for d=" + std::to_string(d) + " (max " +
                            std::to_string(kExactEnumerationMaxDim) + ")");
  }
  if (mode == MomentMode::Auto) {
    return d <= kExactEnumerationMaxDim ? MomentMode::Exact : MomentMode::MonteCarlo;
  }
  return mode;
}

}  // namespace

McEstimate coordinate_moment(int m, std::span<const double> x, std::span<const double> beta,
                             const DropoutConfig& cfg, MomentMode mode, std::uint64_t seed,
                             std::int64_t draws) {
  cfg.validate();
  if (cfg.model != NoiseModel::IndependentCoordinates) {
    throw std::domain_error("coordinate_moment: config must select IndependentCoordinates");
  }
  if (m < 1) throw std::domain_error("coordinate_moment: m must be >= 1");
  const auto contrib = contributions(x, beta);
  const int d = static_cast<int>(contrib.size());
  if (d < 1) throw std::domain_error("coordinate_moment: empty feature vector");
  double base = 0.0;
  for (double c : contrib) base += c;
  switch (resolve(mode, d)) {
    case MomentMode::Exact:
      return enumerate_masks(d, cfg.delta, cfg.scale(), contrib, base, m,
                             PartitionFamily::Logistic, /*regularizer=*/false);
    default:
      return sample_masks(d, cfg.delta, cfg.scale(), contrib, base, m,
                          PartitionFamily::Logistic, /*regularizer=*/false, seed, draws);
  }
}

McEstimate exact_regularizer(std::span<const double> x, std::span<const double> beta,
                             const DropoutConfig& cfg, PartitionFamily family, MomentMode mode,
                             std::uint64_t seed, std::int64_t draws) {
  cfg.validate();
  const double xb = dot(x, beta);
  if (cfg.model == NoiseModel::ScalarCoupling) {
    const double delta = cfg.delta;
    if (delta == 0.0) return {0.0, 0.0, 0};
    if (cfg.scalar_drop_to_zero) {
      const double noised = (1.0 - delta) * partition_value(family, xb / (1.0 - delta)) +
                            delta * partition_value(family, 0.0);
      return {noised - partition_value(family, xb), 0.0, 0};
    }
    const double r =
        (1.0 - delta) * (partition_value(family, xb / (1.0 - delta)) - partition_value(family, xb));
    return {r, 0.0, 0};
  }
  const auto contrib = contributions(x, beta);
  const int d = static_cast<int>(contrib.size());
  if (d < 1) throw std::domain_error("exact_regularizer: empty feature vector");
  switch (resolve(mode, d)) {
    case MomentMode::Exact:
      return enumerate_masks(d, cfg.delta, cfg.scale(), contrib, xb, 0, family,
                             /*regularizer=*/true);
    default:
      return sample_masks(d, cfg.delta, cfg.scale(), contrib, xb, 0, family,
                          /*regularizer=*/true, seed, draws);
  }
}

double variance_r2(std::span<const double> x, std::span<const double> beta,
                   const DropoutConfig& cfg, PartitionFamily family) {
  cfg.validate();
  const double xb = dot(x, beta);
  double second;
  if (cfg.model == NoiseModel::ScalarCoupling) {
    second = scalar_moment(2, xb, cfg);
  } else if (x.size() <= kExactEnumerationMaxDim) {
    second = coordinate_moment(2, x, beta, cfg).value;
  } else {
    // closed form for the independent model's second displacement moment;
    // equal to the 2^d enumeration for every d
    double acc = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) acc += x[j] * x[j] * beta[j] * beta[j];
    second = acc * cfg.delta / (1.0 - cfg.delta);
  }
  return 0.5 * partition_derivative(family, 2, xb) * second;
}

}  // namespace dropaudit
