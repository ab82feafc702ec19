#pragma once

#include <span>
#include <string>
#include <vector>

#include "dropaudit/noise.hpp"

namespace dropaudit {

enum class SeriesVerdict { Converged, Diverging, Inconclusive };

std::string to_string(SeriesVerdict v);

// Trace of the Taylor expansion of R at one (x.beta, delta) point under the
// scalar-coupling law. Terms are recorded from order 1: the scalar law is
// biased (E[Z] = x.beta * delta != 0), so the order-1 term is a real part of
// the expansion of E[A(x.beta + Z)] - A(x.beta) and the partial sums only
// reach the exact regularizer with it included. The order-k penalty R_k that
// the training code uses still starts at order 2 (see rk_penalty).
struct SeriesDiagnostics {
  double expansion_point = 0.0;  // x.beta
  double displacement = 0.0;     // |B| = |x.beta| * delta/(1-delta)
  int first_order = 1;
  std::vector<double> terms;         // t_{first_order}..t_K
  std::vector<double> partial_sums;  // running sums, same indexing
  std::vector<double> root_test;     // |A^{(k)}(z)/k!|^{1/k}, k = 1..K
  SeriesVerdict verdict = SeriesVerdict::Inconclusive;
  double tolerance = 1e-9;
  // Converged: the order at which both trailing deltas sank below tolerance.
  // Diverging: onset of the final run of strictly growing |t_k|.
  int verdict_order = 0;

  double limit() const { return partial_sums.empty() ? 0.0 : partial_sums.back(); }
  double term_at(int order) const { return terms.at(order - first_order); }
  double partial_sum_at(int order) const { return partial_sums.at(order - first_order); }
};

// Order-k polynomial penalty R_k = sum_{j=2..k} A^{(j)}(x.beta) E[Delta^j]/j!.
// Moments come from the configured noise model; derivative factors are
// evaluated in extended precision and each term is rounded to double, so
// rk_penalty(2) is bit-identical to variance_r2.
double rk_penalty(int k, std::span<const double> x, std::span<const double> beta,
                  const DropoutConfig& cfg, PartitionFamily family = PartitionFamily::Logistic);

// Full series trace up to max_order (>= 12) under ScalarCoupling.
// Converged needs the last two |S_k - S_{k-1}| below tolerance; Diverging
// needs |t_k| strictly increasing across the final 10 recorded orders;
// everything else is Inconclusive (a valid outcome, not an error).
SeriesDiagnostics diagnose_series(double xb, const DropoutConfig& cfg, int max_order,
                                  double tolerance = 1e-9);

struct RadiusEstimate {
  double z = 0.0;
  int max_order = 0;
  std::vector<double> root_test;  // k = 1..max_order
  double radius = 0.0;            // 1 / (running max over the tail window)
  int window_begin = 0;           // first order inside the tail window
};

// Root-test radius estimator: 1 over the running maximum of
// |A^{(k)}(z)/k!|^{1/k} across the last third of recorded orders (>= 10).
// The estimate is reported for comparison with the claimed 2*pi radius,
// never asserted against it.
RadiusEstimate estimate_radius(double xb, int max_order);

// Rescales x so that max_j |x_j| * cap == 2*pi / d. With every |beta_j|
// <= cap this pins sum_j |x_j beta_j| below 2*pi. Zero vectors pass through.
std::vector<double> feature_scale_bound(std::span<const double> x, double cap);

}  // namespace dropaudit
