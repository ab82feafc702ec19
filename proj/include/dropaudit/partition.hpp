#pragma once

#include <memory>
#include <vector>

#include "dropaudit/numeric.hpp"

namespace dropaudit {

// A^{(k)}(z) written as an exact integer polynomial in p = sigmoid(z):
// A^{(k)}(z) = sum_j coeffs[j-1] * p^j. `order` is the TRUE derivative
// order of A = log(1 + e^z). Note the closed form in derivative_theorem1
// is indexed one lower: its A_k is the (k+1)-th true derivative, because
// that derivation starts from A_0 = p while A' = p.
struct DerivativePoly {
  int order = 0;
  std::vector<BigInt> coeffs;  // c_1..c_order

  bool operator==(const DerivativePoly&) const = default;
};

// log(1 + e^z), evaluated stably on both branches. Rejects non-finite z.
double log_partition(double z);

// 1 / (1 + e^{-z}), two-branch form so sigmoid(-z) == 1 - sigmoid(z) holds
// to ulp scale.
double sigmoid(double z);

// Independent oracle route: D_1 = [1] (A' = p), and formal differentiation
// D_{k+1}(p) = sum_j j*c_j*(p^j - p^{j+1}), using only dA/dz = p and
// dp/dz = p(1-p). Exact integer arithmetic throughout.
DerivativePoly derivative_recurrence(int order);

// Closed-form route: expands p' * sum_{j=1..k} (-1)^{j-1} p^{j-1} T(k,j)
// with p' = p - p^2. The result is the (k+1)-th true derivative of A;
// the returned poly carries order = k + 1.
DerivativePoly derivative_theorem1(int k);

// Point at which derivatives are evaluated. High-precision paths recompute
// p from z at working precision, since double rounds sigmoid(z) to exactly
// 1.0 past |z| ~ 36 and the polynomials cancel to 0 there.
struct EvalPoint {
  double z = 0.0;
  double p = 0.5;

  static EvalPoint from_z(double z);
};

struct EvalResult {
  double value = 0.0;
  double error_bound = 0.0;  // abs bound from coefficient magnitudes x precision
};

// Cancellation-guarded Horner evaluation. Orders <= 20 are tried in native
// doubles first; any order whose bound fails the |value|*1e-3 test escalates
// through the 100- and 300-digit tiers and finally throws PrecisionExhausted.
EvalResult eval_derivative(const DerivativePoly& poly, const EvalPoint& at);

// A^{(k)}(z) / k! for k = 1..max_order in one cancellation-guarded sweep,
// kept in extended precision for the series diagnostics (the intermediate
// magnitudes overflow doubles long before the terms of interest do).
std::vector<Float300> scaled_derivatives(double z, int max_order);

// The two partition families the experiments use. LinearGaussian is
// A(z) = z^2/2 (its third and higher derivatives vanish identically,
// which is what makes the quadratic penalty exact in that family).
enum class PartitionFamily { Logistic, LinearGaussian };

double partition_value(PartitionFamily family, double z);
double partition_mean(PartitionFamily family, double z);  // A'(z)
double partition_derivative(PartitionFamily family, int order, double z);

// Cached derivative polynomials c_1..c_k for orders 1..max_order.
std::shared_ptr<const std::vector<DerivativePoly>> derivative_table(int max_order);

}  // namespace dropaudit
