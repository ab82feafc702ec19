#include "dropaudit/partition.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>

#include "dropaudit/combinatorics.hpp"

namespace dropaudit {

double log_partition(double z) {
  if (!std::isfinite(z)) throw std::domain_error("log_partition: non-finite input");
  if (z > 0.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

EvalPoint EvalPoint::from_z(double z) { return EvalPoint{z, sigmoid(z)}; }

DerivativePoly derivative_recurrence(int order) {
  if (order < 1) throw std::domain_error("derivative_recurrence: order must be >= 1");
  DerivativePoly poly{1, {BigInt(1)}};
  for (int k = 1; k < order; ++k) {
    std::vector<BigInt> next(poly.coeffs.size() + 1, 0);
    for (std::size_t idx = 0; idx < poly.coeffs.size(); ++idx) {
      const BigInt scaled = BigInt(static_cast<int>(idx) + 1) * poly.coeffs[idx];
      next[idx] += scaled;
      next[idx + 1] -= scaled;
    }
    poly.coeffs = std::move(next);
    poly.order = k + 1;
  }
  return poly;
}

DerivativePoly derivative_theorem1(int k) {
  if (k < 1) throw std::domain_error("derivative_theorem1: k must be >= 1");
  auto table = shared_stirling(k);
  // p' * sum_j (-1)^{j-1} p^{j-1} T(k,j), with p' = p - p^2, collected on
  // powers p^j .. p^{j+1}.
  std::vector<BigInt> coeffs(k + 1, 0);
  for (int j = 1; j <= k; ++j) {
    BigInt t = table->triangle(k, j);
    if (j % 2 == 0) t = -t;
    coeffs[j - 1] += t;   // p^{j-1} * p
    coeffs[j] -= t;       // p^{j-1} * (-p^2)
  }
  return DerivativePoly{k + 1, std::move(coeffs)};
}

namespace {

std::mutex g_poly_mutex;
std::shared_ptr<const std::vector<DerivativePoly>> g_polys;

template <typename F>
struct Evaluation {
  F value;
  F magnitude;  // sum_j |c_j| p^j, the cancellation yardstick
};

template <typename F>
Evaluation<F> horner_eval(const DerivativePoly& poly, const F& p) {
  F value = 0;
  F magnitude = 0;
  for (int j = poly.order; j >= 1; --j) {
    const F c(poly.coeffs[j - 1]);
    value = value * p + c;
    magnitude = magnitude * p + abs(c);
  }
  return {value * p, magnitude * p};
}

template <typename F>
F sigmoid_hp(double z) {
  if (z >= 0.0) return 1 / (1 + exp(F(-z)));
  const F e = exp(F(z));
  return e / (1 + e);
}

// Values whose certified bound sits below this floor are exact for every
// downstream purpose (the polynomials evaluate to exact dyadic zeros at
// p = 1/2, where magnitude * eps stays positive).
constexpr double kAbsoluteFloor = 1e-280;

template <typename F>
bool certified(const Evaluation<F>& ev, int order, double* value, double* bound) {
  const double eps = static_cast<double>(std::numeric_limits<F>::epsilon());
  *value = static_cast<double>(ev.value);
  *bound = static_cast<double>(ev.magnitude) * eps * 2.0 * (order + 1);
  return *bound <= std::max(std::fabs(*value) * 1e-3, kAbsoluteFloor);
}

}  // namespace

std::shared_ptr<const std::vector<DerivativePoly>> derivative_table(int max_order) {
  std::lock_guard<std::mutex> lock(g_poly_mutex);
  if (!g_polys || static_cast<int>(g_polys->size()) < max_order) {
    int size = g_polys ? static_cast<int>(g_polys->size()) : 32;
    while (size < max_order) size *= 2;
    auto polys = std::make_shared<std::vector<DerivativePoly>>();
    polys->reserve(size);
    DerivativePoly poly{1, {BigInt(1)}};
    polys->push_back(poly);
    for (int k = 2; k <= size; ++k) {
      std::vector<BigInt> next(poly.coeffs.size() + 1, 0);
      for (std::size_t idx = 0; idx < poly.coeffs.size(); ++idx) {
        const BigInt scaled = BigInt(static_cast<int>(idx) + 1) * poly.coeffs[idx];
        next[idx] += scaled;
        next[idx + 1] -= scaled;
      }
      poly = DerivativePoly{k, std::move(next)};
      polys->push_back(poly);
    }
    g_polys = polys;
  }
  return g_polys;
}

EvalResult eval_derivative(const DerivativePoly& poly, const EvalPoint& at) {
  if (!(at.p > 0.0) || !(at.p < 1.0)) {
    throw std::domain_error("eval_derivative: p must lie strictly in (0,1)");
  }
  double value = 0.0, bound = 0.0;
  if (poly.order <= 20) {
    const auto ev = horner_eval<double>(poly, at.p);
    if (certified(ev, poly.order, &value, &bound)) return {value, bound};
  }
  {
    const auto ev = horner_eval<Float100>(poly, sigmoid_hp<Float100>(at.z));
    if (certified(ev, poly.order, &value, &bound)) return {value, bound};
  }
  {
    const auto ev = horner_eval<Float300>(poly, sigmoid_hp<Float300>(at.z));
    if (certified(ev, poly.order, &value, &bound)) return {value, bound};
  }
  throw PrecisionExhausted("eval_derivative: cancellation exceeds top precision tier at order " +
                           std::to_string(poly.order));
}

std::vector<Float300> scaled_derivatives(double z, int max_order) {
  if (max_order < 1) throw std::domain_error("scaled_derivatives: max_order must be >= 1");
  auto polys = derivative_table(max_order);
  const Float300 p = sigmoid_hp<Float300>(z);
  const double eps = static_cast<double>(std::numeric_limits<Float300>::epsilon());
  std::vector<Float300> out;
  out.reserve(max_order);
  Float300 factorial = 1;
  for (int k = 1; k <= max_order; ++k) {
    factorial *= k;
    const auto ev = horner_eval<Float300>((*polys)[k - 1], p);
    const Float300 bound = ev.magnitude * eps * 2 * (k + 1);
    if (bound > abs(ev.value) * Float300("1e-3") && bound > Float300(kAbsoluteFloor)) {
      throw PrecisionExhausted("scaled_derivatives: cancellation destroys order " +
                               std::to_string(k) + " at z=" + std::to_string(z));
    }
    out.push_back(ev.value / factorial);
  }
  return out;
}

double partition_value(PartitionFamily family, double z) {
  if (family == PartitionFamily::LinearGaussian) return 0.5 * z * z;
  return log_partition(z);
}

double partition_mean(PartitionFamily family, double z) {
  if (family == PartitionFamily::LinearGaussian) return z;
  return sigmoid(z);
}

double partition_derivative(PartitionFamily family, int order, double z) {
  if (order < 1) throw std::domain_error("partition_derivative: order must be >= 1");
  if (family == PartitionFamily::LinearGaussian) {
    if (order == 1) return z;
    return order == 2 ? 1.0 : 0.0;
  }
  auto polys = derivative_table(order);
  return eval_derivative((*polys)[order - 1], EvalPoint::from_z(z)).value;
}

}  // namespace dropaudit
