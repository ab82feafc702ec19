#pragma once

#include <memory>
#include <vector>

#include "dropaudit/numeric.hpp"

namespace dropaudit {

// Triangular DP table of Stirling numbers of the second kind.
//
// Recurrence: S2(n+1, k) = k * S2(n, k) + S2(n, k-1), with S2(n, 1) =
// S2(n, n) = 1. (Some write-ups print the multiplier as k!; the factor-k
// recurrence is the one consistent with T(n, k) = k! * S2(n, k) and is
// what this table uses.)
//
// Immutable after construction; concurrent reads are safe. Growing means
// building a new table (see shared_stirling).
class StirlingTable {
 public:
  explicit StirlingTable(int max_n);

  int max_n() const { return max_n_; }

  // S2(n, k), 1 <= k <= n <= max_n. Out-of-range arguments throw
  // std::domain_error; entries outside the triangle are never silently 0.
  const BigInt& stirling2(int n, int k) const;

  // T(n, k) = k! * S2(n, k), the "Triangle of numbers" (OEIS A019538).
  BigInt triangle(int n, int k) const;

  const BigInt& factorial(int n) const;

 private:
  int max_n_;
  std::vector<std::vector<BigInt>> rows_;  // rows_[n-1][k-1] = S2(n,k)
  std::vector<BigInt> factorial_;          // 0..max_n
};

// Process-wide cached table, grown on demand (default size 64). Growth
// replaces the table; callers keep the shared_ptr they were handed, so
// readers never observe a partially built table.
std::shared_ptr<const StirlingTable> shared_stirling(int need_n = 64);

// Convenience lookups through the shared table.
BigInt stirling2(int n, int k);
BigInt triangle(int n, int k);

// Riemann zeta by direct series summation, truncated when a term drops
// below 1e-30. Requires s >= 2 (fast convergence); smaller s throws.
double riemann_zeta(double s);

// 2 * (2k)! * zeta(2k) / (2*pi)^(2k): the classical asymptotic magnitude
// for even-index Bernoulli numbers. two_k must be even and >= 2.
double bernoulli_asymptotic(int two_k);

// Sum_{j=1..n} (-p)^j * T(n, j) with exact integer coefficients, evaluated
// in high precision (the alternating sum cancels savagely for p near 1).
double alternating_stirling_sum(int n, double p);

}  // namespace dropaudit
