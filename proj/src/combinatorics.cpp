#include "dropaudit/combinatorics.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

namespace dropaudit {

namespace {

void check_pair(int n, int k, int max_n, const char* who) {
  if (n < 1 || k < 1 || k > n) {
    throw std::domain_error(std::string(who) + ": require 1 <= k <= n, got n=" +
                            std::to_string(n) + " k=" + std::to_string(k));
  }
  if (n > max_n) {
    throw std::domain_error(std::string(who) + ": n=" + std::to_string(n) +
                            " exceeds table max_n=" + std::to_string(max_n));
  }
}

}  // namespace

StirlingTable::StirlingTable(int max_n) : max_n_(max_n) {
  if (max_n < 1) throw std::domain_error("StirlingTable: max_n must be >= 1");
  rows_.resize(max_n);
  for (int n = 1; n <= max_n; ++n) {
    auto& row = rows_[n - 1];
    row.assign(n, 0);
    row[0] = 1;       // S2(n,1)
    row[n - 1] = 1;   // S2(n,n)
    for (int k = 2; k < n; ++k) {
      row[k - 1] = BigInt(k) * rows_[n - 2][k - 1] + rows_[n - 2][k - 2];
    }
  }
  factorial_.assign(max_n + 1, 1);
  for (int n = 1; n <= max_n; ++n) factorial_[n] = factorial_[n - 1] * n;
}

const BigInt& StirlingTable::stirling2(int n, int k) const {
  check_pair(n, k, max_n_, "stirling2");
  return rows_[n - 1][k - 1];
}

BigInt StirlingTable::triangle(int n, int k) const {
  check_pair(n, k, max_n_, "triangle");
  return factorial_[k] * rows_[n - 1][k - 1];
}

const BigInt& StirlingTable::factorial(int n) const {
  if (n < 0 || n > max_n_) throw std::domain_error("factorial: out of table range");
  return factorial_[n];
}

namespace {
std::mutex g_table_mutex;
std::shared_ptr<const StirlingTable> g_table;  // grown by replacement
}  // namespace

std::shared_ptr<const StirlingTable> shared_stirling(int need_n) {
  std::lock_guard<std::mutex> lock(g_table_mutex);
  if (!g_table || g_table->max_n() < need_n) {
    int size = g_table ? g_table->max_n() : 64;
    while (size < need_n) size *= 2;
    g_table = std::make_shared<const StirlingTable>(std::max(size, 64));
  }
  return g_table;
}

BigInt stirling2(int n, int k) { return shared_stirling(std::max(n, 1))->stirling2(n, k); }

BigInt triangle(int n, int k) { return shared_stirling(std::max(n, 1))->triangle(n, k); }

double riemann_zeta(double s) {
  if (!(s >= 2.0)) throw std::domain_error("riemann_zeta: require s >= 2");
  Float100 sum = 1;
  for (int m = 2;; ++m) {
    const Float100 term = pow(Float100(m), -Float100(s));
    sum += term;
    if (term < Float100("1e-30")) break;
  }
  return static_cast<double>(sum);
}

double bernoulli_asymptotic(int two_k) {
  if (two_k < 2 || two_k % 2 != 0) {
    throw std::domain_error("bernoulli_asymptotic: argument must be even and >= 2");
  }
  const Float100 two_pi = 2 * acos(Float100(-1));
  Float100 fact = 1;
  for (int i = 2; i <= two_k; ++i) fact *= i;
  const Float100 value = 2 * fact * Float100(riemann_zeta(two_k)) / pow(two_pi, two_k);
  return static_cast<double>(value);
}

double alternating_stirling_sum(int n, double p) {
  if (n < 1) throw std::domain_error("alternating_stirling_sum: require n >= 1");
  auto table = shared_stirling(n);
  const Float300 pf(p);
  Float300 power = 1;
  Float300 sum = 0;
  for (int j = 1; j <= n; ++j) {
    power *= -pf;
    sum += power * Float300(table->triangle(n, j));
  }
  return static_cast<double>(sum);
}

}  // namespace dropaudit
