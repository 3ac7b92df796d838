#include "genram/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

namespace genram::oracle {

namespace {

void guard(std::uint64_t n, std::uint64_t limit, const char* what) {
  if (n == 0) throw std::invalid_argument(std::string(what) + ": argument must be positive");
  if (n > limit) throw std::domain_error(std::string(what) + ": argument exceeds the cost guard");
}

bool on_chain(const AFunctionSpec& spec, const Factorization& nf, std::uint64_t d) {
  for (const auto& [p, k] : nf) {
    unsigned j = 0;
    while (d % p == 0) {
      d /= p;
      ++j;
    }
    if (j % spec.tau(p, k) != 0) return false;
  }
  return true;
}

int mobius_memo(const AFunctionSpec& spec, std::uint64_t n, std::unordered_map<std::uint64_t, int>& memo) {
  if (n == 1) return 1;
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  int acc = 0;
  for (auto d : divisors_by_filter(spec, n)) {
    if (d != n) acc -= mobius_memo(spec, d, memo);
  }
  memo.emplace(n, acc);
  return acc;
}

bool sorted_contains(const std::vector<std::uint64_t>& v, std::uint64_t x) {
  return std::binary_search(v.begin(), v.end(), x);
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::Counting: return "COUNTING";
    case Method::ExpSum: return "EXP_SUM";
    case Method::Exhaustive: return "EXHAUSTIVE";
    case Method::Filter: return "FILTER";
  }
  return "UNKNOWN";
}

std::vector<std::uint64_t> divisors_by_filter(const AFunctionSpec& spec, std::uint64_t n) {
  guard(n, kCostGuard, "divisors_by_filter");
  const auto nf = factorize(n);
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    if (on_chain(spec, nf, d)) out.push_back(d);
    const std::uint64_t e = n / d;
    if (e != d && on_chain(spec, nf, e)) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int mobius_by_recursion(const AFunctionSpec& spec, std::uint64_t n) {
  std::unordered_map<std::uint64_t, int> memo;
  return mobius_memo(spec, n, memo);
}

OracleResult totient_by_counting(const AFunctionSpec& spec, std::uint64_t n) {
  guard(n, kCostGuard, "totient_by_counting");
  std::vector<char> in_a(n + 1, 0);
  for (auto d : divisors_by_filter(spec, n)) in_a[d] = 1;
  std::uint64_t count = 0;
  for (std::uint64_t x = 1; x <= n; ++x) {
    bool clean = true;
    for (std::uint64_t d = 1; d * d <= x && clean; ++d) {
      if (x % d != 0) continue;
      const std::uint64_t e = x / d;
      if ((d > 1 && d <= n && in_a[d]) || (e > 1 && e <= n && in_a[e])) clean = false;
    }
    if (clean) ++count;
  }
  return {ExactInt(count), Method::Counting};
}

OracleResult ramanujan_by_exp_sum(const AFunctionSpec& a2, std::uint64_t m, std::uint64_t n) {
  guard(n, 100000, "ramanujan_by_exp_sum");
  if (m == 0) throw std::invalid_argument("ramanujan_by_exp_sum: m must be positive");
  const auto a2n = divisors_by_filter(a2, n);
  std::complex<double> acc{0.0, 0.0};
  for (std::uint64_t k = 1; k <= n; ++k) {
    std::uint64_t g = 1;
    for (auto d : a2n) {
      if (k % d == 0) g = d;
    }
    if (g != 1) continue;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((k % n) * (m % n) % n) / static_cast<double>(n);
    acc += std::polar(1.0, angle);
  }
  const double nearest = std::round(acc.real());
  if (std::fabs(acc.real() - nearest) >= 1e-6 || std::fabs(acc.imag()) >= 1e-6) {
    throw OracleError("ramanujan_by_exp_sum: sum is not within 1e-6 of an integer");
  }
  return {ExactInt(static_cast<long long>(nearest)), Method::ExpSum};
}

OracleResult gcd_by_search(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t m, std::uint64_t n) {
  const auto left = divisors_by_filter(a1, m);
  std::uint64_t best = 1;
  for (auto d : divisors_by_filter(a2, n)) {
    if (sorted_contains(left, d)) best = std::max(best, d);
  }
  return {ExactInt(best), Method::Exhaustive};
}

OracleResult direct_C(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t m, std::uint64_t n) {
  const auto left = divisors_by_filter(a1, m);
  std::unordered_map<std::uint64_t, int> memo;
  ExactInt acc = 0;
  for (auto d : divisors_by_filter(a2, n)) {
    if (!sorted_contains(left, d)) continue;
    acc += ExactInt(d) * mobius_memo(a2, n / d, memo);
  }
  return {acc, Method::Exhaustive};
}

Table::Table(const AFunctionSpec& spec, std::uint64_t limit)
    : limit_(limit), divisors_(limit + 1), mobius_(limit + 1, 0) {
  guard(limit, kCostGuard, "oracle::Table");
  for (std::uint64_t n = 1; n <= limit; ++n) {
    divisors_[n] = divisors_by_filter(spec, n);
    int acc = n == 1 ? 1 : 0;
    for (auto d : divisors_[n]) {
      if (d != n) acc -= mobius_[d];
    }
    mobius_[n] = acc;
  }
}

bool Table::contains(std::uint64_t d, std::uint64_t n) const { return sorted_contains(divisors_.at(n), d); }

ExactInt direct_C(const Table& a1, const Table& a2, std::uint64_t m, std::uint64_t n) {
  ExactInt acc = 0;
  for (auto d : a2.divisors(n)) {
    if (a1.contains(d, m)) acc += ExactInt(d) * a2.mobius(n / d);
  }
  return acc;
}

}  // namespace genram::oracle
