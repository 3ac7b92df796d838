#pragma once

// Brute-force reference implementations. They read the type function of a
// spec but otherwise share nothing with the fast paths except factorize().

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "genram/afunc.hpp"
#include "genram/exact.hpp"

namespace genram::oracle {

enum class Method { Counting, ExpSum, Exhaustive, Filter };
std::string to_string(Method method);

struct OracleResult {
  ExactInt value;
  Method method = Method::Exhaustive;
};

/// An oracle could not produce a trustworthy value.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kCostGuard = 1000000;

/// Every d | n (by trial division) whose p-adic exponents lie on the chain
/// {0, t, 2t, ..., k}, t = tau(p, k). Throws std::domain_error past the cost guard.
std::vector<std::uint64_t> divisors_by_filter(const AFunctionSpec& spec, std::uint64_t n);

/// mu_A through mu(1) = 1 and mu(x) = -sum_{d in A(x), d < x} mu(d).
int mobius_by_recursion(const AFunctionSpec& spec, std::uint64_t n);

/// |{x <= n : D(x) ∩ A(n) = {1}}|, testing every divisor of each x.
OracleResult totient_by_counting(const AFunctionSpec& spec, std::uint64_t n);

/// Real part of sum_{k <= n, gcd_{(D,A2)}(k,n) = 1} e^(2 pi i k m / n), rounded.
/// Throws OracleError when the sum is more than 1e-6 away from an integer.
OracleResult ramanujan_by_exp_sum(const AFunctionSpec& a2, std::uint64_t m, std::uint64_t n);

/// max(A1(m) ∩ A2(n)) by intersecting filtered divisor lists.
OracleResult gcd_by_search(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t m, std::uint64_t n);

/// sum_{d in A1(m) ∩ A2(n)} d mu_{A2}(n/d) by literal enumeration.
OracleResult direct_C(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t m, std::uint64_t n);

/// Filtered divisor lists and recursive Möbius values for 1..limit, for sweeps.
class Table {
 public:
  Table(const AFunctionSpec& spec, std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  const std::vector<std::uint64_t>& divisors(std::uint64_t n) const { return divisors_.at(n); }
  int mobius(std::uint64_t n) const { return mobius_.at(n); }
  bool contains(std::uint64_t d, std::uint64_t n) const;

 private:
  std::uint64_t limit_;
  std::vector<std::vector<std::uint64_t>> divisors_;
  std::vector<int> mobius_;
};

/// direct_C against precomputed tables; m and n must lie within their limits.
ExactInt direct_C(const Table& a1, const Table& a2, std::uint64_t m, std::uint64_t n);

}  // namespace genram::oracle
