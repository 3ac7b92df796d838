#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace genram {

/// p^k with p prime.
struct PrimePower {
  std::uint64_t p = 2;
  unsigned k = 0;

  std::uint64_t value() const;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Canonical prime-power decomposition: strictly increasing primes, every
/// exponent >= 1, empty for 1.
class Factorization {
 public:
  Factorization() = default;
  /// Takes factors as given; throws std::invalid_argument if they are not canonical.
  explicit Factorization(std::vector<PrimePower> factors);

  std::span<const PrimePower> factors() const { return factors_; }
  std::uint64_t value() const { return value_; }
  std::size_t omega() const { return factors_.size(); }
  /// Exponent of p in the value, 0 when p does not divide it.
  unsigned valuation(std::uint64_t p) const;
  bool empty() const { return factors_.empty(); }

  auto begin() const { return factors_.begin(); }
  auto end() const { return factors_.end(); }

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  struct Trusted {};
  Factorization(std::vector<PrimePower> factors, Trusted);

  friend Factorization factorize(std::uint64_t n);
  friend class FactorSieve;

  std::vector<PrimePower> factors_;
  std::uint64_t value_ = 1;
};

/// Trial division; throws std::invalid_argument for n == 0.
Factorization factorize(std::uint64_t n);

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(std::uint64_t n);

/// Exponent of p in n (n >= 1, p >= 2).
unsigned valuation(std::uint64_t n, std::uint64_t p);

/// Checked p^k; throws std::overflow_error past 2^64.
std::uint64_t ipow(std::uint64_t p, unsigned k);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
/// Throws std::overflow_error if the result does not fit.
std::uint64_t lcm(std::uint64_t a, std::uint64_t b);

/// Number of distinct prime factors; omega(1) == 0.
std::size_t omega(std::uint64_t n);

/// Smallest-prime-factor table for bulk factorization of 1..limit.
class FactorSieve {
 public:
  explicit FactorSieve(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  /// Requires 1 <= n <= limit().
  Factorization factorize(std::uint64_t n) const;
  const std::vector<std::uint64_t>& primes() const { return primes_; }

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint64_t> primes_;
};

}  // namespace genram
