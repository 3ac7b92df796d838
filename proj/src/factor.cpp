#include "genram/factor.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace genram {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

}  // namespace

std::uint64_t PrimePower::value() const { return ipow(p, k); }

Factorization::Factorization(std::vector<PrimePower> factors) : factors_(std::move(factors)) {
  std::uint64_t prev = 0;
  for (const auto& f : factors_) {
    if (f.k == 0) throw std::invalid_argument("factorization: zero exponent");
    if (f.p <= prev) throw std::invalid_argument("factorization: primes not strictly increasing");
    if (!is_prime(f.p)) throw std::invalid_argument("factorization: " + std::to_string(f.p) + " is not prime");
    const std::uint64_t pk = f.value();
    if (value_ > std::numeric_limits<std::uint64_t>::max() / pk) {
      throw std::overflow_error("factorization: value exceeds 64 bits");
    }
    value_ *= pk;
    prev = f.p;
  }
}

Factorization::Factorization(std::vector<PrimePower> factors, Trusted) : factors_(std::move(factors)) {
  for (const auto& f : factors_) value_ *= f.value();
}

unsigned Factorization::valuation(std::uint64_t p) const {
  for (const auto& f : factors_) {
    if (f.p == p) return f.k;
    if (f.p > p) break;
  }
  return 0;
}

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  std::vector<PrimePower> out;
  auto strip = [&](std::uint64_t p) {
    unsigned k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    if (k > 0) out.push_back({p, k});
  };
  strip(2);
  strip(3);
  // 6k +- 1 wheel
  for (std::uint64_t p = 5; p <= n / p; p += 6) {
    strip(p);
    strip(p + 2);
  }
  if (n > 1) out.push_back({n, 1});
  return Factorization(std::move(out), Factorization::Trusted{});
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // These witnesses are deterministic below 2^64.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

unsigned valuation(std::uint64_t n, std::uint64_t p) {
  if (n == 0) throw std::invalid_argument("valuation: n must be positive");
  unsigned k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  return k;
}

std::uint64_t ipow(std::uint64_t p, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / p) throw std::overflow_error("ipow: overflow");
    r *= p;
  }
  return r;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t lcm(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  const std::uint64_t q = a / std::gcd(a, b);
  if (q > std::numeric_limits<std::uint64_t>::max() / b) throw std::overflow_error("lcm: overflow");
  return q * b;
}

std::size_t omega(std::uint64_t n) { return factorize(n).omega(); }

FactorSieve::FactorSieve(std::uint64_t limit) : limit_(limit), spf_(limit + 1, 0) {
  if (limit > std::numeric_limits<std::uint32_t>::max()) throw std::invalid_argument("FactorSieve: limit too large");
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      primes_.push_back(i);
      for (std::uint64_t j = i; j <= limit; j += i) {
        if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
      }
    }
  }
}

Factorization FactorSieve::factorize(std::uint64_t n) const {
  if (n == 0 || n > limit_) throw std::out_of_range("FactorSieve: argument outside sieve range");
  std::vector<PrimePower> out;
  while (n > 1) {
    const std::uint64_t p = spf_[n];
    unsigned k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    out.push_back({p, k});
  }
  return Factorization(std::move(out), Factorization::Trusted{});
}

}  // namespace genram
