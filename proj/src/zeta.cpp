#include "genram/zeta.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "genram/factor.hpp"
#include "genram/summation.hpp"

namespace genram {

namespace {

constexpr int kHead = 20;

// B_{2j} / (2j)! for j = 1..10
constexpr std::array<double, 10> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
};

int classical_mobius(std::uint64_t n) {
  int mu = 1;
  for (const auto& [p, k] : factorize(n)) {
    if (k > 1) return 0;
    mu = -mu;
  }
  return mu;
}

}  // namespace

double zeta_minus_one(double s) {
  if (!(s > 1.0)) throw std::domain_error("zeta: requires s > 1");
  const double n = kHead;
  // Small terms first.
  CompensatedSum acc;
  double rising = s;  // s (s+1) ... (s+2j-2)
  double power = std::pow(n, -s - 1.0);
  std::array<double, kBernoulliOverFactorial.size()> corrections{};
  for (std::size_t j = 0; j < corrections.size(); ++j) {
    corrections[j] = kBernoulliOverFactorial[j] * rising * power;
    rising *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
    power /= n * n;
  }
  for (auto it = corrections.rbegin(); it != corrections.rend(); ++it) acc.add(*it);
  acc.add(std::pow(n, -s) / 2.0);
  acc.add(std::pow(n, 1.0 - s) / (s - 1.0));
  for (int i = kHead - 1; i >= 2; --i) acc.add(std::pow(static_cast<double>(i), -s));
  return acc.value();
}

double zeta(double s) { return 1.0 + zeta_minus_one(s); }

double prime_zeta(double s) {
  if (!(s > 1.0)) throw std::domain_error("prime_zeta: requires s > 1");
  CompensatedSum acc;
  for (std::uint64_t n = 1;; ++n) {
    const double ns = static_cast<double>(n) * s;
    // log zeta(ns) < 2^(1-ns) once ns is large.
    if (n > 1 && ns > 64.0) break;
    const int mu = classical_mobius(n);
    if (mu == 0) continue;
    acc.add(mu * std::log1p(zeta_minus_one(ns)) / static_cast<double>(n));
  }
  return acc.value();
}

double prime_zeta_tail(double s, std::uint64_t cutoff) {
  if (!(s > 1.0)) throw std::domain_error("prime_zeta_tail: requires s > 1");
  CompensatedSum head;
  if (cutoff >= 2) {
    const auto primes = FactorSieve(cutoff).primes();
    for (auto it = primes.rbegin(); it != primes.rend(); ++it) head.add(std::pow(static_cast<double>(*it), -s));
  }
  return std::max(0.0, prime_zeta(s) - head.value());
}

}  // namespace genram
