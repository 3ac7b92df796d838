#include "genram/ramsum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>

namespace genram {

namespace {

void require_positive(std::uint64_t m, std::uint64_t n, const char* what) {
  if (m == 0 || n == 0) throw std::invalid_argument(std::string(what) + ": arguments must be positive");
}

// gcd_AA with n already factorized.
std::uint64_t gcd_AA_factored(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t m,
                              const Factorization& n) {
  std::uint64_t g = 1;
  for (const auto& [p, k2] : n) {
    if (m % p != 0) continue;
    const unsigned k1 = valuation(m, p);
    const unsigned step = std::lcm(a1.tau(p, k1), a2.tau(p, k2));
    const unsigned j = std::min(k1, k2) / step * step;
    g *= ipow(p, j);
  }
  return g;
}

}  // namespace

std::uint64_t gcd_AA(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t m, std::uint64_t n) {
  require_positive(m, n, "gcd_AA");
  return gcd_AA_factored(a1, a2, m, factorize(n));
}

std::uint64_t gcd_k(const AFunctionSpec& a, std::span<const std::uint64_t> n) {
  if (n.empty()) throw std::invalid_argument("gcd_k: empty tuple");
  std::uint64_t common = 0;
  for (auto x : n) {
    if (x == 0) throw std::invalid_argument("gcd_k: arguments must be positive");
    common = std::gcd(common, x);
  }
  std::uint64_t g = 1;
  for (const auto& [p, unused] : factorize(common)) {
    unsigned step = 1;
    unsigned lowest = ~0U;
    for (auto x : n) {
      const unsigned k = valuation(x, p);
      step = std::lcm(step, a.tau(p, k));
      lowest = std::min(lowest, k);
    }
    g *= ipow(p, lowest / step * step);
  }
  return g;
}

std::int64_t ramanujan_C_i64(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t m,
                             const Factorization& n) {
  if (m == 0) throw std::invalid_argument("ramanujan_C: m must be positive");
  std::int64_t out = 1;
  for (const auto& [p, k] : n) {
    const unsigned r = a2.tau(p, k);
    const unsigned km = valuation(m, p);
    std::int64_t term = 0;
    if (a1.chain_contains(p, k, km)) term += static_cast<std::int64_t>(ipow(p, k));
    if (a1.chain_contains(p, k - r, km)) term -= static_cast<std::int64_t>(ipow(p, k - r));
    if (term == 0) return 0;
    out *= term;
  }
  return out;
}

ExactInt ramanujan_C(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t m, std::uint64_t n) {
  require_positive(m, n, "ramanujan_C");
  return ExactInt(ramanujan_C_i64(a1, a2, m, factorize(n)));
}

ExactRat von_sterneck_Phi(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t m, std::uint64_t n) {
  require_positive(m, n, "von_sterneck_Phi");
  const auto nf = factorize(n);
  const std::uint64_t g = gcd_AA_factored(a1, a2, m, nf);
  const auto qf = factorize(n / g);
  const int mu = mobius_A(a2, qf);
  if (mu == 0) return ExactRat(0);
  return ExactRat(ExactInt(totient_A_u64(a2, nf)) * mu, ExactInt(totient_A_u64(a2, qf)));
}

ExactInt sum_over_regular_divisors(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t m,
                                   std::uint64_t n) {
  require_positive(m, n, "sum_over_regular_divisors");
  ExactInt acc = 0;
  for (auto d : regular_divisors(a2, n)) acc += ramanujan_C_i64(a1, a2, m, factorize(d));
  return acc;
}

std::complex<double> trig_S(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t m, std::uint64_t n) {
  require_positive(m, n, "trig_S");
  const auto nf = factorize(n);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  std::complex<double> acc{0.0, 0.0};
  for (std::uint64_t k = 1; k <= n; ++k) {
    if (gcd_AA_factored(a1, a2, k, nf) != 1) continue;
    const auto residue = static_cast<std::uint64_t>(static_cast<unsigned __int128>(k) * m % n);
    const double angle = step * static_cast<double>(residue);
    acc += std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return acc;
}

bool OrthogonalityMatrix::is_scaled_identity() const {
  const std::size_t size = index.size();
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      if (at(i, j) != (i == j ? ExactInt(n) : ExactInt(0))) return false;
    }
  }
  return true;
}

OrthogonalityMatrix orthogonality_matrix(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("orthogonality_matrix: n must be positive");
  OrthogonalityMatrix out;
  out.n = n;
  out.index = regular_divisors(a2, n);
  const std::size_t size = out.index.size();

  std::vector<Factorization> factored;
  factored.reserve(size);
  for (auto d : out.index) factored.push_back(factorize(d));
  // table[i * size + j] = C(n / index[i], index[j])
  std::vector<std::int64_t> table(size * size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) table[i * size + j] = ramanujan_C_i64(a1, a2, n / out.index[i], factored[j]);
  }

  out.entries.assign(size * size, ExactInt(0));
  for (std::size_t delta = 0; delta < size; ++delta) {
    for (std::size_t gamma = 0; gamma < size; ++gamma) {
      ExactInt acc = 0;
      for (std::size_t d = 0; d < size; ++d) {
        acc += ExactInt(table[d * size + delta]) * table[gamma * size + d];
      }
      out.entries[delta * size + gamma] = std::move(acc);
    }
  }
  return out;
}

AbsSum abs_sum(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t m, std::uint64_t n) {
  require_positive(m, n, "abs_sum");
  AbsSum out;
  for (auto d : regular_divisors(a2, n)) out.value += ExactInt(std::abs(ramanujan_C_i64(a1, a2, m, factorize(d))));
  out.g = gcd_AA(a1, a2, m, n);
  out.predicted = ExactInt(out.g) << omega(n / out.g);
  out.order_holds = partial_le(a2, a1).order == Order::Le;
  return out;
}

ExactInt mobius_partial_sum(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t k, std::uint64_t n) {
  require_positive(k, n, "mobius_partial_sum");
  ExactInt acc = 0;
  for (const auto& [d, mu] : regular_divisors_with_mobius(a2, factorize(n))) {
    if (a1.contains(d, k)) acc += mu;
  }
  return acc;
}

std::optional<HolderWitness> find_holder_witness(const AFunctionSpec& a1, const AFunctionSpec& a2,
                                                 unsigned max_exponent) {
  std::set<std::uint64_t> primes{2, 3};
  for (auto p : a1.override_primes()) primes.insert(p);
  for (auto p : a2.override_primes()) primes.insert(p);

  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  for (auto p : primes) {
    for (unsigned k = 1; k <= max_exponent; ++k) {
      const unsigned r = a2.tau(p, k);
      for (unsigned j = k; j <= max_exponent; ++j) {
        if (!a1.chain_contains(p, k, j) || a1.chain_contains(p, k - r, j)) continue;
        std::uint64_t m = 1;
        bool fits = true;
        for (unsigned i = 0; i < j && fits; ++i) {
          if (m > kLimit / p) fits = false;
          m *= p;
        }
        if (!fits) break;
        const std::uint64_t n = ipow(p, k);
        HolderWitness w{m, {p, k}, ramanujan_C(a1, a2, m, n), von_sterneck_Phi(a1, a2, m, n)};
        if (ExactRat(w.ramanujan) != w.von_sterneck) return w;
      }
    }
  }
  return std::nullopt;
}

}  // namespace genram
