#pragma once

// The two-parameter Ramanujan sum
//
//   C_{(A1,A2)}(m, n) = sum_{d in A1(m) ∩ A2(n)} d * mu_{A2}(n / d)
//
// and the functions that travel with it: the generalized gcd, the Von
// Sterneck analogue Phi, the trigonometric sum S, the orthogonality matrix,
// the absolute-sum bound and the Möbius partial sum.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "genram/afunc.hpp"
#include "genram/exact.hpp"
#include "genram/factor.hpp"

namespace genram {

/// max(A1(m) ∩ A2(n)), evaluated prime by prime.
std::uint64_t gcd_AA(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t m, std::uint64_t n);

/// max(A(n1) ∩ ... ∩ A(nk)).
std::uint64_t gcd_k(const AFunctionSpec& a, std::span<const std::uint64_t> n);

/// Product over p^k || n of  [p^k in A1(m)] p^k - [p^(k-r) in A1(m)] p^(k-r),
/// r = tau_{A2}(p^k). |C| never exceeds the p-parts of m it touches, so
/// int64 is exact for every 64-bit m.
std::int64_t ramanujan_C_i64(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t m, const Factorization& n);
ExactInt ramanujan_C(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t m, std::uint64_t n);

/// phi_{A2}(n) mu_{A2}(n/g) / phi_{A2}(n/g) with g = gcd_AA(m, n). Exactly 0
/// whenever mu_{A2}(n/g) vanishes.
ExactRat von_sterneck_Phi(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t m, std::uint64_t n);

/// sum_{d in A2(n)} C(m, d); equals n when n in A1(m), else 0.
ExactInt sum_over_regular_divisors(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t m,
                                   std::uint64_t n);

/// sum_{1 <= k <= n, gcd_AA(k, n) = 1} exp(2 pi i k m / n), accumulated in
/// index order.
std::complex<double> trig_S(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t m, std::uint64_t n);

struct OrthogonalityMatrix {
  std::uint64_t n = 1;
  std::vector<std::uint64_t> index;  // A2(n), ascending
  std::vector<ExactInt> entries;     // row-major, rows by delta, columns by gamma

  const ExactInt& at(std::size_t delta_row, std::size_t gamma_col) const {
    return entries[delta_row * index.size() + gamma_col];
  }
  bool is_scaled_identity() const;
};

/// Entry (delta, gamma) = sum_{d in A2(n)} C(n/d, delta) C(n/gamma, d).
OrthogonalityMatrix orthogonality_matrix(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t n);

struct AbsSum {
  ExactInt value;      // sum_{d in A2(n)} |C(m, d)|
  ExactInt predicted;  // 2^omega(n/g) g
  std::uint64_t g = 1;
  /// False when A2 <= A1 does not hold; the identity is then not guaranteed.
  bool order_holds = true;
};

AbsSum abs_sum(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t m, std::uint64_t n);

/// sum_{d in A1(k) ∩ A2(n)} mu_{A2}(d).
ExactInt mobius_partial_sum(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t k, std::uint64_t n);

struct HolderWitness {
  std::uint64_t m = 1;
  PrimePower n;
  ExactInt ramanujan;
  ExactRat von_sterneck;
};

/// Searches m = p^j, n = p^k (k <= j <= max_exponent) with p^k in A1(m) and
/// p^(k-r) not in A1(m), r = tau_{A2}(p^k), for a point where C != Phi.
/// Candidate primes are the override primes of both specs plus 2 and 3.
std::optional<HolderWitness> find_holder_witness(const AFunctionSpec& a1, const AFunctionSpec& a2,
                                                 unsigned max_exponent = 24);

}  // namespace genram
