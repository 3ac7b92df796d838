#pragma once

#include <cstdint>

namespace genram {

/// Riemann zeta for real s > 1 by Euler-Maclaurin summation with N = 20
/// explicit terms and ten Bernoulli corrections. For real s the remainder
/// is bounded by the first omitted correction term, which keeps the
/// relative error below 1e-13 on the whole half-line. Throws
/// std::domain_error for s <= 1.
double zeta(double s);

/// zeta(s) - 1 without the cancellation of the naive difference.
double zeta_minus_one(double s);

/// Prime zeta P(s) = sum_p p^-s for s > 1, via
/// P(s) = sum_{n >= 1} mu(n)/n log zeta(n s).
double prime_zeta(double s);

/// sum_{p > cutoff} p^-s, as P(s) minus the explicit head. Accurate to
/// about 1e-15 in absolute terms.
double prime_zeta_tail(double s, std::uint64_t cutoff);

}  // namespace genram
