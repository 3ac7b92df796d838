#pragma once

// Truncated Ramanujan-type expansions
//
//   f(n1, ..., nk) = sum_q a(q1, ..., qk) C_{(A1,A2)}(n1, q1) ... C_{(A1,A2)}(nk, qk)
//
// with coefficients from the general inverse-transform formula, from the
// gcd form f = g(gcd_{A1}(n1, ..., nk)), or from the closed forms for
// sigma_A^s and phi_A^s (where A1 = A and A2 = U).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "genram/afunc.hpp"
#include "genram/conv.hpp"
#include "genram/exact.hpp"

namespace genram {

/// sum_{d in A(n)} d^s. Exact for integer s with |s| <= 64.
Value sigma_A_s(const AFunctionSpec& spec, double s, std::uint64_t n);

/// n^s prod_{p | n} (1 - p^(-s tau_A(p^nu_p(n)))). Exact for integer 0 <= s <= 64.
Value phi_A_s(const AFunctionSpec& spec, double s, std::uint64_t n);

/// sigma_A^1(n) / n.
ExactRat g_A(const AFunctionSpec& spec, std::uint64_t n);

/// Whether some n has q1, ..., qk in A(n); decided as q_i in A(lcm(q)).
bool support_check(const AFunctionSpec& spec, std::span<const std::uint64_t> q);

struct Coefficient {
  double value = 0.0;
  /// Upper bound on |exact coefficient - value|; +inf when no majorant is known.
  double tail = 0.0;
  /// False when no admissible index was met below the cutoff.
  bool support_hit = true;
};

/// a(q) = sum over m_i <= cutoff with q_i in A2(m_i q_i) of
/// (mu_{(A1,k)} x_{A1} f)(m1 q1, ..., mk qk) / (m1 q1 ... mk qk),
/// summed in lexicographic order of m. The tail comes from f.majorant.
Coefficient coeff_general(const AFunctionSpec& a1, const AFunctionSpec& a2, const ArithmeticFn& f,
                          std::span<const std::uint64_t> q, std::uint64_t cutoff);

/// a(q) = sum over n <= cutoff with q_1, ..., q_k in A2(n) of (mu_{A1} x_{A1} g)(n) / n^k,
/// k = q.size(). The tail comes from g.majorant, read as a bound on mu_{A1} x_{A1} g.
Coefficient coeff_gcd_form(const AFunctionSpec& a1, const AFunctionSpec& a2, const ArithmeticFn& g,
                           std::span<const std::uint64_t> q, std::uint64_t cutoff);

/// zeta(s+k) J_{s+k}(Q) / Q^(2(s+k)) when every q_i is a unitary divisor of
/// Q = lcm(q), else 0. Requires s + k > 1. The value does not depend on A.
double coeff_sigma(const AFunctionSpec& a, double s, std::span<const std::uint64_t> q);

/// Euler-product data for the phi_A^s closed form at sigma = s + k.
class PhiExpansion {
 public:
  /// Multiplies out the primes up to prime_cutoff (and every override prime)
  /// and closes the product with a prime-zeta tail. Requires s >= 1, prime_cutoff >= 2.
  PhiExpansion(const AFunctionSpec& a, double s, std::size_t k, std::uint64_t prime_cutoff);

  /// prod_p (1 - sum_{i in S_p} p^(-sigma i)), S_p = {i : p^i is A-primitive}.
  double global_factor() const { return global_; }
  /// Relative error bound on global_factor().
  double relative_error() const { return relative_error_; }
  /// sum_{i in S_p} p^(-sigma i).
  double primitive_sum(std::uint64_t p) const;

  /// global * mu_A(Q) / (Q^sigma prod_{p | Q} (1 - sum_{S_p})) on the unitary support, else 0.
  Coefficient operator()(std::span<const std::uint64_t> q) const;

 private:
  AFunctionSpec spec_;
  double sigma_;
  std::size_t arity_;
  double global_ = 1.0;
  double relative_error_ = 0.0;
};

Coefficient coeff_phi(const AFunctionSpec& a, double s, std::span<const std::uint64_t> q,
                      std::uint64_t prime_cutoff);

enum class CoefficientKind { Sigma, Phi, General, GcdForm };
std::string to_string(CoefficientKind kind);

/// Which q-tuples a table holds: max(q) <= q_max, or lcm(q) <= q_max.
enum class Domain { MaxCoordinate, Lcm };
std::string to_string(Domain domain);

struct CoefficientEntry {
  std::vector<std::uint64_t> q;
  double coefficient = 0.0;
  double tail = 0.0;
  bool support_hit = true;
};

struct TableOptions {
  std::uint64_t q_max = 1000;
  Domain domain = Domain::Lcm;
  /// Inner-sum cutoff for the general and gcd forms.
  std::uint64_t inner_cutoff = 1000;
  std::uint64_t prime_cutoff = 100000;
  /// Worker threads; the result does not depend on this.
  unsigned threads = 1;
};

struct ExpansionCoefficients {
  std::size_t arity = 1;
  AFunctionSpec a1 = AFunctionSpec::complete();
  AFunctionSpec a2 = AFunctionSpec::unitary();
  CoefficientKind kind = CoefficientKind::Sigma;
  double s = 1.0;
  std::uint64_t q_max = 1;
  Domain domain = Domain::Lcm;
  std::uint64_t inner_cutoff = 0;
  std::uint64_t prime_cutoff = 0;
  /// Lexicographic in q. Closed forms keep only tuples on the unitary support.
  std::vector<CoefficientEntry> entries;
  /// The function being expanded.
  ArithmeticFn target;
  /// Bound on |mu x f| for the general forms.
  std::optional<Majorant> majorant;
};

ExpansionCoefficients sigma_table(const AFunctionSpec& a, double s, std::size_t k, const TableOptions& opt);
ExpansionCoefficients phi_table(const AFunctionSpec& a, double s, std::size_t k, const TableOptions& opt);
/// f needs a majorant.
ExpansionCoefficients general_table(const AFunctionSpec& a1, const AFunctionSpec& a2, const ArithmeticFn& f,
                                    const TableOptions& opt);
ExpansionCoefficients gcd_form_table(const AFunctionSpec& a1, const AFunctionSpec& a2, const ArithmeticFn& g,
                                     std::size_t k, const TableOptions& opt);

struct ConvergenceReport {
  std::vector<std::uint64_t> n;
  std::optional<Value> target;
  double partial_sum = 0.0;
  /// |target - partial_sum|; NaN without a target.
  double residual = 0.0;
  /// Bound on the contribution of tuples outside the table.
  double series_tail_bound = 0.0;
  /// sum over stored q of tail(q) |C(n1, q1) ... C(nk, qk)|.
  double coefficient_error_bound = 0.0;
  std::size_t terms = 0;
  CoefficientKind kind = CoefficientKind::Sigma;
  std::uint64_t q_max = 0;
  Domain domain = Domain::Lcm;
  std::uint64_t inner_cutoff = 0;
  std::uint64_t prime_cutoff = 0;
  double wall_seconds = 0.0;
};

/// Partial sum over all stored tuples in table order. Throws
/// std::invalid_argument on arity mismatch.
ConvergenceReport evaluate_expansion(const ExpansionCoefficients& coeffs, std::span<const std::uint64_t> n);
/// Same, for many targets; the reports do not depend on `threads`.
std::vector<ConvergenceReport> evaluate_expansion(const ExpansionCoefficients& coeffs,
                                                  const std::vector<std::vector<std::uint64_t>>& targets,
                                                  unsigned threads = 1);

/// Columns q1..qk, coefficient, tail_estimate.
void write_coefficients_csv(std::ostream& out, const ExpansionCoefficients& coeffs);
/// Versioned JSON document ("schema": 1).
std::string coefficients_json(const ExpansionCoefficients& coeffs);
std::string report_json(const ConvergenceReport& report);

}  // namespace genram
