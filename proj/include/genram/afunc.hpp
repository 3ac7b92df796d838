#pragma once

// Regular A-functions: a set-valued multiplicative n -> A(n) whose value at a
// prime power p^k is the geometric chain {1, p^t, p^2t, ..., p^k} with t | k.
// The exponent t = tau_A(p^k) is the "type". A spec stores a base rule for
// every prime power plus a finite table of per-(p, k) overrides.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "genram/exact.hpp"
#include "genram/factor.hpp"

namespace genram {

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BaseRule {
  Complete,  // tau = 1, the full divisor set D
  Unitary,   // tau = k, the unitary divisors U
};

inline constexpr std::uint64_t kDefaultValidationBound = std::uint64_t{1} << 20;

class AFunctionSpec {
 public:
  /// (p, k) -> t
  using Overrides = std::map<std::pair<std::uint64_t, unsigned>, unsigned>;

  AFunctionSpec(std::string name, BaseRule base, Overrides overrides = {});

  static AFunctionSpec complete();
  static AFunctionSpec unitary();

  const std::string& name() const { return name_; }
  BaseRule base() const { return base_; }
  const Overrides& overrides() const { return overrides_; }
  /// Set once validate_spec() succeeded through checked().
  bool validated() const { return validated_; }

  void rename(std::string name) { name_ = std::move(name); }
  /// Replaces any existing override at (p, k) and clears the validated flag.
  void set_override(std::uint64_t p, unsigned k, unsigned t);

  /// Type function; k >= 1.
  unsigned tau(std::uint64_t p, unsigned k) const;
  unsigned base_tau(unsigned k) const { return base_ == BaseRule::Complete ? 1U : k; }

  /// Largest overridden exponent at p, 0 when p has no overrides.
  unsigned max_override_exponent(std::uint64_t p) const;
  /// Primes with at least one override, ascending.
  std::vector<std::uint64_t> override_primes() const;

  /// p^j in A(p^k), for 0 <= j.
  bool chain_contains(std::uint64_t p, unsigned j, unsigned k) const;
  /// d in A(n).
  bool contains(std::uint64_t d, std::uint64_t n) const;

 private:
  friend AFunctionSpec checked(AFunctionSpec spec, std::uint64_t bound);

  std::string name_;
  BaseRule base_;
  Overrides overrides_;
  bool validated_ = false;
};

struct ValidationResult {
  enum class Violation { None, NotPrime, BadExponent, TypeNotDivisor, ChainInconsistent };

  Violation violation = Violation::None;
  std::uint64_t p = 0;
  unsigned k = 0;
  unsigned t = 0;
  /// For ChainInconsistent: tau(p, j*t) was found instead of t at exponent `at`.
  unsigned at = 0;
  unsigned found = 0;
  std::string message;

  bool ok() const { return violation == Violation::None; }
};

/// Checks that every override has t | k and that every chain is consistent:
/// tau(p, k) = t forces tau(p, j*t) = t for 1 <= j <= k/t. Prime powers are
/// enumerated explicitly up to `bound` for primes that carry overrides, and
/// at every override exponent; pure base rules are consistent by construction.
ValidationResult validate_spec(const AFunctionSpec& spec, std::uint64_t bound = kDefaultValidationBound);

/// validate_spec() or throw SpecError; the returned copy has validated() set.
AFunctionSpec checked(AFunctionSpec spec, std::uint64_t bound = kDefaultValidationBound);

/// A(n), ascending. Always contains 1 and n.
std::vector<std::uint64_t> regular_divisors(const AFunctionSpec& spec, std::uint64_t n);
std::vector<std::uint64_t> regular_divisors(const AFunctionSpec& spec, const Factorization& n);

struct RegularDivisor {
  std::uint64_t d;
  int mobius;  // mu_A(d)
};

/// A(n) paired with mu_A of each element; generation order, not sorted.
std::vector<RegularDivisor> regular_divisors_with_mobius(const AFunctionSpec& spec, const Factorization& n);

/// A(n) == {1, n}.
bool is_primitive(const AFunctionSpec& spec, std::uint64_t n);

/// mu_A: multiplicative, with mu_A(p^a) = -1 when p^a is A-primitive and 0
/// when it is not (a >= 1).
int mobius_A(const AFunctionSpec& spec, std::uint64_t n);
int mobius_A(const AFunctionSpec& spec, const Factorization& n);

/// prod over p^k || n of (p^k - p^(k - tau(p, k))).
ExactInt totient_A(const AFunctionSpec& spec, std::uint64_t n);
std::uint64_t totient_A_u64(const AFunctionSpec& spec, const Factorization& n);

/// Jordan totient J_s(n) = n^s prod_{p | n} (1 - p^-s), exact for integer s >= 1.
ExactInt jordan_totient(unsigned s, std::uint64_t n);
/// Real-exponent variant; each factor carries relative error at most a few ulps.
double jordan_totient_real(double s, std::uint64_t n);

enum class Order { Le, NotLe, Unknown };

struct OrderStatus {
  Order order = Order::Unknown;
  /// Explicit enumeration limit that was used.
  std::uint64_t bound = kDefaultValidationBound;
  /// A prime power where tau_{A1} does not divide tau_{A2}, when order == NotLe.
  std::optional<PrimePower> witness;
};

/// Decides A2 <= A1 (A2(n) subset of A1(n) for every n), via the criterion
/// tau_{A1}(p^k) | tau_{A2}(p^k). Base rules are compared symbolically; the
/// override region is enumerated. Unknown only when an override exponent
/// lies beyond `bound` and no violation was found below it.
OrderStatus partial_le(const AFunctionSpec& a2, const AFunctionSpec& a1, std::uint64_t bound = kDefaultValidationBound);

std::string to_string(Order order);

/// Pointwise tau = gcd / lcm tables; the result is not validated.
AFunctionSpec join_table(const AFunctionSpec& a1, const AFunctionSpec& a2);
AFunctionSpec meet_table(const AFunctionSpec& a1, const AFunctionSpec& a2);

/// join_table / meet_table followed by checked(); throws SpecError when the
/// pointwise table is not a regular A-function.
AFunctionSpec lattice_join(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t bound = kDefaultValidationBound);
AFunctionSpec lattice_meet(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t bound = kDefaultValidationBound);

/// tau_a(p^k) == tau_b(p^k) for every prime p <= max_prime and p^k <= bound.
bool same_types(const AFunctionSpec& a, const AFunctionSpec& b, std::uint64_t max_prime, std::uint64_t bound);

}  // namespace genram
