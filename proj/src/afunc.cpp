#include "genram/afunc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace genram {

namespace {

// Largest k with p^k <= bound (0 if p > bound).
unsigned max_exponent_within(std::uint64_t p, std::uint64_t bound) {
  unsigned k = 0;
  std::uint64_t v = 1;
  while (v <= bound / p) {
    v *= p;
    ++k;
  }
  return k;
}

std::string pk_string(std::uint64_t p, unsigned k) {
  std::ostringstream os;
  os << p << '^' << k;
  return os.str();
}

std::vector<std::uint64_t> union_primes(const AFunctionSpec& a, const AFunctionSpec& b) {
  std::set<std::uint64_t> primes;
  for (auto p : a.override_primes()) primes.insert(p);
  for (auto p : b.override_primes()) primes.insert(p);
  return {primes.begin(), primes.end()};
}

template <typename Op>
AFunctionSpec combine(const AFunctionSpec& a1, const AFunctionSpec& a2, Op op, const char* tag) {
  const BaseRule base = op(a1.base_tau(2), a2.base_tau(2)) == 1 ? BaseRule::Complete : BaseRule::Unitary;
  AFunctionSpec out(std::string(tag) + "_" + a1.name() + "_" + a2.name(), base);
  for (auto p : union_primes(a1, a2)) {
    const unsigned top = std::max(a1.max_override_exponent(p), a2.max_override_exponent(p));
    for (unsigned k = 1; k <= top; ++k) {
      const unsigned t = op(a1.tau(p, k), a2.tau(p, k));
      if (t != out.base_tau(k)) out.set_override(p, k, t);
    }
  }
  if (out.overrides().empty()) out.rename(base == BaseRule::Complete ? "D" : "U");
  return out;
}

}  // namespace

AFunctionSpec::AFunctionSpec(std::string name, BaseRule base, Overrides overrides)
    : name_(std::move(name)), base_(base), overrides_(std::move(overrides)) {}

AFunctionSpec AFunctionSpec::complete() {
  AFunctionSpec s("D", BaseRule::Complete);
  s.validated_ = true;
  return s;
}

AFunctionSpec AFunctionSpec::unitary() {
  AFunctionSpec s("U", BaseRule::Unitary);
  s.validated_ = true;
  return s;
}

void AFunctionSpec::set_override(std::uint64_t p, unsigned k, unsigned t) {
  overrides_[{p, k}] = t;
  validated_ = false;
}

unsigned AFunctionSpec::tau(std::uint64_t p, unsigned k) const {
  if (k == 0) throw std::invalid_argument("tau: exponent must be positive");
  if (!overrides_.empty()) {
    if (auto it = overrides_.find({p, k}); it != overrides_.end()) return it->second;
  }
  return base_tau(k);
}

unsigned AFunctionSpec::max_override_exponent(std::uint64_t p) const {
  unsigned top = 0;
  for (auto it = overrides_.lower_bound({p, 0}); it != overrides_.end() && it->first.first == p; ++it) {
    top = std::max(top, it->first.second);
  }
  return top;
}

std::vector<std::uint64_t> AFunctionSpec::override_primes() const {
  std::vector<std::uint64_t> out;
  for (const auto& [key, t] : overrides_) {
    if (out.empty() || out.back() != key.first) out.push_back(key.first);
  }
  return out;
}

bool AFunctionSpec::chain_contains(std::uint64_t p, unsigned j, unsigned k) const {
  if (j == 0) return true;
  if (j > k) return false;
  return j % tau(p, k) == 0;
}

bool AFunctionSpec::contains(std::uint64_t d, std::uint64_t n) const {
  if (d == 0 || n == 0 || n % d != 0) return false;
  for (const auto& [p, k] : factorize(n)) {
    if (!chain_contains(p, valuation(d, p), k)) return false;
  }
  return true;
}

ValidationResult validate_spec(const AFunctionSpec& spec, std::uint64_t bound) {
  ValidationResult r;
  for (const auto& [key, t] : spec.overrides()) {
    const auto [p, k] = key;
    r.p = p;
    r.k = k;
    r.t = t;
    if (!is_prime(p)) {
      r.violation = ValidationResult::Violation::NotPrime;
      r.message = "override at " + pk_string(p, k) + ": " + std::to_string(p) + " is not prime";
      return r;
    }
    if (k == 0) {
      r.violation = ValidationResult::Violation::BadExponent;
      r.message = "override at " + pk_string(p, k) + ": exponent must be positive";
      return r;
    }
    if (t == 0 || k % t != 0) {
      r.violation = ValidationResult::Violation::TypeNotDivisor;
      r.message = "property 2: tau(" + pk_string(p, k) + ") = " + std::to_string(t) + " does not divide " +
                  std::to_string(k);
      return r;
    }
  }

  for (auto p : spec.override_primes()) {
    std::set<unsigned> exponents;
    const unsigned within = max_exponent_within(p, bound);
    for (unsigned k = 1; k <= within; ++k) exponents.insert(k);
    for (const auto& [key, t] : spec.overrides()) {
      if (key.first == p) exponents.insert(key.second);
    }
    for (unsigned k : exponents) {
      const unsigned t = spec.tau(p, k);
      for (unsigned j = 1; j * t < k; ++j) {
        const unsigned found = spec.tau(p, j * t);
        if (found != t) {
          r.violation = ValidationResult::Violation::ChainInconsistent;
          r.p = p;
          r.k = k;
          r.t = t;
          r.at = j * t;
          r.found = found;
          r.message = "property 3: tau(" + pk_string(p, k) + ") = " + std::to_string(t) + " requires tau(" +
                      pk_string(p, j * t) + ") = " + std::to_string(t) + ", found " + std::to_string(found);
          return r;
        }
      }
    }
  }
  return ValidationResult{};
}

AFunctionSpec checked(AFunctionSpec spec, std::uint64_t bound) {
  const auto result = validate_spec(spec, bound);
  if (!result.ok()) throw SpecError("spec '" + spec.name() + "' is not a regular A-function: " + result.message);
  spec.validated_ = true;
  return spec;
}

std::vector<std::uint64_t> regular_divisors(const AFunctionSpec& spec, const Factorization& n) {
  std::vector<std::uint64_t> out{1};
  for (const auto& [p, k] : n) {
    const unsigned t = spec.tau(p, k);
    const std::uint64_t step = ipow(p, t);
    const std::size_t size = out.size();
    std::uint64_t pw = 1;
    for (unsigned j = t; j <= k; j += t) {
      pw *= step;
      for (std::size_t i = 0; i < size; ++i) out.push_back(out[i] * pw);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> regular_divisors(const AFunctionSpec& spec, std::uint64_t n) {
  return regular_divisors(spec, factorize(n));
}

std::vector<RegularDivisor> regular_divisors_with_mobius(const AFunctionSpec& spec, const Factorization& n) {
  std::vector<RegularDivisor> out{{1, 1}};
  for (const auto& [p, k] : n) {
    const unsigned t = spec.tau(p, k);
    const std::uint64_t step = ipow(p, t);
    const std::size_t size = out.size();
    std::uint64_t pw = 1;
    for (unsigned j = t; j <= k; j += t) {
      pw *= step;
      const int mu = spec.tau(p, j) == j ? -1 : 0;
      for (std::size_t i = 0; i < size; ++i) out.push_back({out[i].d * pw, out[i].mobius * mu});
    }
  }
  return out;
}

bool is_primitive(const AFunctionSpec& spec, std::uint64_t n) {
  const auto f = factorize(n);
  if (f.omega() == 0) return true;  // A(1) = {1} = {1, n}
  if (f.omega() > 1) return false;
  const auto& [p, k] = f.factors().front();
  return spec.tau(p, k) == k;
}

int mobius_A(const AFunctionSpec& spec, const Factorization& n) {
  int mu = 1;
  for (const auto& [p, k] : n) {
    if (spec.tau(p, k) != k) return 0;
    mu = -mu;
  }
  return mu;
}

int mobius_A(const AFunctionSpec& spec, std::uint64_t n) { return mobius_A(spec, factorize(n)); }

std::uint64_t totient_A_u64(const AFunctionSpec& spec, const Factorization& n) {
  std::uint64_t out = 1;
  for (const auto& [p, k] : n) {
    const unsigned t = spec.tau(p, k);
    out *= ipow(p, k) - ipow(p, k - t);
  }
  return out;
}

ExactInt totient_A(const AFunctionSpec& spec, std::uint64_t n) { return ExactInt(totient_A_u64(spec, factorize(n))); }

ExactInt jordan_totient(unsigned s, std::uint64_t n) {
  if (s == 0) throw std::invalid_argument("jordan_totient: s must be >= 1");
  ExactInt out = 1;
  for (const auto& [p, k] : factorize(n)) {
    const ExactInt lower = boost::multiprecision::pow(ExactInt(p), s * (k - 1));
    const ExactInt pk = boost::multiprecision::pow(ExactInt(p), s);
    out *= lower * (pk - 1);
  }
  return out;
}

double jordan_totient_real(double s, std::uint64_t n) {
  if (!(s > 0.0)) throw std::invalid_argument("jordan_totient_real: s must be positive");
  double out = std::pow(static_cast<double>(n), s);
  for (const auto& [p, k] : factorize(n)) out *= -std::expm1(-s * std::log(static_cast<double>(p)));
  return out;
}

OrderStatus partial_le(const AFunctionSpec& a2, const AFunctionSpec& a1, std::uint64_t bound) {
  OrderStatus status;
  status.bound = bound;
  // D is above and U below everything, whatever the other spec overrides.
  const bool bare_top = a1.base() == BaseRule::Complete && a1.overrides().empty();
  const bool bare_bottom = a2.base() == BaseRule::Unitary && a2.overrides().empty();
  if (bare_top || bare_bottom) {
    status.order = Order::Le;
    return status;
  }
  std::optional<PrimePower> witness;
  auto consider = [&](PrimePower w) {
    if (!witness || w.p < witness->p || (w.p == witness->p && w.k < witness->k)) witness = w;
  };

  // Outside every override region both specs follow their base rules, and the
  // only failing base combination is A1 unitary over A2 complete (k | 1 fails
  // for k >= 2).
  if (a1.base() == BaseRule::Unitary && a2.base() == BaseRule::Complete) {
    const unsigned top = std::max(a1.max_override_exponent(2), a2.max_override_exponent(2));
    consider({2, std::max(2U, top + 1)});
  }

  bool beyond_bound = false;
  for (auto p : union_primes(a1, a2)) {
    const unsigned top = std::max(a1.max_override_exponent(p), a2.max_override_exponent(p));
    const unsigned within = max_exponent_within(p, bound);
    for (unsigned k = 1; k <= top; ++k) {
      if (k > within) {
        beyond_bound = true;
        break;
      }
      if (a2.tau(p, k) % a1.tau(p, k) != 0) {
        consider({p, k});
        break;
      }
    }
  }

  if (witness) {
    status.order = Order::NotLe;
    status.witness = witness;
  } else {
    status.order = beyond_bound ? Order::Unknown : Order::Le;
  }
  return status;
}

std::string to_string(Order order) {
  switch (order) {
    case Order::Le:
      return "A2_LE_A1";
    case Order::NotLe:
      return "INCOMPARABLE_OR_GT";
    case Order::Unknown:
      return "UNKNOWN";
  }
  return "UNKNOWN";
}

AFunctionSpec join_table(const AFunctionSpec& a1, const AFunctionSpec& a2) {
  return combine(a1, a2, [](unsigned x, unsigned y) { return std::gcd(x, y); }, "join");
}

AFunctionSpec meet_table(const AFunctionSpec& a1, const AFunctionSpec& a2) {
  return combine(a1, a2, [](unsigned x, unsigned y) { return std::lcm(x, y); }, "meet");
}

AFunctionSpec lattice_join(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t bound) {
  return checked(join_table(a1, a2), bound);
}

AFunctionSpec lattice_meet(const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t bound) {
  return checked(meet_table(a1, a2), bound);
}

bool same_types(const AFunctionSpec& a, const AFunctionSpec& b, std::uint64_t max_prime, std::uint64_t bound) {
  for (std::uint64_t p = 2; p <= max_prime; ++p) {
    if (!is_prime(p)) continue;
    const unsigned top = max_exponent_within(p, bound);
    for (unsigned k = 1; k <= top; ++k) {
      if (a.tau(p, k) != b.tau(p, k)) return false;
    }
  }
  return true;
}

}  // namespace genram
