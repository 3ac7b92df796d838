#include "genram/expand.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "genram/ramsum.hpp"
#include "genram/summation.hpp"
#include "genram/zeta.hpp"

namespace genram {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Relative accuracy of zeta() plus a few roundings of the closed forms.
constexpr double kClosedFormRelativeError = 1e-13;
constexpr std::uint64_t kRankinPrimeLimit = 10000;

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

bool integral_exponent(double s, double limit) { return s == std::floor(s) && std::fabs(s) <= limit; }

// n^s, exact for integral s.
Value power_value(std::uint64_t n, double s) {
  if (integral_exponent(s, 64)) {
    const auto e = static_cast<long>(s);
    ExactInt base = boost::multiprecision::pow(ExactInt(n), static_cast<unsigned>(std::labs(e)));
    return e >= 0 ? Value(ExactRat(base)) : Value(ExactRat(ExactInt(1), base));
  }
  return Value(std::pow(static_cast<double>(n), s));
}

std::uint64_t checked_lcm(std::span<const std::uint64_t> q) {
  std::uint64_t l = 1;
  for (auto x : q) {
    if (x == 0) throw std::invalid_argument("q-tuple entries must be positive");
    l = lcm(l, x);
  }
  return l;
}

double harmonic(double beta, std::uint64_t c) {
  CompensatedSum acc;
  for (std::uint64_t m = c; m >= 1; --m) acc.add(std::pow(static_cast<double>(m), -beta));
  return acc.value();
}

// sum_{j > floor(threshold / L)} scale (j L)^-beta
double multiples_tail(double scale, double beta, std::uint64_t L, double threshold) {
  if (!(beta > 1.0)) return kInf;
  const double j0 = std::floor(threshold / static_cast<double>(L));
  const double head = std::pow(static_cast<double>(L), -beta);
  if (j0 < 1.0) return scale * head * zeta(beta);
  return scale * head * std::pow(j0, 1.0 - beta) / (beta - 1.0);
}

const std::vector<std::uint64_t>& rankin_primes() {
  static const std::vector<std::uint64_t> primes = FactorSieve(kRankinPrimeLimit).primes();
  return primes;
}

// Upper bound on sum_{Q > X} h^omega(Q) Q^-sigma.
double rankin_tail(double h, double sigma, double X) {
  if (!(sigma > 1.0)) return kInf;
  if (h <= 1.0) return std::pow(X, 1.0 - sigma) / (sigma - 1.0);
  double best = kInf;
  constexpr int kGrid = 48;
  for (int j = 1; j < kGrid; ++j) {
    const double eps = (sigma - 1.0) * j / kGrid;
    const double alpha = sigma - eps;
    CompensatedSum log_e;
    for (auto p : rankin_primes()) {
      const double x = std::pow(static_cast<double>(p), -alpha);
      log_e.add(std::log1p(h * x / (1.0 - x)));
    }
    const double L = static_cast<double>(kRankinPrimeLimit);
    log_e.add(h / (1.0 - std::pow(L, -alpha)) * std::pow(L, 1.0 - alpha) / (alpha - 1.0));
    best = std::min(best, std::exp(log_e.value() - eps * std::log(X)));
  }
  return best;
}

// The k-variable f(n) = g(gcd_{A}(n1, ..., nk)).
ArithmeticFn gcd_composite(const AFunctionSpec& a, const ArithmeticFn& g, std::size_t k) {
  auto fn = make_fn_k(
      k, [a, g](std::span<const std::uint64_t> n) { return g(gcd_k(a, n)); }, g.label + "(gcd)");
  if (g.majorant) fn.majorant = Majorant{g.majorant->scale, g.majorant->decay, true};
  return fn;
}

void next_box_tuple(std::vector<std::uint64_t>& t, std::uint64_t X, bool& done) {
  for (std::size_t i = t.size(); i-- > 0;) {
    if (++t[i] <= X) return;
    t[i] = 1;
  }
  done = true;
}

// Lexicographic tuples of [1, X]^k accepted by keep.
template <typename Keep>
std::vector<std::vector<std::uint64_t>> box_tuples(std::size_t k, std::uint64_t X, Keep&& keep) {
  std::vector<std::vector<std::uint64_t>> out;
  if (X == 0 || k == 0) return out;
  std::vector<std::uint64_t> t(k, 1);
  for (bool done = false; !done; next_box_tuple(t, X, done)) {
    if (keep(t)) out.push_back(t);
  }
  return out;
}

// Lexicographic k-tuples of unitary divisors of some Q <= X with lcm exactly Q.
std::vector<std::vector<std::uint64_t>> unitary_lcm_tuples(std::size_t k, std::uint64_t X) {
  std::vector<std::vector<std::uint64_t>> out;
  if (X == 0) return out;
  const FactorSieve sieve(X);
  const std::uint64_t masks = (std::uint64_t{1} << k) - 1;
  for (std::uint64_t Q = 1; Q <= X; ++Q) {
    const auto f = sieve.factorize(Q);
    std::vector<std::uint64_t> parts;
    for (const auto& pp : f) parts.push_back(pp.value());
    std::vector<std::uint64_t> choice(parts.size(), 1);
    while (true) {
      std::vector<std::uint64_t> q(k, 1);
      for (std::size_t j = 0; j < parts.size(); ++j) {
        for (std::size_t i = 0; i < k; ++i) {
          if (choice[j] >> i & 1U) q[i] *= parts[j];
        }
      }
      out.push_back(std::move(q));
      std::size_t j = 0;
      for (; j < parts.size(); ++j) {
        if (++choice[j] <= masks) break;
        choice[j] = 1;
      }
      if (j == parts.size()) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::uint64_t>> closed_form_tuples(std::size_t k, const TableOptions& opt) {
  if (opt.domain == Domain::Lcm) return unitary_lcm_tuples(k, opt.q_max);
  const auto unitary = AFunctionSpec::unitary();
  return box_tuples(k, opt.q_max, [&](const std::vector<std::uint64_t>& q) { return support_check(unitary, q); });
}

std::vector<std::vector<std::uint64_t>> general_tuples(std::size_t k, const TableOptions& opt) {
  if (opt.domain == Domain::MaxCoordinate) {
    return box_tuples(k, opt.q_max, [](const std::vector<std::uint64_t>&) { return true; });
  }
  return box_tuples(k, opt.q_max, [&](const std::vector<std::uint64_t>& q) {
    std::uint64_t l = 1;
    for (auto x : q) {
      l = l / std::gcd(l, x) * x;
      if (l > opt.q_max) return false;
    }
    return true;
  });
}

void require_arity(std::size_t k) {
  if (k == 0) throw std::invalid_argument("expansion arity must be at least 1");
}

}  // namespace

Value sigma_A_s(const AFunctionSpec& spec, double s, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("sigma_A_s: n must be positive");
  const auto divisors = regular_divisors(spec, n);
  if (integral_exponent(s, 64)) {
    Value acc(0);
    for (auto d : divisors) acc += power_value(d, s);
    return acc;
  }
  CompensatedSum acc;
  for (auto d : divisors) acc.add(std::pow(static_cast<double>(d), s));
  return Value(acc.value());
}

Value phi_A_s(const AFunctionSpec& spec, double s, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("phi_A_s: n must be positive");
  const auto f = factorize(n);
  if (integral_exponent(s, 64) && s >= 0) {
    const auto e = static_cast<unsigned>(s);
    ExactInt acc = 1;
    for (const auto& [p, k] : f) {
      const unsigned t = spec.tau(p, k);
      acc *= boost::multiprecision::pow(ExactInt(p), e * k) - boost::multiprecision::pow(ExactInt(p), e * (k - t));
    }
    return Value(acc);
  }
  double acc = 1.0;
  for (const auto& [p, k] : f) {
    const double pd = static_cast<double>(p);
    acc *= std::pow(pd, s * k) * -std::expm1(-s * spec.tau(p, k) * std::log(pd));
  }
  return Value(acc);
}

ExactRat g_A(const AFunctionSpec& spec, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("g_A: n must be positive");
  ExactInt acc = 0;
  for (auto d : regular_divisors(spec, n)) acc += d;
  return ExactRat(acc, ExactInt(n));
}

bool support_check(const AFunctionSpec& spec, std::span<const std::uint64_t> q) {
  const std::uint64_t l = checked_lcm(q);
  return std::all_of(q.begin(), q.end(), [&](std::uint64_t x) { return spec.contains(x, l); });
}

Coefficient coeff_general(const AFunctionSpec& a1, const AFunctionSpec& a2, const ArithmeticFn& f,
                          std::span<const std::uint64_t> q, std::uint64_t cutoff) {
  if (cutoff < 1) throw std::invalid_argument("coeff_general: cutoff must be at least 1");
  if (f.arity != q.size()) throw std::invalid_argument("coeff_general: arity mismatch");
  require_arity(q.size());
  checked_lcm(q);
  const std::size_t k = q.size();

  Coefficient out;
  out.support_hit = false;
  CompensatedSum acc;
  std::vector<std::uint64_t> m(k, 1);
  std::vector<std::uint64_t> d(k);
  for (bool done = false; !done; next_box_tuple(m, cutoff, done)) {
    bool admissible = true;
    double weight = 1.0;
    for (std::size_t i = 0; i < k && admissible; ++i) {
      d[i] = m[i] * q[i];
      admissible = a2.contains(q[i], d[i]);
      weight *= static_cast<double>(d[i]);
    }
    if (!admissible) continue;
    out.support_hit = true;
    acc.add(mobius_invert_k(a1, f, d).to_double() / weight);
  }
  out.value = acc.value();

  if (!f.majorant) {
    out.tail = kInf;
  } else if (f.majorant->diagonal) {
    // Only d1 = ... = dk = d survive; the omitted ones have d > cutoff * min(q) and lcm(q) | d.
    const double beta = f.majorant->decay + static_cast<double>(k);
    const auto min_q = *std::min_element(q.begin(), q.end());
    out.tail = multiples_tail(f.majorant->scale, beta, checked_lcm(q),
                              static_cast<double>(cutoff) * static_cast<double>(min_q));
  } else {
    const double beta = 1.0 + f.majorant->decay;
    if (!(beta > 1.0)) {
      out.tail = kInf;
    } else {
      double scale = f.majorant->scale;
      for (auto x : q) scale *= std::pow(static_cast<double>(x), -beta);
      const double full = std::pow(zeta(beta), static_cast<double>(k));
      const double head = std::pow(harmonic(beta, cutoff), static_cast<double>(k));
      out.tail = scale * std::max(0.0, full - head) + scale * full * 1e-15;
    }
  }
  return out;
}

Coefficient coeff_gcd_form(const AFunctionSpec& a1, const AFunctionSpec& a2, const ArithmeticFn& g,
                           std::span<const std::uint64_t> q, std::uint64_t cutoff) {
  if (cutoff < 1) throw std::invalid_argument("coeff_gcd_form: cutoff must be at least 1");
  if (g.arity != 1) throw std::invalid_argument("coeff_gcd_form: g must have arity 1");
  require_arity(q.size());
  const std::size_t k = q.size();
  const std::uint64_t L = checked_lcm(q);

  Coefficient out;
  // The lcm criterion is exact for globally regular A2 (every unitary-based spec and the bare bases).
  if ((a2.base() == BaseRule::Unitary || a2.overrides().empty()) && !support_check(a2, q)) {
    out.support_hit = false;
    return out;
  }

  out.support_hit = false;
  CompensatedSum acc;
  const double kd = static_cast<double>(k);
  for (std::uint64_t n = L; n <= cutoff; n += L) {
    const bool admissible = std::all_of(q.begin(), q.end(), [&](std::uint64_t x) { return a2.contains(x, n); });
    if (!admissible) continue;
    out.support_hit = true;
    acc.add(mobius_invert(a1, g, n).to_double() * std::pow(static_cast<double>(n), -kd));
  }
  out.value = acc.value();
  out.tail = g.majorant ? multiples_tail(g.majorant->scale, g.majorant->decay + kd, L, static_cast<double>(cutoff))
                        : kInf;
  return out;
}

double coeff_sigma(const AFunctionSpec& /*a*/, double s, std::span<const std::uint64_t> q) {
  require_arity(q.size());
  const double sigma = s + static_cast<double>(q.size());
  if (!(sigma > 1.0)) throw std::domain_error("coeff_sigma: requires s + k > 1");
  if (!support_check(AFunctionSpec::unitary(), q)) return 0.0;
  const std::uint64_t Q = checked_lcm(q);
  double value = zeta(sigma) * std::pow(static_cast<double>(Q), -sigma);
  for (const auto& pp : factorize(Q)) value *= -std::expm1(-sigma * std::log(static_cast<double>(pp.p)));
  return value;
}

PhiExpansion::PhiExpansion(const AFunctionSpec& a, double s, std::size_t k, std::uint64_t prime_cutoff)
    : spec_(a), sigma_(s + static_cast<double>(k)), arity_(k) {
  if (!(s >= 1.0)) throw std::domain_error("coeff_phi: requires s >= 1");
  if (prime_cutoff < 2) throw std::invalid_argument("coeff_phi: prime_cutoff must be at least 2");
  require_arity(k);

  std::uint64_t last = prime_cutoff;
  for (auto p : a.override_primes()) last = std::max(last, p);
  CompensatedSum log_global;
  const auto primes = FactorSieve(last).primes();
  for (auto it = primes.rbegin(); it != primes.rend(); ++it) log_global.add(std::log1p(-primitive_sum(*it)));

  // Beyond `last` every prime follows the base rule:
  //   complete: log(1 - y)                 = -sum y^m / m
  //   unitary:  log((1 - 2y) / (1 - y))    =  sum (1 - 2^m) y^m / m,   y = p^-sigma
  const bool unitary = a.base() == BaseRule::Unitary;
  auto coefficient = [&](int m) { return unitary ? (1.0 - std::ldexp(1.0, m)) / m : -1.0 / m; };
  constexpr int kTerms = 3;
  for (int m = kTerms; m >= 1; --m) log_global.add(coefficient(m) * prime_zeta_tail(m * sigma_, last));
  global_ = std::exp(log_global.value());

  double remainder = 0.0;
  const double L = static_cast<double>(last);
  for (int m = kTerms + 1; m <= kTerms + 16; ++m) {
    remainder += std::fabs(coefficient(m)) * std::pow(L, 1.0 - m * sigma_) / (m * sigma_ - 1.0);
  }
  relative_error_ = remainder + 1e-14;
}

double PhiExpansion::primitive_sum(std::uint64_t p) const {
  const double pd = static_cast<double>(p);
  const unsigned top = spec_.max_override_exponent(p);
  double acc = 0.0;
  for (unsigned i = 1; i <= top; ++i) {
    if (spec_.tau(p, i) == i) acc += std::pow(pd, -sigma_ * i);
  }
  if (spec_.base() == BaseRule::Unitary) {
    acc += std::pow(pd, -sigma_ * (top + 1)) / -std::expm1(-sigma_ * std::log(pd));
  } else if (top == 0) {
    acc += std::pow(pd, -sigma_);
  }
  return acc;
}

Coefficient PhiExpansion::operator()(std::span<const std::uint64_t> q) const {
  if (q.size() != arity_) throw std::invalid_argument("coeff_phi: arity mismatch");
  Coefficient out;
  if (!support_check(AFunctionSpec::unitary(), q)) return out;
  const auto Qf = factorize(checked_lcm(q));
  const int mu = mobius_A(spec_, Qf);
  if (mu == 0) return out;
  double value = global_ * mu * std::pow(static_cast<double>(Qf.value()), -sigma_);
  for (const auto& pp : Qf) value /= 1.0 - primitive_sum(pp.p);
  out.value = value;
  out.tail = std::fabs(value) * (relative_error_ + kClosedFormRelativeError);
  return out;
}

Coefficient coeff_phi(const AFunctionSpec& a, double s, std::span<const std::uint64_t> q,
                      std::uint64_t prime_cutoff) {
  return PhiExpansion(a, s, q.size(), prime_cutoff)(q);
}

std::string to_string(CoefficientKind kind) {
  switch (kind) {
    case CoefficientKind::Sigma: return "sigma";
    case CoefficientKind::Phi: return "phi";
    case CoefficientKind::General: return "general";
    case CoefficientKind::GcdForm: return "gcd_form";
  }
  return "unknown";
}

std::string to_string(Domain domain) { return domain == Domain::Lcm ? "lcm" : "max_coordinate"; }

ExpansionCoefficients sigma_table(const AFunctionSpec& a, double s, std::size_t k, const TableOptions& opt) {
  require_arity(k);
  const double sigma = s + static_cast<double>(k);
  if (!(sigma > 1.0)) throw std::domain_error("sigma_table: requires s + k > 1");

  ExpansionCoefficients out;
  out.arity = k;
  out.a1 = a;
  out.kind = CoefficientKind::Sigma;
  out.s = s;
  out.q_max = opt.q_max;
  out.domain = opt.domain;
  const auto tuples = closed_form_tuples(k, opt);
  out.entries.resize(tuples.size());
  parallel_for(tuples.size(), opt.threads, [&](std::size_t i) {
    const double value = coeff_sigma(a, s, tuples[i]);
    out.entries[i] = {tuples[i], value, std::fabs(value) * kClosedFormRelativeError, true};
  });
  out.target = make_fn_k(
      k,
      [a, s](std::span<const std::uint64_t> n) {
        const auto g = gcd_k(a, n);
        return sigma_A_s(a, s, g) * power_value(g, -s);
      },
      "sigma_" + a.name());
  return out;
}

ExpansionCoefficients phi_table(const AFunctionSpec& a, double s, std::size_t k, const TableOptions& opt) {
  const PhiExpansion phi(a, s, k, opt.prime_cutoff);
  ExpansionCoefficients out;
  out.arity = k;
  out.a1 = a;
  out.kind = CoefficientKind::Phi;
  out.s = s;
  out.q_max = opt.q_max;
  out.domain = opt.domain;
  out.prime_cutoff = opt.prime_cutoff;
  const auto tuples = closed_form_tuples(k, opt);
  out.entries.resize(tuples.size());
  parallel_for(tuples.size(), opt.threads, [&](std::size_t i) {
    const auto c = phi(tuples[i]);
    out.entries[i] = {tuples[i], c.value, c.tail, true};
  });
  out.target = make_fn_k(
      k,
      [a, s](std::span<const std::uint64_t> n) {
        const auto g = gcd_k(a, n);
        return phi_A_s(a, s, g) * power_value(g, -s);
      },
      "phi_" + a.name());
  return out;
}

ExpansionCoefficients general_table(const AFunctionSpec& a1, const AFunctionSpec& a2, const ArithmeticFn& f,
                                    const TableOptions& opt) {
  require_arity(f.arity);
  if (!f.majorant) throw std::invalid_argument("general_table: f needs a majorant");
  ExpansionCoefficients out;
  out.arity = f.arity;
  out.a1 = a1;
  out.a2 = a2;
  out.kind = CoefficientKind::General;
  out.q_max = opt.q_max;
  out.domain = opt.domain;
  out.inner_cutoff = opt.inner_cutoff;
  out.target = f;
  out.majorant = f.majorant;
  const auto tuples = general_tuples(f.arity, opt);
  out.entries.resize(tuples.size());
  parallel_for(tuples.size(), opt.threads, [&](std::size_t i) {
    const auto c = coeff_general(a1, a2, f, tuples[i], opt.inner_cutoff);
    out.entries[i] = {tuples[i], c.value, c.tail, c.support_hit};
  });
  return out;
}

ExpansionCoefficients gcd_form_table(const AFunctionSpec& a1, const AFunctionSpec& a2, const ArithmeticFn& g,
                                     std::size_t k, const TableOptions& opt) {
  require_arity(k);
  if (!g.majorant) throw std::invalid_argument("gcd_form_table: g needs a majorant");
  ExpansionCoefficients out;
  out.arity = k;
  out.a1 = a1;
  out.a2 = a2;
  out.kind = CoefficientKind::GcdForm;
  out.q_max = opt.q_max;
  out.domain = opt.domain;
  out.inner_cutoff = opt.inner_cutoff;
  out.target = gcd_composite(a1, g, k);
  out.majorant = out.target.majorant;
  const auto tuples = general_tuples(k, opt);
  out.entries.resize(tuples.size());
  parallel_for(tuples.size(), opt.threads, [&](std::size_t i) {
    const auto c = coeff_gcd_form(a1, a2, g, tuples[i], opt.inner_cutoff);
    out.entries[i] = {tuples[i], c.value, c.tail, c.support_hit};
  });
  return out;
}

namespace {

double series_tail_bound(const ExpansionCoefficients& c, std::span<const std::uint64_t> n) {
  double scale = 1.0;
  for (auto x : n) scale *= static_cast<double>(x);
  const double k = static_cast<double>(c.arity);
  const double X = static_cast<double>(c.q_max);
  const double tuples_per_prime = std::ldexp(1.0, static_cast<int>(c.arity)) - 1.0;
  switch (c.kind) {
    case CoefficientKind::Sigma: {
      const double sigma = c.s + k;
      return scale * zeta(sigma) * rankin_tail(tuples_per_prime, sigma, X);
    }
    case CoefficientKind::Phi: {
      // 1 / (1 - sum_{S_p}) <= 1 / (1 - 1/(p^sigma - 1)) <= 3/2 once sigma >= 2.
      const double sigma = c.s + k;
      return scale * rankin_tail(tuples_per_prime * 1.5, sigma, X);
    }
    case CoefficientKind::General:
    case CoefficientKind::GcdForm: {
      if (!c.majorant) return kInf;
      const Majorant& mj = *c.majorant;
      if (mj.diagonal) return scale * mj.scale * rankin_tail(std::ldexp(1.0, static_cast<int>(c.arity)), mj.decay + k, X);
      // Some coordinate of the inner index exceeds the largest single q left out.
      const double beta = 1.0 + mj.decay;
      if (!(beta > 1.0)) return kInf;
      const auto edge = static_cast<std::uint64_t>(
          c.domain == Domain::Lcm ? std::floor(std::pow(X, 1.0 / k) + 1e-9) : X);
      CompensatedSum head;
      for (std::uint64_t d = edge; d >= 1; --d) {
        head.add(std::ldexp(1.0, static_cast<int>(omega(d))) * std::pow(static_cast<double>(d), -beta));
      }
      const double full = zeta(beta) * zeta(beta) / zeta(2.0 * beta);
      const double pk = std::pow(full, k);
      return scale * mj.scale * (std::max(0.0, pk - std::pow(head.value(), k)) + pk * 1e-15);
    }
  }
  return kInf;
}

ConvergenceReport evaluate_one(const ExpansionCoefficients& c, std::span<const std::uint64_t> n,
                               const std::vector<Factorization>& factored) {
  const auto start = std::chrono::steady_clock::now();
  ConvergenceReport r;
  r.n.assign(n.begin(), n.end());
  r.kind = c.kind;
  r.q_max = c.q_max;
  r.domain = c.domain;
  r.inner_cutoff = c.inner_cutoff;
  r.prime_cutoff = c.prime_cutoff;

  CompensatedSum sum;
  CompensatedSum coefficient_error;
  for (const auto& e : c.entries) {
    double product = 1.0;
    for (std::size_t i = 0; i < c.arity && product != 0.0; ++i) {
      product *= static_cast<double>(ramanujan_C_i64(c.a1, c.a2, n[i], factored[e.q[i]]));
    }
    if (product == 0.0) continue;
    sum.add(e.coefficient * product);
    coefficient_error.add(e.tail * std::fabs(product));
  }
  r.partial_sum = sum.value();
  r.coefficient_error_bound = coefficient_error.value();
  r.terms = c.entries.size();
  r.series_tail_bound = series_tail_bound(c, n);
  if (c.target.eval) {
    r.target = c.target(n);
    r.residual = std::fabs(r.target->to_double() - r.partial_sum);
  } else {
    r.residual = std::numeric_limits<double>::quiet_NaN();
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<Factorization> factor_components(const ExpansionCoefficients& c) {
  std::uint64_t top = 1;
  for (const auto& e : c.entries) {
    for (auto x : e.q) top = std::max(top, x);
  }
  const FactorSieve sieve(top);
  std::vector<char> present(top + 1, 0);
  for (const auto& e : c.entries) {
    for (auto x : e.q) present[x] = 1;
  }
  std::vector<Factorization> out(top + 1);
  for (std::uint64_t x = 1; x <= top; ++x) {
    if (present[x]) out[x] = sieve.factorize(x);
  }
  return out;
}

void check_target(const ExpansionCoefficients& c, std::span<const std::uint64_t> n) {
  if (n.size() != c.arity) {
    throw std::invalid_argument("evaluate_expansion: arity mismatch (table has " + std::to_string(c.arity) +
                                ", target has " + std::to_string(n.size()) + ")");
  }
  for (auto x : n) {
    if (x == 0) throw std::invalid_argument("evaluate_expansion: target entries must be positive");
  }
}

}  // namespace

ConvergenceReport evaluate_expansion(const ExpansionCoefficients& coeffs, std::span<const std::uint64_t> n) {
  check_target(coeffs, n);
  return evaluate_one(coeffs, n, factor_components(coeffs));
}

std::vector<ConvergenceReport> evaluate_expansion(const ExpansionCoefficients& coeffs,
                                                  const std::vector<std::vector<std::uint64_t>>& targets,
                                                  unsigned threads) {
  for (const auto& n : targets) check_target(coeffs, n);
  const auto factored = factor_components(coeffs);
  std::vector<ConvergenceReport> out(targets.size());
  parallel_for(targets.size(), threads, [&](std::size_t i) { out[i] = evaluate_one(coeffs, targets[i], factored); });
  return out;
}

void write_coefficients_csv(std::ostream& out, const ExpansionCoefficients& coeffs) {
  for (std::size_t i = 1; i <= coeffs.arity; ++i) out << 'q' << i << ',';
  out << "coefficient,tail_estimate\n";
  const auto old = out.precision(17);
  for (const auto& e : coeffs.entries) {
    for (auto x : e.q) out << x << ',';
    out << e.coefficient << ',' << e.tail << '\n';
  }
  out.precision(old);
}

std::string coefficients_json(const ExpansionCoefficients& coeffs) {
  nlohmann::json doc;
  doc["schema"] = 1;
  doc["kind"] = to_string(coeffs.kind);
  doc["arity"] = coeffs.arity;
  doc["a1"] = coeffs.a1.name();
  doc["a2"] = coeffs.a2.name();
  doc["s"] = coeffs.s;
  doc["q_max"] = coeffs.q_max;
  doc["domain"] = to_string(coeffs.domain);
  doc["inner_cutoff"] = coeffs.inner_cutoff;
  doc["prime_cutoff"] = coeffs.prime_cutoff;
  auto& entries = doc["entries"] = nlohmann::json::array();
  for (const auto& e : coeffs.entries) {
    entries.push_back({{"q", e.q}, {"coefficient", e.coefficient}, {"tail_estimate", e.tail},
                       {"support_hit", e.support_hit}});
  }
  return doc.dump(2);
}

std::string report_json(const ConvergenceReport& r) {
  nlohmann::json doc;
  doc["schema"] = 1;
  doc["n"] = r.n;
  if (r.target) {
    doc["target"] = r.target->str();
    doc["target_value"] = r.target->to_double();
    doc["residual"] = r.residual;
  } else {
    doc["target"] = nullptr;
    doc["residual"] = nullptr;
  }
  doc["partial_sum"] = r.partial_sum;
  doc["series_tail_bound"] = r.series_tail_bound;
  doc["coefficient_error_bound"] = r.coefficient_error_bound;
  doc["terms"] = r.terms;
  doc["kind"] = to_string(r.kind);
  doc["q_max"] = r.q_max;
  doc["domain"] = to_string(r.domain);
  doc["inner_cutoff"] = r.inner_cutoff;
  doc["prime_cutoff"] = r.prime_cutoff;
  doc["wall_seconds"] = r.wall_seconds;
  return doc.dump(2);
}

}  // namespace genram
