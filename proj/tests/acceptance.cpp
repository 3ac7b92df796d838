#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "genram/afunc.hpp"
#include "genram/conv.hpp"
#include "genram/expand.hpp"
#include "genram/oracle.hpp"
#include "genram/ramsum.hpp"
#include "genram/verify.hpp"
#include "support/fixtures.hpp"

namespace {

using namespace genram;
using genram::testing::D;
using genram::testing::U;

constexpr double kTrigTolerance = 1e-9;
constexpr double kTrigNonInteger = 1e-3;
constexpr double kExpansionRelative = 1e-3;
constexpr double kTwoVariableRelative = 1e-2;
constexpr double kDualPathSlack = 1e-12;
constexpr std::uint64_t kMixedSeed = 1;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string str(const ExactInt& v) { return v.str(); }

std::vector<AFunctionSpec> base_specs() {
  std::vector<AFunctionSpec> out = {D(), U()};
  for (auto& s : genram::testing::mixed_specs(5, kMixedSeed)) out.push_back(s);
  return out;
}

bool le(const AFunctionSpec& a2, const AFunctionSpec& a1) { return partial_le(a2, a1).order == Order::Le; }

// Ordered pairs (A1, A2) with A2 <= A1: every such pair from base_specs(),
// plus (mixed_i, mixed_i meet mixed_j) since distinct mixed specs are rarely comparable.
std::vector<std::pair<AFunctionSpec, AFunctionSpec>> ordered_pairs() {
  const auto specs = base_specs();
  std::vector<std::pair<AFunctionSpec, AFunctionSpec>> out;
  for (const auto& a1 : specs) {
    for (const auto& a2 : specs) {
      if (le(a2, a1)) out.emplace_back(a1, a2);
    }
  }
  for (std::size_t i = 2; i < specs.size(); ++i) {
    auto meet = lattice_meet(specs[i], specs[i + 1 < specs.size() ? i + 1 : 2]);
    meet.rename(specs[i].name() + "_meet");
    out.emplace_back(specs[i], meet);
  }
  return out;
}

Outcome classical_agreement() {
  for (std::uint64_t m = 1; m <= 128; ++m) {
    for (std::uint64_t n = 1; n <= 128; ++n) {
      const auto fast = ramanujan_C(D(), D(), m, n);
      const auto slow = oracle::ramanujan_by_exp_sum(D(), m, n).value;
      if (fast != slow) return {false, "m=" + std::to_string(m) + " n=" + std::to_string(n) + " C=" + str(fast) + " exp=" + str(slow)};
    }
  }
  return {true, "16384 cells"};
}

Outcome fast_path_soundness() {
  constexpr std::uint64_t kMax = 300;
  const auto specs = base_specs();
  std::vector<oracle::Table> tables;
  for (const auto& s : specs) tables.emplace_back(s, kMax);
  std::vector<Factorization> nf(kMax + 1);
  for (std::uint64_t n = 1; n <= kMax; ++n) nf[n] = factorize(n);
  std::size_t cells = 0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    for (std::size_t j = 0; j < specs.size(); ++j) {
      for (std::uint64_t m = 1; m <= kMax; ++m) {
        for (std::uint64_t n = 1; n <= kMax; ++n, ++cells) {
          const auto fast = ramanujan_C_i64(specs[i], specs[j], m, nf[n]);
          const auto slow = oracle::direct_C(tables[i], tables[j], m, n);
          if (ExactInt(fast) != slow) {
            return {false, specs[i].name() + "/" + specs[j].name() + " m=" + std::to_string(m) + " n=" + std::to_string(n)};
          }
        }
      }
    }
  }
  return {true, std::to_string(cells) + " cells over " + std::to_string(specs.size() * specs.size()) + " ordered pairs"};
}

Outcome holder() {
  const auto specs = base_specs();
  const auto pairs = ordered_pairs();
  for (const auto& [a1, a2] : pairs) {
    for (std::uint64_t m = 1; m <= 200; ++m) {
      for (std::uint64_t n = 1; n <= 200; ++n) {
        if (ExactRat(ramanujan_C(a1, a2, m, n)) != von_sterneck_Phi(a1, a2, m, n)) {
          return {false, a1.name() + "/" + a2.name() + " m=" + std::to_string(m) + " n=" + std::to_string(n)};
        }
      }
    }
  }
  std::size_t witness_pairs = 0;
  for (const auto& a1 : specs) {
    for (const auto& a2 : specs) {
      if (le(a2, a1)) continue;
      ++witness_pairs;
      const auto w = find_holder_witness(a1, a2);
      if (!w || ExactRat(w->ramanujan) == w->von_sterneck) return {false, "no witness for " + a1.name() + "/" + a2.name()};
    }
  }
  return {true, std::to_string(pairs.size()) + " ordered pairs equal, " + std::to_string(witness_pairs) + " witnessed"};
}

Outcome orthogonality() {
  const auto pairs = ordered_pairs();
  for (const auto& [a1, a2] : pairs) {
    for (std::uint64_t n = 1; n <= 360; ++n) {
      if (!orthogonality_matrix(a1, a2, n).is_scaled_identity()) {
        return {false, a1.name() + "/" + a2.name() + " n=" + std::to_string(n)};
      }
    }
  }
  const auto bad = orthogonality_matrix(genram::testing::ortho_a1(), genram::testing::ortho_a2(), 64);
  std::size_t row = 0;
  while (row < bad.index.size() && bad.index[row] != 8) ++row;
  if (row == bad.index.size() || bad.index[0] != 1) return {false, "counterexample index set differs"};
  const ExactInt entry = bad.at(row, 0);
  if (entry != -72) return {false, "counterexample entry " + str(entry)};
  return {true, std::to_string(pairs.size()) + " pairs to n=360; counterexample entry -72"};
}

Outcome sum_over_divisors() {
  const auto m1 = genram::testing::mixed_spec(kMixedSeed), m2 = genram::testing::mixed_spec(kMixedSeed + 1);
  const std::vector<std::pair<AFunctionSpec, AFunctionSpec>> pairs = {{D(), U()}, {U(), D()}, {m1, m2}};
  for (const auto& [a1, a2] : pairs) {
    for (std::uint64_t m = 1; m <= 500; ++m) {
      for (std::uint64_t n = 1; n <= 500; ++n) {
        ExactInt total = 0;
        for (auto d : regular_divisors(a2, n)) total += ramanujan_C(a1, a2, m, d);
        const ExactInt expected = a1.contains(n, m) ? ExactInt(n) : ExactInt(0);
        if (total != expected) return {false, a1.name() + "/" + a2.name() + " m=" + std::to_string(m) + " n=" + std::to_string(n)};
      }
    }
  }
  return {true, "3 pairs to 500"};
}

Outcome abs_bound() {
  const auto pairs = ordered_pairs();
  for (const auto& [a1, a2] : pairs) {
    for (std::uint64_t m = 1; m <= 300; ++m) {
      for (std::uint64_t n = 1; n <= 300; ++n) {
        ExactInt total = 0;
        for (auto d : regular_divisors(a2, n)) total += abs(ramanujan_C(a1, a2, m, d));
        const std::uint64_t g = gcd_AA(a1, a2, m, n);
        const ExactInt predicted = ExactInt(g) << omega(n / g);
        if (total != predicted) return {false, a1.name() + "/" + a2.name() + " m=" + std::to_string(m) + " n=" + std::to_string(n)};
      }
    }
  }
  return {true, std::to_string(pairs.size()) + " ordered pairs to 300"};
}

Outcome gcd_suite() {
  const auto m1 = genram::testing::mixed_spec(kMixedSeed);
  const std::vector<std::pair<AFunctionSpec, AFunctionSpec>> pairs = {
      {D(), U()}, {m1, U()}, {m1, genram::testing::mixed_spec(kMixedSeed + 2)}};
  VerifyOptions opt;
  opt.max = 120;
  std::uint64_t checked = 0;
  for (const auto& [a1, a2] : pairs) {
    const auto r = verify_identity(Identity::GcdProps, a1, a2, opt);
    checked += r.checked;
    if (!r.pass) return {false, a1.name() + "/" + a2.name() + " " + r.counterexample.value_or("")};
  }
  return {true, std::to_string(checked) + " (m, n) points, five properties each"};
}

Outcome totient() {
  for (const auto& spec : {D(), U(), genram::testing::mixed_2u_3d()}) {
    for (std::uint64_t n = 1; n <= 2000; ++n) {
      if (totient_A(spec, n) != oracle::totient_by_counting(spec, n).value) {
        return {false, spec.name() + " n=" + std::to_string(n)};
      }
    }
  }
  return {true, "3 specs to 2000"};
}

Outcome trig() {
  std::vector<AFunctionSpec> a2s = {D(), U(), genram::testing::mixed_2u_3d()};
  for (auto& s : genram::testing::mixed_specs(2, kMixedSeed)) a2s.push_back(s);
  double worst = 0.0;
  for (const auto& a2 : a2s) {
    for (std::uint64_t n = 1; n <= 100; ++n) {
      const auto nf = factorize(n);
      for (std::uint64_t m = 1; m <= n; ++m) {
        const double c = static_cast<double>(ramanujan_C_i64(D(), a2, m, nf));
        worst = std::max(worst, std::abs(trig_S(D(), a2, m, n) - c));
      }
    }
  }
  if (worst > kTrigTolerance) return {false, "max |S - C| = " + std::to_string(worst)};
  const auto witness = genram::testing::mixed_2u_3d();
  if (!is_primitive(witness, 4)) return {false, "witness spec lost 2^2 primitivity"};
  for (std::uint64_t m = 1; m <= 18; ++m) {
    const auto s = trig_S(witness, U(), m, 18);
    const double dist = std::hypot(s.real() - std::round(s.real()), s.imag() - std::round(s.imag()));
    if (dist > kTrigNonInteger) {
      std::ostringstream os;
      os << "max |S - C| = " << worst << "; witness m=" << m << " S=" << s.real() << (s.imag() < 0 ? "" : "+")
         << s.imag() << "i";
      return {true, os.str()};
    }
  }
  return {false, "no non-integer S(m, 18) for m <= 18"};
}

Outcome mobius_lemma() {
  const auto pairs = ordered_pairs();
  for (const auto& [a1, a2] : pairs) {
    for (std::uint64_t k = 1; k <= 200; ++k) {
      for (std::uint64_t n = 1; n <= 200; ++n) {
        bool trivial = true;
        for (auto d : regular_divisors(a2, n)) trivial = trivial && (d == 1 || !a1.contains(d, k));
        if (mobius_partial_sum(a1, a2, k, n) != (trivial ? 1 : 0)) {
          return {false, a1.name() + "/" + a2.name() + " k=" + std::to_string(k) + " n=" + std::to_string(n)};
        }
      }
    }
  }
  const auto value = mobius_partial_sum(U(), D(), 4, 4);
  if (value != 1) return {false, "counterexample evaluates to " + str(value)};
  return {true, std::to_string(pairs.size()) + " ordered pairs to 200; counterexample = 1"};
}

Outcome lattice_laws() {
  auto eq = [](const AFunctionSpec& x, const AFunctionSpec& y) { return same_types(x, y, 13, 4096); };
  std::size_t invalid_joins = 0;
  for (std::uint64_t t = 0; t < 50; ++t) {
    const auto a = genram::testing::mixed_spec(1000 + 3 * t);
    const auto b = genram::testing::mixed_spec(1001 + 3 * t);
    const auto c = genram::testing::mixed_spec(1002 + 3 * t);
    const std::string at = "triple " + std::to_string(t);
    if (!eq(join_table(a, a), a) || !eq(meet_table(a, a), a)) return {false, at + " idempotence"};
    if (!eq(join_table(a, meet_table(a, b)), a) || !eq(meet_table(a, join_table(a, b)), a)) return {false, at + " absorption"};
    if (!eq(join_table(a, meet_table(b, c)), meet_table(join_table(a, b), join_table(a, c)))) return {false, at + " join over meet"};
    if (!eq(meet_table(a, join_table(b, c)), join_table(meet_table(a, b), meet_table(a, c)))) return {false, at + " meet over join"};
    if (!le(U(), a) || !le(a, D())) return {false, at + " bounds"};
    if (!validate_spec(meet_table(a, b)).ok()) return {false, at + " meet is not regular"};
    if (!validate_spec(join_table(a, b)).ok()) ++invalid_joins;
  }
  return {true, "50 triples; " + std::to_string(invalid_joins) + " pointwise joins fail the chain condition"};
}

Outcome expansion_numeric() {
  TableOptions opt;
  opt.q_max = 100000;
  double worst = 0.0;
  std::string worst_at;
  for (const auto& spec : {D(), U(), genram::testing::mixed_2u_3d()}) {
    const auto table = sigma_table(spec, 1.0, 1, opt);
    std::vector<std::vector<std::uint64_t>> targets;
    for (std::uint64_t n = 1; n <= 30; ++n) targets.push_back({n});
    for (const auto& r : evaluate_expansion(table, targets)) {
      const double rel = r.residual / r.target->to_double();
      if (rel > worst) {
        worst = rel;
        worst_at = spec.name() + " n=" + std::to_string(r.n[0]);
      }
    }
  }
  std::ostringstream os;
  os << "max relative residual " << worst << " at " << worst_at;
  return {worst <= kExpansionRelative, os.str()};
}

// g_A(n) = sigma_A(n) / n as doubles, tabulated once.
ArithmeticFn tabulated_g(const AFunctionSpec& a, std::uint64_t limit) {
  auto values = std::make_shared<std::vector<double>>(limit + 1, 0.0);
  for (std::uint64_t n = 1; n <= limit; ++n) (*values)[n] = to_double(g_A(a, n));
  auto g = make_fn([values](std::uint64_t n) { return Value(values->at(n)); }, "g_A");
  g.majorant = Majorant{1.0, 1.0, false};
  return g;
}

Outcome dual_path() {
  constexpr std::uint64_t kQ = 12;
  constexpr std::uint64_t kGeneralCutoff1 = 20000, kGeneralCutoff2 = 40, kGcdCutoff = 100000;
  std::vector<AFunctionSpec> specs = {D(), U(), genram::testing::mixed_spec(kMixedSeed)};
  std::size_t checks = 0;
  double worst_ratio = 0.0;
  std::string worst_at;
  for (const auto& a : specs) {
    const auto g = tabulated_g(a, std::max(kGcdCutoff, kGeneralCutoff1 * kQ));
    for (std::size_t k = 1; k <= 2; ++k) {
      std::vector<std::uint64_t> q(k, 1);
      bool done = false;
      while (!done) {
        const double closed = coeff_sigma(a, 1.0, q);
        const auto gcd_form = coeff_gcd_form(a, U(), g, q, kGcdCutoff);
        Coefficient general;
        if (k == 1) {
          general = coeff_general(a, U(), g, q, kGeneralCutoff1);
        } else {
          auto f = make_fn_k(2, [a, g](std::span<const std::uint64_t> n) { return g(gcd_k(a, n)); });
          f.majorant = Majorant{1.0, 1.0, true};
          general = coeff_general(a, U(), f, q, kGeneralCutoff2);
        }
        for (const auto& c : {gcd_form, general}) {
          const double diff = std::abs(c.value - closed);
          const double allowed = c.tail + kDualPathSlack;
          ++checks;
          if (diff / allowed >= worst_ratio) {
            worst_ratio = diff / allowed;
            std::ostringstream os;
            os << a.name() << " q=(" << q[0] << (k == 2 ? "," + std::to_string(q[1]) : std::string()) << ") diff " << diff
               << " tail " << c.tail;
            worst_at = os.str();
          }
          if (diff > allowed) return {false, worst_at};
        }
        for (std::size_t i = k; i-- > 0;) {
          if (++q[i] <= kQ) break;
          q[i] = 1;
          if (i == 0) done = true;
        }
      }
    }
  }
  std::ostringstream os;
  os << checks << " coefficients; max |diff| / (tail + slack) = " << worst_ratio << " at " << worst_at;
  return {true, os.str()};
}

Outcome mixed_spec_values() {
  const auto a = genram::testing::mixed_2u_3d();
  auto g = make_fn([a](std::uint64_t n) { return Value(g_A(a, n)); });
  const auto at8 = mobius_invert(D(), g, 8);
  const auto at27 = mobius_invert(U(), g, 27);
  const ExactRat want8 = ExactRat(1, 8) - ExactRat(1, 4);
  const ExactRat want27 = ExactRat(1, 27) + ExactRat(1, 9) + ExactRat(1, 3);
  const bool ok = at8.is_exact() && at27.is_exact() && at8.exact() == want8 && at27.exact() == want27;
  return {ok, "(mu * g)(8) = " + at8.str() + ", (mu_U x g)(27) = " + at27.str()};
}

Outcome two_variable() {
  TableOptions opt;
  opt.q_max = 10000;
  double worst = 0.0;
  std::string worst_at;
  for (const auto& spec : {D(), U()}) {
    const auto table = sigma_table(spec, 1.0, 2, opt);
    std::vector<std::vector<std::uint64_t>> targets;
    for (std::uint64_t a = 1; a <= 12; ++a) {
      for (std::uint64_t b = 1; b <= 12; ++b) targets.push_back({a, b});
    }
    for (const auto& r : evaluate_expansion(table, targets)) {
      const double rel = r.residual / r.target->to_double();
      if (rel > worst) {
        worst = rel;
        worst_at = spec.name() + " n=(" + std::to_string(r.n[0]) + "," + std::to_string(r.n[1]) + ")";
      }
    }
  }
  std::ostringstream os;
  os << "max relative residual " << worst << " at " << worst_at;
  return {worst <= kTwoVariableRelative, os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"classical agreement with exponential sums", classical_agreement},
      {"fast path equals direct enumeration", fast_path_soundness},
      {"Holder identity and its converse", holder},
      {"orthogonality and counterexample", orthogonality},
      {"sum over regular divisors", sum_over_divisors},
      {"absolute-sum bound", abs_bound},
      {"generalized gcd properties", gcd_suite},
      {"totient closed form vs counting", totient},
      {"trigonometric form", trig},
      {"Mobius partial-sum lemma", mobius_lemma},
      {"lattice laws", lattice_laws},
      {"g_A expansion at q_max 1e5", expansion_numeric},
      {"dual-path coefficients", dual_path},
      {"mixed-spec convolution values", mixed_spec_values},
      {"two-variable sigma expansion", two_variable},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str(),
                secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
