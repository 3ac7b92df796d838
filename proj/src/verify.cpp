#include "genram/verify.hpp"

#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <sstream>

#include "genram/ramsum.hpp"

namespace genram {

namespace {

struct Sweep {
  const VerifyOptions& opt;
  VerificationReport& report;

  bool done() const { return !report.pass; }

  void fail(const std::string& what) {
    report.pass = false;
    report.counterexample = what;
  }

  // Calls visit(x) for x in 1..max, or for random samples; stops on failure.
  template <typename Visit>
  void singles(Visit&& visit) {
    if (opt.samples) {
      std::mt19937_64 rng(opt.seed);
      std::uniform_int_distribution<std::uint64_t> pick(1, opt.max);
      for (std::uint64_t i = 0; i < *opt.samples && !done(); ++i) {
        visit(pick(rng));
        ++report.checked;
      }
      return;
    }
    for (std::uint64_t x = 1; x <= opt.max && !done(); ++x) {
      visit(x);
      ++report.checked;
    }
  }

  template <typename Visit>
  void pairs(Visit&& visit) {
    if (opt.samples) {
      std::mt19937_64 rng(opt.seed);
      std::uniform_int_distribution<std::uint64_t> pick(1, opt.max);
      for (std::uint64_t i = 0; i < *opt.samples && !done(); ++i) {
        const auto m = pick(rng);
        const auto n = pick(rng);
        visit(m, n);
        ++report.checked;
      }
      return;
    }
    for (std::uint64_t m = 1; m <= opt.max && !done(); ++m) {
      for (std::uint64_t n = 1; n <= opt.max && !done(); ++n) {
        visit(m, n);
        ++report.checked;
      }
    }
  }

  template <typename Visit>
  void triples(Visit&& visit) {
    if (opt.samples) {
      std::mt19937_64 rng(opt.seed);
      std::uniform_int_distribution<std::uint64_t> pick(1, opt.max);
      for (std::uint64_t i = 0; i < *opt.samples && !done(); ++i) {
        const auto x = pick(rng);
        const auto y = pick(rng);
        const auto z = pick(rng);
        visit(x, y, z);
        ++report.checked;
      }
      return;
    }
    for (std::uint64_t x = 1; x <= opt.max && !done(); ++x) {
      for (std::uint64_t y = 1; y <= opt.max && !done(); ++y) {
        for (std::uint64_t z = 1; z <= opt.max && !done(); ++z) {
          visit(x, y, z);
          ++report.checked;
        }
      }
    }
  }
};

std::string str(const ExactInt& v) { return v.str(); }

void verify_holder(const AFunctionSpec& a1, const AFunctionSpec& a2, Sweep& sweep) {
  sweep.pairs([&](std::uint64_t m, std::uint64_t n) {
    const auto c = ramanujan_C(a1, a2, m, n);
    const auto phi = von_sterneck_Phi(a1, a2, m, n);
    if (ExactRat(c) != phi) {
      sweep.fail("m=" + std::to_string(m) + " n=" + std::to_string(n) + " C=" + str(c) + " Phi=" + to_string(phi));
    }
  });
  if (sweep.report.order && sweep.report.order->order == Order::NotLe) {
    if (auto w = find_holder_witness(a1, a2)) {
      sweep.report.pass = false;
      sweep.report.counterexample = "witness m=" + std::to_string(w->m) + " n=" + std::to_string(w->n.p) + "^" +
                                    std::to_string(w->n.k) + " C=" + str(w->ramanujan) +
                                    " Phi=" + to_string(w->von_sterneck);
    }
  }
}

void verify_orthogonality(const AFunctionSpec& a1, const AFunctionSpec& a2, Sweep& sweep) {
  sweep.singles([&](std::uint64_t n) {
    const auto mat = orthogonality_matrix(a1, a2, n);
    const std::size_t size = mat.index.size();
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) {
        const ExactInt expected = i == j ? ExactInt(n) : ExactInt(0);
        if (mat.at(i, j) != expected) {
          sweep.fail("n=" + std::to_string(n) + " delta=" + std::to_string(mat.index[i]) +
                     " gamma=" + std::to_string(mat.index[j]) + " entry=" + str(mat.at(i, j)) +
                     " expected=" + str(expected));
          return;
        }
      }
    }
  });
}

void verify_abs_bound(const AFunctionSpec& a1, const AFunctionSpec& a2, Sweep& sweep) {
  sweep.pairs([&](std::uint64_t m, std::uint64_t n) {
    const auto r = abs_sum(a1, a2, m, n);
    if (r.value != r.predicted) {
      sweep.fail("m=" + std::to_string(m) + " n=" + std::to_string(n) + " sum=" + str(r.value) +
                 " predicted=" + str(r.predicted) + " g=" + std::to_string(r.g));
    }
  });
}

void verify_mult(const AFunctionSpec& a1, const AFunctionSpec& a2, Sweep& sweep) {
  sweep.triples([&](std::uint64_t m, std::uint64_t x, std::uint64_t y) {
    if (std::gcd(x, y) != 1) return;
    // In n: C(m, x) C(m, y) = C(m, xy).
    const auto left = ramanujan_C(a1, a2, m, x) * ramanujan_C(a1, a2, m, y);
    const auto right = ramanujan_C(a1, a2, m, x * y);
    if (left != right) {
      sweep.fail("n-multiplicativity m=" + std::to_string(m) + " n1=" + std::to_string(x) +
                 " n2=" + std::to_string(y) + " product=" + str(left) + " C(m,n1n2)=" + str(right));
      return;
    }
    // In m: mu_{A2}(n) C(xy, n) = C(x, n) C(y, n) when mu_{A2}(n) != 0; here n = m.
    const int mu = mobius_A(a2, m);
    if (mu == 0) return;
    const auto lhs = mu * ramanujan_C(a1, a2, x * y, m);
    const auto rhs = ramanujan_C(a1, a2, x, m) * ramanujan_C(a1, a2, y, m);
    if (lhs != rhs) {
      sweep.fail("m-multiplicativity n=" + std::to_string(m) + " m1=" + std::to_string(x) +
                 " m2=" + std::to_string(y) + " mu*C(m1m2,n)=" + str(lhs) + " product=" + str(rhs));
    }
  });
}

void verify_gcd_props(const AFunctionSpec& a1, const AFunctionSpec& a2, Sweep& sweep) {
  sweep.pairs([&](std::uint64_t m, std::uint64_t n) {
    const std::string at = "m=" + std::to_string(m) + " n=" + std::to_string(n);
    const std::uint64_t g = gcd_AA(a1, a2, m, n);

    // Multiplicativity: split n into coprime factors n1 * n2.
    for (std::uint64_t n1 = 1; n1 <= n; ++n1) {
      if (n % n1 != 0 || std::gcd(n1, n / n1) != 1) continue;
      const auto product = gcd_AA(a1, a2, m, n1) * gcd_AA(a1, a2, m, n / n1);
      if (product != g) {
        sweep.fail("multiplicativity " + at + " n1=" + std::to_string(n1) + " product=" + std::to_string(product) +
                   " gcd=" + std::to_string(g));
        return;
      }
    }

    const std::uint64_t classical = std::gcd(m, n);
    for (std::uint64_t d = 1; d <= classical; ++d) {
      if (classical % d != 0) continue;
      const bool in_mn = a1.contains(d, m) && a2.contains(d, n);
      const bool in_gg = a1.contains(d, g) && a2.contains(d, g);
      if (in_mn != in_gg) {
        sweep.fail("common-divisor characterization " + at + " d=" + std::to_string(d) + " g=" + std::to_string(g));
        return;
      }
      // Partial converse: d in A1(m) ∩ A2(n) and gcd(m/d, n/d) = 1 force gcd(m, n) = d.
      if (in_mn && gcd_AA(a1, a2, m / d, n / d) == 1 && g != d) {
        sweep.fail("partial converse " + at + " d=" + std::to_string(d) + " gcd=" + std::to_string(g));
        return;
      }
    }

    if (const auto q = gcd_AA(a1, a2, m / g, n / g); q != 1) {
      sweep.fail("quotient coprimality " + at + " g=" + std::to_string(g) + " gcd(m/g,n/g)=" + std::to_string(q));
      return;
    }

    // m, n in A1(t1) ∩ A2(t2) for some t1, t2, decided at t = lcm(m, n).
    const std::uint64_t l = std::lcm(m, n);
    if (a1.contains(m, l) && a1.contains(n, l) && a2.contains(m, l) && a2.contains(n, l)) {
      if (g != classical || !a1.contains(classical, m) || !a2.contains(classical, n)) {
        sweep.fail("common regular multiple " + at + " gcd_AA=" + std::to_string(g) +
                   " gcd=" + std::to_string(classical));
      }
    }
  });
}

void verify_sum_div(const AFunctionSpec& a1, const AFunctionSpec& a2, Sweep& sweep) {
  sweep.pairs([&](std::uint64_t m, std::uint64_t n) {
    const auto total = sum_over_regular_divisors(a1, a2, m, n);
    const ExactInt expected = a1.contains(n, m) ? ExactInt(n) : ExactInt(0);
    if (total != expected) {
      sweep.fail("m=" + std::to_string(m) + " n=" + std::to_string(n) + " sum=" + str(total) +
                 " expected=" + str(expected));
    }
  });
}

void verify_trig(const AFunctionSpec& a1, const AFunctionSpec& a2, Sweep& sweep) {
  constexpr double kTolerance = 1e-9;
  sweep.singles([&](std::uint64_t n) {
    for (std::uint64_t m = 1; m <= n; ++m) {
      const auto s = trig_S(a1, a2, m, n);
      const auto c = ramanujan_C_i64(a1, a2, m, factorize(n));
      if (std::abs(s - std::complex<double>(static_cast<double>(c), 0.0)) > kTolerance) {
        std::ostringstream os;
        os.precision(12);
        os << "m=" << m << " n=" << n << " S=" << s.real() << (s.imag() < 0 ? "-" : "+") << std::fabs(s.imag())
           << "i C=" << c;
        sweep.fail(os.str());
        return;
      }
    }
  });
}

void verify_mobius_lemma(const AFunctionSpec& a1, const AFunctionSpec& a2, Sweep& sweep) {
  sweep.pairs([&](std::uint64_t k, std::uint64_t n) {
    const auto total = mobius_partial_sum(a1, a2, k, n);
    const ExactInt expected = gcd_AA(a1, a2, k, n) == 1 ? 1 : 0;
    if (total != expected) {
      sweep.fail("k=" + std::to_string(k) + " n=" + std::to_string(n) + " sum=" + str(total) +
                 " expected=" + str(expected));
    }
  });
}

bool order_conditional(Identity identity) {
  switch (identity) {
    case Identity::Holder:
    case Identity::Orthogonality:
    case Identity::AbsBound:
    case Identity::MobiusLemma: return true;
    default: return false;
  }
}

}  // namespace

std::string to_string(Identity identity) {
  switch (identity) {
    case Identity::Holder: return "holder";
    case Identity::Orthogonality: return "orthogonality";
    case Identity::AbsBound: return "abs-bound";
    case Identity::Mult: return "mult";
    case Identity::GcdProps: return "gcd-props";
    case Identity::SumDiv: return "sum-div";
    case Identity::Trig: return "trig";
    case Identity::MobiusLemma: return "mobius-lemma";
  }
  return "unknown";
}

const std::vector<Identity>& all_identities() {
  static const std::vector<Identity> all = {Identity::Holder, Identity::Orthogonality, Identity::AbsBound,
                                            Identity::Mult,   Identity::GcdProps,      Identity::SumDiv,
                                            Identity::Trig,   Identity::MobiusLemma};
  return all;
}

std::optional<Identity> parse_identity(std::string_view name) {
  for (auto id : all_identities()) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

VerificationReport verify_identity(Identity identity, const AFunctionSpec& a1, const AFunctionSpec& a2,
                                   const VerifyOptions& options) {
  if (options.max == 0) throw std::invalid_argument("verify: max must be positive");
  VerificationReport report;
  report.identity = identity;
  report.a1 = a1.name();
  report.a2 = a2.name();
  if (order_conditional(identity)) report.order = partial_le(a2, a1);
  if (identity == Identity::Trig) {
    const bool complete = a1.base() == BaseRule::Complete && a1.overrides().empty();
    report.notes.push_back(std::string("A1 = D: ") + (complete ? "yes" : "no"));
  }

  const std::string bound = std::to_string(options.max);
  switch (identity) {
    case Identity::Orthogonality:
    case Identity::Trig: report.range = "1 <= n <= " + bound; break;
    case Identity::Mult: report.range = "1 <= m, n1, n2 <= " + bound; break;
    case Identity::MobiusLemma: report.range = "1 <= k, n <= " + bound; break;
    default: report.range = "1 <= m, n <= " + bound; break;
  }
  if (options.samples) {
    report.range += " (" + std::to_string(*options.samples) + " samples, seed " + std::to_string(options.seed) + ")";
  } else {
    report.range += " (exhaustive)";
  }

  Sweep sweep{options, report};
  switch (identity) {
    case Identity::Holder: verify_holder(a1, a2, sweep); break;
    case Identity::Orthogonality: verify_orthogonality(a1, a2, sweep); break;
    case Identity::AbsBound: verify_abs_bound(a1, a2, sweep); break;
    case Identity::Mult: verify_mult(a1, a2, sweep); break;
    case Identity::GcdProps: verify_gcd_props(a1, a2, sweep); break;
    case Identity::SumDiv: verify_sum_div(a1, a2, sweep); break;
    case Identity::Trig: verify_trig(a1, a2, sweep); break;
    case Identity::MobiusLemma: verify_mobius_lemma(a1, a2, sweep); break;
  }
  return report;
}

std::string format_report(const VerificationReport& r) {
  std::ostringstream os;
  os << "identity: " << to_string(r.identity) << '\n';
  os << "a1: " << r.a1 << '\n';
  os << "a2: " << r.a2 << '\n';
  if (r.order) {
    os << "order: " << to_string(r.order->order) << " (checked to " << r.order->bound << ")";
    if (r.order->witness) os << " witness " << r.order->witness->p << '^' << r.order->witness->k;
    os << '\n';
  }
  for (const auto& note : r.notes) os << "note: " << note << '\n';
  os << "range: " << r.range << '\n';
  os << "checked: " << r.checked << '\n';
  os << "status: " << (r.pass ? "PASS" : "FAIL") << '\n';
  if (r.counterexample) os << "counterexample: " << *r.counterexample << '\n';
  return os.str();
}

}  // namespace genram
