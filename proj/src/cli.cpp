#include "genram/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "genram/afunc.hpp"
#include "genram/expand.hpp"
#include "genram/ramsum.hpp"
#include "genram/spec_file.hpp"
#include "genram/verify.hpp"

namespace genram {

namespace {

using nlohmann::json;

struct Common {
  std::string a1 = "D";
  std::string a2 = "D";
  std::uint64_t bound = kDefaultValidationBound;
};

struct EvalArgs {
  std::string what;
  std::uint64_t m = 1;
  std::uint64_t n = 1;
};

struct TableArgs {
  std::string what = "C";
  std::uint64_t m_max = 12;
  std::uint64_t n_max = 12;
  std::string format = "text";
  std::string out;
};

struct VerifyArgs {
  std::string identity;
  std::uint64_t max = 100;
  std::uint64_t samples = 0;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "text";
};

struct ExpandArgs {
  std::string a = "D";
  std::string kind = "sigma";
  std::string method = "closed";
  double s = 1.0;
  std::size_t k = 1;
  std::vector<std::uint64_t> n;
  std::uint64_t q_max = 1000;
  std::uint64_t inner = 1000;
  std::uint64_t prime_cutoff = 100000;
  std::string domain = "lcm";
  unsigned threads = 1;
  std::string format = "text";
  std::string coeffs_out;
};

struct LatticeArgs {
  std::string op;
  std::string out;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string complex_str(std::complex<double> z) {
  std::ostringstream os;
  os.precision(15);
  os << z.real() << (std::signbit(z.imag()) ? "-" : "+") << std::fabs(z.imag()) << 'i';
  return os.str();
}

// Writes to --out when given, else to the main stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

int cmd_eval(const Common& c, const EvalArgs& a, std::ostream& out) {
  const auto a1 = load_spec(c.a1, c.bound);
  const auto a2 = load_spec(c.a2, c.bound);
  if (a.what == "C") {
    out << ramanujan_C(a1, a2, a.m, a.n) << '\n';
  } else if (a.what == "Phi") {
    out << to_string(von_sterneck_Phi(a1, a2, a.m, a.n)) << '\n';
  } else if (a.what == "S") {
    out << complex_str(trig_S(a1, a2, a.m, a.n)) << '\n';
  } else if (a.what == "gcd") {
    out << gcd_AA(a1, a2, a.m, a.n) << '\n';
  } else if (a.what == "phiA") {
    out << totient_A(a2, a.n) << '\n';
  } else if (a.what == "muA") {
    out << mobius_A(a2, a.n) << '\n';
  }
  return kExitOk;
}

// Exact cell value; integers stay integers in JSON, rationals become strings.
json cell_json(const std::string& what, const AFunctionSpec& a1, const AFunctionSpec& a2, std::uint64_t m,
               std::uint64_t n) {
  if (what == "C") return ramanujan_C_i64(a1, a2, m, factorize(n));
  if (what == "gcd") return gcd_AA(a1, a2, m, n);
  const auto phi = von_sterneck_Phi(a1, a2, m, n);
  if (is_integer(phi)) return boost::multiprecision::numerator(phi).convert_to<long long>();
  return to_string(phi);
}

std::string cell_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

int cmd_table(const Common& c, const TableArgs& a, std::ostream& out) {
  const auto a1 = load_spec(c.a1, c.bound);
  const auto a2 = load_spec(c.a2, c.bound);
  Sink sink(a.out, out);
  auto& os = sink.get();
  if (a.format == "csv") {
    os << "m,n,value\n";
    for (std::uint64_t m = 1; m <= a.m_max; ++m) {
      for (std::uint64_t n = 1; n <= a.n_max; ++n) os << m << ',' << n << ',' << cell_text(cell_json(a.what, a1, a2, m, n)) << '\n';
    }
  } else if (a.format == "json") {
    json doc;
    doc["schema"] = 1;
    doc["what"] = a.what;
    doc["a1"] = a1.name();
    doc["a2"] = a2.name();
    doc["m_max"] = a.m_max;
    doc["n_max"] = a.n_max;
    auto& cells = doc["cells"] = json::array();
    for (std::uint64_t m = 1; m <= a.m_max; ++m) {
      for (std::uint64_t n = 1; n <= a.n_max; ++n) cells.push_back({{"m", m}, {"n", n}, {"value", cell_json(a.what, a1, a2, m, n)}});
    }
    os << doc.dump(2) << '\n';
  } else {
    std::vector<std::vector<std::string>> rows;
    std::size_t width = 1;
    for (std::uint64_t m = 1; m <= a.m_max; ++m) {
      auto& row = rows.emplace_back();
      for (std::uint64_t n = 1; n <= a.n_max; ++n) {
        row.push_back(cell_text(cell_json(a.what, a1, a2, m, n)));
        width = std::max(width, row.back().size());
      }
    }
    width = std::max(width, std::to_string(std::max(a.m_max, a.n_max)).size());
    const auto w = static_cast<int>(width);
    os << a.what << '_' << '(' << a1.name() << ',' << a2.name() << ")(m,n)\n";
    os << std::setw(w) << "m\\n";
    for (std::uint64_t n = 1; n <= a.n_max; ++n) os << ' ' << std::setw(w) << n;
    os << '\n';
    for (std::uint64_t m = 1; m <= a.m_max; ++m) {
      os << std::setw(w) << m;
      for (const auto& cell : rows[m - 1]) os << ' ' << std::setw(w) << cell;
      os << '\n';
    }
  }
  return kExitOk;
}

json report_to_json(const VerificationReport& r) {
  json doc;
  doc["schema"] = 1;
  doc["identity"] = to_string(r.identity);
  doc["a1"] = r.a1;
  doc["a2"] = r.a2;
  doc["range"] = r.range;
  doc["checked"] = r.checked;
  doc["status"] = r.pass ? "PASS" : "FAIL";
  doc["counterexample"] = r.counterexample ? json(*r.counterexample) : json(nullptr);
  if (r.order) {
    doc["order"] = {{"status", to_string(r.order->order)}, {"bound", r.order->bound}};
    if (r.order->witness) doc["order"]["witness"] = {{"p", r.order->witness->p}, {"k", r.order->witness->k}};
  }
  doc["notes"] = r.notes;
  return doc;
}

int cmd_verify(const Common& c, const VerifyArgs& a, std::ostream& out) {
  const auto identity = parse_identity(a.identity);
  if (!identity) throw UsageError("unknown identity '" + a.identity + "'");
  const auto a1 = load_spec(c.a1, c.bound);
  const auto a2 = load_spec(c.a2, c.bound);
  VerifyOptions opt;
  opt.max = a.max;
  opt.seed = a.seed;
  if (a.samples > 0) opt.samples = a.samples;
  const auto report = verify_identity(*identity, a1, a2, opt);
  if (a.format == "json") {
    out << report_to_json(report).dump(2) << '\n';
  } else {
    out << format_report(report);
  }
  return report.pass ? kExitOk : kExitFail;
}

std::string fixed(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

int cmd_expand(const Common& c, const ExpandArgs& a, std::ostream& out) {
  const auto spec = load_spec(a.a, c.bound);
  std::vector<std::uint64_t> n = a.n;
  if (n.empty()) n.assign(a.k, 1);
  if (n.size() != a.k) throw UsageError("expand: expected " + std::to_string(a.k) + " values for -n");

  TableOptions opt;
  opt.q_max = a.q_max;
  opt.domain = a.domain == "max" ? Domain::MaxCoordinate : Domain::Lcm;
  opt.inner_cutoff = a.inner;
  opt.prime_cutoff = a.prime_cutoff;
  opt.threads = a.threads;

  ExpansionCoefficients table;
  if (a.method == "gcd-form") {
    const bool sigma = a.kind == "sigma";
    const double s = a.s;
    auto g = make_fn(
        [spec, s, sigma](std::uint64_t x) {
          const auto v = sigma ? sigma_A_s(spec, s, x) : phi_A_s(spec, s, x);
          if (v.is_exact() && s == std::floor(s) && s >= 0 && s <= 64) {
            return Value(v.exact() / ExactRat(boost::multiprecision::pow(ExactInt(x), static_cast<unsigned>(s))));
          }
          return Value(v.to_double() * std::pow(static_cast<double>(x), -s));
        },
        a.kind);
    g.majorant = Majorant{1.0, s, false};
    table = gcd_form_table(spec, AFunctionSpec::unitary(), g, a.k, opt);
    table.s = a.s;
  } else if (a.kind == "phi") {
    table = phi_table(spec, a.s, a.k, opt);
  } else {
    table = sigma_table(spec, a.s, a.k, opt);
  }

  if (!a.coeffs_out.empty()) {
    std::ofstream file(a.coeffs_out);
    if (!file) throw UsageError("cannot open output file '" + a.coeffs_out + "'");
    if (a.coeffs_out.size() >= 5 && a.coeffs_out.substr(a.coeffs_out.size() - 5) == ".json") {
      file << coefficients_json(table) << '\n';
    } else {
      write_coefficients_csv(file, table);
    }
  }

  const auto report = evaluate_expansion(table, n);
  if (a.format == "json") {
    out << report_json(report) << '\n';
    return kExitOk;
  }
  out << "spec: " << spec.name() << '\n';
  out << "kind: " << to_string(table.kind) << " (s=" << a.s << ", k=" << a.k << ", " << a.method << ")\n";
  out << "n:";
  for (auto x : n) out << ' ' << x;
  out << '\n';
  out << "target: " << report.target->str() << " = " << fixed(report.target->to_double()) << '\n';
  out << "partial_sum: " << fixed(report.partial_sum) << '\n';
  out << "residual: " << fixed(report.residual) << '\n';
  out << "series_tail_bound: " << fixed(report.series_tail_bound) << '\n';
  out << "coefficient_error_bound: " << fixed(report.coefficient_error_bound) << '\n';
  out << "terms: " << report.terms << '\n';
  out << "q_max: " << report.q_max << " (" << to_string(report.domain) << ")\n";
  if (report.inner_cutoff) out << "inner_cutoff: " << report.inner_cutoff << '\n';
  if (report.prime_cutoff) out << "prime_cutoff: " << report.prime_cutoff << '\n';
  return kExitOk;
}

int cmd_lattice(const Common& c, const LatticeArgs& a, std::ostream& out) {
  const auto a1 = load_spec(c.a1, c.bound);
  const auto a2 = load_spec(c.a2, c.bound);
  if (a.op == "compare") {
    const auto le = partial_le(a1, a2, c.bound);
    const auto ge = partial_le(a2, a1, c.bound);
    if (le.order == Order::Le && ge.order == Order::Le) {
      out << a1.name() << " == " << a2.name() << '\n';
    } else if (le.order == Order::Le) {
      out << a1.name() << " <= " << a2.name() << '\n';
    } else if (ge.order == Order::Le) {
      out << a1.name() << " >= " << a2.name() << '\n';
    } else if (le.order == Order::Unknown || ge.order == Order::Unknown) {
      out << a1.name() << " ? " << a2.name() << '\n';
    } else {
      out << a1.name() << " incomparable " << a2.name() << '\n';
    }
    out << "checked to " << c.bound << '\n';
    return kExitOk;
  }
  const auto result = a.op == "join" ? lattice_join(a1, a2, c.bound) : lattice_meet(a1, a2, c.bound);
  Sink sink(a.out, out);
  sink.get() << format_spec(result);
  return kExitOk;
}

void add_specs(CLI::App* sub, Common& c) {
  sub->add_option("--a1", c.a1, "first A-function: D, U or a spec file")->capture_default_str();
  sub->add_option("--a2", c.a2, "second A-function: D, U or a spec file")->capture_default_str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized Ramanujan sums over pairs of regular A-functions", "genram"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--bound", common.bound, "validation bound for spec files")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate one value");
  add_specs(eval_cmd, common);
  eval_cmd->add_option("--what", eval.what, "C, Phi, S, gcd, phiA or muA (the last two use --a2)")
      ->required()
      ->check(CLI::IsMember({"C", "Phi", "S", "gcd", "phiA", "muA"}));
  eval_cmd->add_option("-m", eval.m)->check(CLI::PositiveNumber);
  eval_cmd->add_option("-n", eval.n)->check(CLI::PositiveNumber)->required();

  TableArgs table;
  auto* table_cmd = app.add_subcommand("table", "tabulate C, Phi or gcd over an m x n grid");
  add_specs(table_cmd, common);
  table_cmd->add_option("--what", table.what)->check(CLI::IsMember({"C", "Phi", "gcd"}))->capture_default_str();
  table_cmd->add_option("--mmax", table.m_max)->check(CLI::PositiveNumber)->capture_default_str();
  table_cmd->add_option("--nmax", table.n_max)->check(CLI::PositiveNumber)->capture_default_str();
  table_cmd->add_option("--format", table.format)->check(CLI::IsMember({"text", "csv", "json"}))->capture_default_str();
  table_cmd->add_option("--out", table.out, "write to a file instead of stdout");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "sweep an identity and report the first counterexample");
  add_specs(verify_cmd, common);
  std::vector<std::string> names;
  for (auto id : all_identities()) names.push_back(to_string(id));
  verify_cmd->add_option("identity", verify.identity)->required()->check(CLI::IsMember(names));
  verify_cmd->add_option("--max", verify.max)->check(CLI::PositiveNumber)->capture_default_str();
  verify_cmd->add_option("--samples", verify.samples, "random points instead of the full range")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", verify.seed)->capture_default_str();
  verify_cmd->add_option("--format", verify.format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  ExpandArgs expand;
  auto* expand_cmd = app.add_subcommand("expand", "truncated expansion of sigma_A^s or phi_A^s at a gcd target");
  expand_cmd->add_option("--a", expand.a, "A-function: D, U or a spec file")->capture_default_str();
  expand_cmd->add_option("--kind", expand.kind)->check(CLI::IsMember({"sigma", "phi"}))->capture_default_str();
  expand_cmd->add_option("--method", expand.method, "closed-form or inner-sum coefficients")
      ->check(CLI::IsMember({"closed", "gcd-form"}))
      ->capture_default_str();
  expand_cmd->add_option("--s", expand.s)->capture_default_str();
  expand_cmd->add_option("--k", expand.k)->check(CLI::Range(1, 8))->capture_default_str();
  expand_cmd->add_option("-n", expand.n, "target tuple, one value per coordinate")->check(CLI::PositiveNumber);
  expand_cmd->add_option("--qmax", expand.q_max)->check(CLI::PositiveNumber)->capture_default_str();
  expand_cmd->add_option("--domain", expand.domain, "lcm: lcm(q) <= qmax, max: every q_i <= qmax")
      ->check(CLI::IsMember({"lcm", "max"}))
      ->capture_default_str();
  expand_cmd->add_option("--inner", expand.inner, "inner-sum cutoff for --method gcd-form")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  expand_cmd->add_option("--prime-cutoff", expand.prime_cutoff)->check(CLI::Range(2ULL, 100000000ULL))->capture_default_str();
  expand_cmd->add_option("--threads", expand.threads)->check(CLI::PositiveNumber)->capture_default_str();
  expand_cmd->add_option("--format", expand.format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  expand_cmd->add_option("--coeffs-out", expand.coeffs_out, "coefficient table, CSV or .json");

  LatticeArgs lattice;
  auto* lattice_cmd = app.add_subcommand("lattice", "join, meet or compare two A-functions");
  add_specs(lattice_cmd, common);
  lattice_cmd->add_option("op", lattice.op)->required()->check(CLI::IsMember({"join", "meet", "compare"}));
  lattice_cmd->add_option("--out", lattice.out, "write the resulting spec to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (eval_cmd->parsed()) {
      if (eval.what != "phiA" && eval.what != "muA" && eval_cmd->count("-m") == 0) {
        throw UsageError("eval --what " + eval.what + " needs -m");
      }
      return cmd_eval(common, eval, out);
    }
    if (table_cmd->parsed()) return cmd_table(common, table, out);
    if (verify_cmd->parsed()) return cmd_verify(common, verify, out);
    if (expand_cmd->parsed()) return cmd_expand(common, expand, out);
    if (lattice_cmd->parsed()) return cmd_lattice(common, lattice, out);
  } catch (const SpecError& e) {
    err << "spec error: " << e.what() << '\n';
    return kExitSpecError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace genram
