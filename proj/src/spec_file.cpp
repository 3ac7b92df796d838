#include "genram/spec_file.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace genram {

namespace {

std::vector<std::string> tokens_of(std::string line) {
  if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
                    c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

template <typename T>
std::optional<T> parse_unsigned(const std::string& s) {
  T value{};
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return value;
}

}  // namespace

AFunctionSpec parse_spec(std::istream& in, std::string_view source) {
  std::optional<std::string> name;
  std::optional<BaseRule> base;
  AFunctionSpec::Overrides overrides;

  auto fail = [&](std::size_t line_no, const std::string& what) -> SpecError {
    return SpecError(std::string(source) + ":" + std::to_string(line_no) + ": " + what);
  };

  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto tok = tokens_of(line);
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    if (key == "name") {
      if (tok.size() != 2) throw fail(line_no, "expected 'name <identifier>'");
      if (name) throw fail(line_no, "duplicate 'name' line");
      if (!is_identifier(tok[1])) throw fail(line_no, "invalid identifier '" + tok[1] + "'");
      name = tok[1];
    } else if (key == "base") {
      if (tok.size() != 2 || (tok[1] != "D" && tok[1] != "U")) throw fail(line_no, "expected 'base D' or 'base U'");
      if (base) throw fail(line_no, "duplicate 'base' line");
      base = tok[1] == "D" ? BaseRule::Complete : BaseRule::Unitary;
    } else if (key == "tau") {
      if (tok.size() != 4) throw fail(line_no, "expected 'tau <p> <k> <t>'");
      const auto p = parse_unsigned<std::uint64_t>(tok[1]);
      const auto k = parse_unsigned<unsigned>(tok[2]);
      const auto t = parse_unsigned<unsigned>(tok[3]);
      if (!p || !k || !t) throw fail(line_no, "tau arguments must be non-negative integers");
      if (!overrides.emplace(std::pair{*p, *k}, *t).second) {
        throw fail(line_no, "duplicate tau line for " + tok[1] + "^" + tok[2]);
      }
    } else {
      throw fail(line_no, "unknown directive '" + key + "'");
    }
  }
  if (!base) throw SpecError(std::string(source) + ": missing 'base' line");
  return AFunctionSpec(name.value_or("unnamed"), *base, std::move(overrides));
}

AFunctionSpec parse_spec_string(std::string_view text, std::string_view source) {
  std::istringstream is{std::string(text)};
  return parse_spec(is, source);
}

AFunctionSpec load_spec(const std::string& name_or_path, std::uint64_t bound) {
  if (name_or_path == "D") return AFunctionSpec::complete();
  if (name_or_path == "U") return AFunctionSpec::unitary();
  std::ifstream in(name_or_path);
  if (!in) throw SpecError("cannot open spec file '" + name_or_path + "'");
  return checked(parse_spec(in, name_or_path), bound);
}

std::string format_spec(const AFunctionSpec& spec) {
  std::ostringstream os;
  os << "name " << spec.name() << '\n';
  os << "base " << (spec.base() == BaseRule::Complete ? 'D' : 'U') << '\n';
  for (const auto& [key, t] : spec.overrides()) os << "tau " << key.first << ' ' << key.second << ' ' << t << '\n';
  return os.str();
}

}  // namespace genram
