#pragma once

// Line-oriented A-function spec files:
//
//   # comment
//   name mixed_2u_3d
//   base U            # or D
//   tau 3 1 1         # tau(p, k) = t
//
// Tokens are whitespace separated; duplicate (p, k) lines are rejected.

#include <istream>
#include <string>
#include <string_view>

#include "genram/afunc.hpp"

namespace genram {

/// Parses without validating; throws SpecError with a line number on bad input.
AFunctionSpec parse_spec(std::istream& in, std::string_view source = "<input>");
AFunctionSpec parse_spec_string(std::string_view text, std::string_view source = "<string>");

/// "D" and "U" are builtins; anything else is read as a file path. The result
/// is validated against `bound`.
AFunctionSpec load_spec(const std::string& name_or_path, std::uint64_t bound = kDefaultValidationBound);

/// Canonical text form; parse_spec(format_spec(s)) reproduces s.
std::string format_spec(const AFunctionSpec& spec);

}  // namespace genram
