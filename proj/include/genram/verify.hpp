#pragma once

// Exhaustive or sampled sweeps of the identities satisfied by the
// generalized Ramanujan sum, with a reproducible first counterexample.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "genram/afunc.hpp"

namespace genram {

enum class Identity { Holder, Orthogonality, AbsBound, Mult, GcdProps, SumDiv, Trig, MobiusLemma };

std::string to_string(Identity identity);
std::optional<Identity> parse_identity(std::string_view name);
const std::vector<Identity>& all_identities();

inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct VerifyOptions {
  std::uint64_t max = 100;
  /// Random points instead of the full range when set.
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = kDefaultSeed;
};

struct VerificationReport {
  Identity identity = Identity::Holder;
  std::string a1;
  std::string a2;
  std::string range;
  bool pass = true;
  /// Inputs and both sides of the first failure.
  std::optional<std::string> counterexample;
  /// Set for identities whose statement depends on A2 <= A1.
  std::optional<OrderStatus> order;
  /// Extra context such as whether A1 = D for the trigonometric form.
  std::vector<std::string> notes;
  std::uint64_t checked = 0;
};

VerificationReport verify_identity(Identity identity, const AFunctionSpec& a1, const AFunctionSpec& a2,
                                   const VerifyOptions& options);

/// Multi-line human-readable rendering.
std::string format_report(const VerificationReport& report);

}  // namespace genram
