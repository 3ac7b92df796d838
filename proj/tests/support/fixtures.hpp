#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "genram/afunc.hpp"
#include "genram/spec_file.hpp"

namespace genram::testing {

inline const std::vector<std::uint64_t>& small_primes() {
  static const std::vector<std::uint64_t> primes = {2, 3, 5, 7, 11, 13};
  return primes;
}

// Base U with random types at every p^k <= 2^12 (k <= 12), p <= 13. Types are
// drawn in increasing k among divisors t of k whose chain is already in place.
inline AFunctionSpec mixed_spec(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  AFunctionSpec spec("mixed_" + std::to_string(seed), BaseRule::Unitary);
  for (auto p : small_primes()) {
    std::vector<unsigned> tau(13, 0);
    std::uint64_t pk = 1;
    for (unsigned k = 1; k <= 12; ++k) {
      pk *= p;
      if (pk > 4096) break;
      std::vector<unsigned> options;
      for (unsigned t = 1; t <= k; ++t) {
        if (k % t != 0) continue;
        bool chain = true;
        for (unsigned j = t; j < k; j += t) chain = chain && tau[j] == t;
        if (chain) options.push_back(t);
      }
      tau[k] = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
      if (tau[k] != k) spec.set_override(p, k, tau[k]);
    }
  }
  return checked(spec);
}

inline std::vector<AFunctionSpec> mixed_specs(std::size_t count, std::uint64_t seed = 1) {
  std::vector<AFunctionSpec> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(mixed_spec(seed + i));
  return out;
}

// Unitary everywhere except a complete chain at 3.
inline AFunctionSpec mixed_2u_3d() {
  AFunctionSpec spec("mixed_2u_3d", BaseRule::Unitary);
  for (unsigned k = 1; k <= 12; ++k) spec.set_override(3, k, 1);
  return checked(spec);
}

// A1(2^6) = {1, 4, 16, 64} and A2(2^6) = {1, 8, 64}.
inline AFunctionSpec ortho_a1() {
  return checked(parse_spec_string("name ortho_a1\nbase U\ntau 2 4 2\ntau 2 6 2\n"));
}

inline AFunctionSpec ortho_a2() { return checked(parse_spec_string("name ortho_a2\nbase U\ntau 2 6 3\n")); }

inline AFunctionSpec D() { return AFunctionSpec::complete(); }
inline AFunctionSpec U() { return AFunctionSpec::unitary(); }

}  // namespace genram::testing
