#pragma once

#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "genram/afunc.hpp"
#include "genram/exact.hpp"

namespace genram {

/// Exact rational unless a floating operand was involved somewhere upstream.
class Value {
 public:
  Value() : v_(ExactRat(0)) {}
  Value(ExactRat r) : v_(std::move(r)) {}            // NOLINT(google-explicit-constructor)
  Value(const ExactInt& i) : v_(ExactRat(i)) {}       // NOLINT(google-explicit-constructor)
  template <std::integral I>
  Value(I i) : v_(ExactRat(i)) {}                     // NOLINT(google-explicit-constructor)
  Value(double d) : v_(d) {}                          // NOLINT(google-explicit-constructor)

  bool is_exact() const { return std::holds_alternative<ExactRat>(v_); }
  /// Throws std::logic_error for floating values.
  const ExactRat& exact() const;
  double to_double() const;
  std::string str() const;

  Value& operator+=(const Value& o);
  Value& operator*=(const Value& o);
  friend Value operator+(Value a, const Value& b) { return a += b; }
  friend Value operator*(Value a, const Value& b) { return a *= b; }
  friend Value operator-(const Value& a);
  friend Value operator-(const Value& a, const Value& b) { return a + (-b); }
  /// Exact comparison when both are exact, bitwise double comparison otherwise.
  friend bool operator==(const Value& a, const Value& b);

 private:
  std::variant<ExactRat, double> v_;
};

/// Upper bound |(mu_{A,k} x_A f)(x)| <= scale * w(x)^-decay, where w(x) is
/// x1 * ... * xk, or the common coordinate n when `diagonal` says the
/// convolution vanishes off x1 = ... = xk.
struct Majorant {
  double scale = 1.0;
  double decay = 0.0;
  bool diagonal = false;
};

/// f : N^k -> Q (or R when declared floating).
struct ArithmeticFn {
  using Eval = std::function<Value(std::span<const std::uint64_t>)>;

  std::size_t arity = 1;
  Eval eval;
  bool multiplicative = false;
  std::optional<Majorant> majorant;
  std::string label;

  Value operator()(std::uint64_t n) const;
  Value operator()(std::span<const std::uint64_t> n) const;
};

ArithmeticFn make_fn(std::function<Value(std::uint64_t)> f, std::string label = {}, bool multiplicative = false);
ArithmeticFn make_fn_k(std::size_t arity, ArithmeticFn::Eval f, std::string label = {});

/// The constant 1 of arity k.
ArithmeticFn constant_one(std::size_t arity = 1);
/// delta_k: 1 at (1, ..., 1), 0 elsewhere; the unit of the convolution ring.
ArithmeticFn unit_fn(std::size_t arity = 1);
ArithmeticFn identity_fn();
ArithmeticFn mobius_fn(const AFunctionSpec& spec);
/// mu_{(A,k)}(n1, ..., nk) = prod mu_A(ni).
ArithmeticFn mobius_fn_k(const AFunctionSpec& spec, std::size_t arity);

/// (f x_A g)(n) = sum_{d in A(n)} f(d) g(n/d). Throws std::invalid_argument on arity mismatch.
Value convolve(const AFunctionSpec& spec, const ArithmeticFn& f, const ArithmeticFn& g, std::uint64_t n);

/// k-variable regular convolution over the product of A(ni).
Value convolve_k(const AFunctionSpec& spec, const ArithmeticFn& f, const ArithmeticFn& g,
                 std::span<const std::uint64_t> n);

/// (mu_A x_A g)(n); inverts g = 1 x_A f.
Value mobius_invert(const AFunctionSpec& spec, const ArithmeticFn& g, std::uint64_t n);

/// (mu_{A,k} x_A f)(n): the k-variable inverse transform used by expansion coefficients.
Value mobius_invert_k(const AFunctionSpec& spec, const ArithmeticFn& f, std::span<const std::uint64_t> n);

}  // namespace genram
