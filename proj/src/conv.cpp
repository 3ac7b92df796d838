#include "genram/conv.hpp"

#include <sstream>
#include <stdexcept>

namespace genram {

namespace {

void require_arity(const ArithmeticFn& f, std::size_t k, const char* what) {
  if (f.arity != k) {
    throw std::invalid_argument(std::string(what) + ": arity mismatch (function has " + std::to_string(f.arity) +
                                ", argument has " + std::to_string(k) + ")");
  }
}

// Calls visit(d, mu) for every tuple d with d_i in A(n_i); mu is the product of
// mu_A(d_i). Tuples whose Möbius weight vanishes are skipped when skip_zero_mu.
template <typename Visit>
void for_each_divisor_tuple(const AFunctionSpec& spec, std::span<const std::uint64_t> n, bool skip_zero_mu,
                            Visit&& visit) {
  const std::size_t k = n.size();
  std::vector<std::vector<RegularDivisor>> lists(k);
  for (std::size_t i = 0; i < k; ++i) {
    auto all = regular_divisors_with_mobius(spec, factorize(n[i]));
    if (skip_zero_mu) std::erase_if(all, [](const RegularDivisor& r) { return r.mobius == 0; });
    lists[i] = std::move(all);
  }
  std::vector<std::size_t> idx(k, 0);
  std::vector<std::uint64_t> d(k);
  while (true) {
    int mu = 1;
    for (std::size_t i = 0; i < k; ++i) {
      d[i] = lists[i][idx[i]].d;
      mu *= lists[i][idx[i]].mobius;
    }
    visit(std::span<const std::uint64_t>(d), mu);
    std::size_t i = 0;
    for (; i < k; ++i) {
      if (++idx[i] < lists[i].size()) break;
      idx[i] = 0;
    }
    if (i == k) break;
  }
}

}  // namespace

const ExactRat& Value::exact() const {
  if (!is_exact()) throw std::logic_error("Value: floating value has no exact form");
  return std::get<ExactRat>(v_);
}

double Value::to_double() const {
  if (is_exact()) return genram::to_double(std::get<ExactRat>(v_));
  return std::get<double>(v_);
}

std::string Value::str() const {
  if (is_exact()) return genram::to_string(std::get<ExactRat>(v_));
  std::ostringstream os;
  os.precision(17);
  os << std::get<double>(v_);
  return os.str();
}

Value& Value::operator+=(const Value& o) {
  if (is_exact() && o.is_exact()) {
    std::get<ExactRat>(v_) += std::get<ExactRat>(o.v_);
  } else {
    v_ = to_double() + o.to_double();
  }
  return *this;
}

Value& Value::operator*=(const Value& o) {
  if (is_exact() && o.is_exact()) {
    std::get<ExactRat>(v_) *= std::get<ExactRat>(o.v_);
  } else {
    v_ = to_double() * o.to_double();
  }
  return *this;
}

Value operator-(const Value& a) {
  if (a.is_exact()) return Value(ExactRat(-a.exact()));
  return Value(-a.to_double());
}

bool operator==(const Value& a, const Value& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
  return a.to_double() == b.to_double();
}

Value ArithmeticFn::operator()(std::uint64_t n) const {
  require_arity(*this, 1, "ArithmeticFn");
  return eval(std::span<const std::uint64_t>(&n, 1));
}

Value ArithmeticFn::operator()(std::span<const std::uint64_t> n) const {
  require_arity(*this, n.size(), "ArithmeticFn");
  return eval(n);
}

ArithmeticFn make_fn(std::function<Value(std::uint64_t)> f, std::string label, bool multiplicative) {
  ArithmeticFn fn;
  fn.arity = 1;
  fn.eval = [f = std::move(f)](std::span<const std::uint64_t> n) { return f(n[0]); };
  fn.multiplicative = multiplicative;
  fn.label = std::move(label);
  return fn;
}

ArithmeticFn make_fn_k(std::size_t arity, ArithmeticFn::Eval f, std::string label) {
  ArithmeticFn fn;
  fn.arity = arity;
  fn.eval = std::move(f);
  fn.label = std::move(label);
  return fn;
}

ArithmeticFn constant_one(std::size_t arity) {
  auto fn = make_fn_k(arity, [](std::span<const std::uint64_t>) { return Value(1); }, "1");
  fn.multiplicative = true;
  return fn;
}

ArithmeticFn unit_fn(std::size_t arity) {
  auto fn = make_fn_k(
      arity,
      [](std::span<const std::uint64_t> n) {
        for (auto x : n) {
          if (x != 1) return Value(0);
        }
        return Value(1);
      },
      "delta");
  fn.multiplicative = true;
  return fn;
}

ArithmeticFn identity_fn() {
  return make_fn([](std::uint64_t n) { return Value(ExactInt(n)); }, "id", true);
}

ArithmeticFn mobius_fn(const AFunctionSpec& spec) {
  return make_fn([spec](std::uint64_t n) { return Value(mobius_A(spec, n)); }, "mu_" + spec.name(), true);
}

ArithmeticFn mobius_fn_k(const AFunctionSpec& spec, std::size_t arity) {
  auto fn = make_fn_k(
      arity,
      [spec](std::span<const std::uint64_t> n) {
        int mu = 1;
        for (auto x : n) mu *= mobius_A(spec, x);
        return Value(mu);
      },
      "mu_" + spec.name());
  fn.multiplicative = true;
  return fn;
}

Value convolve(const AFunctionSpec& spec, const ArithmeticFn& f, const ArithmeticFn& g, std::uint64_t n) {
  require_arity(f, 1, "convolve");
  require_arity(g, 1, "convolve");
  Value acc(0);
  for (auto d : regular_divisors(spec, n)) acc += f(d) * g(n / d);
  return acc;
}

Value convolve_k(const AFunctionSpec& spec, const ArithmeticFn& f, const ArithmeticFn& g,
                 std::span<const std::uint64_t> n) {
  require_arity(f, n.size(), "convolve_k");
  require_arity(g, n.size(), "convolve_k");
  Value acc(0);
  std::vector<std::uint64_t> rest(n.size());
  for_each_divisor_tuple(spec, n, false, [&](std::span<const std::uint64_t> d, int) {
    for (std::size_t i = 0; i < n.size(); ++i) rest[i] = n[i] / d[i];
    acc += f(d) * g(std::span<const std::uint64_t>(rest));
  });
  return acc;
}

Value mobius_invert(const AFunctionSpec& spec, const ArithmeticFn& g, std::uint64_t n) {
  require_arity(g, 1, "mobius_invert");
  Value acc(0);
  for (const auto& [d, mu] : regular_divisors_with_mobius(spec, factorize(n))) {
    if (mu != 0) acc += Value(mu) * g(n / d);
  }
  return acc;
}

Value mobius_invert_k(const AFunctionSpec& spec, const ArithmeticFn& f, std::span<const std::uint64_t> n) {
  require_arity(f, n.size(), "mobius_invert_k");
  Value acc(0);
  std::vector<std::uint64_t> rest(n.size());
  for_each_divisor_tuple(spec, n, true, [&](std::span<const std::uint64_t> d, int mu) {
    for (std::size_t i = 0; i < n.size(); ++i) rest[i] = n[i] / d[i];
    acc += Value(mu) * f(std::span<const std::uint64_t>(rest));
  });
  return acc;
}

}  // namespace genram
