#pragma once

#include <concepts>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

namespace thinlie {

/// Error in user-supplied input (bad characteristic, malformed expression,
/// malformed file, out-of-range degree). The CLI maps this to exit code 2.
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// The prime field GF(p), p < 2^31. Elements are canonical residues in
/// [0, p) stored as int64_t; equality of elements is plain integer equality.
///
/// Row kernels support delayed reduction: axpy_nored accumulates values
/// without taking remainders, and axpy_headroom() says how many such
/// accumulations are safe before canonicalize_row must run.
class Gf {
 public:
  using Elem = std::int64_t;

  explicit Gf(std::int64_t p) : p_(p) {
    if (p < 0 || !is_prime(p)) throw input_error("characteristic " + std::to_string(p) + " is not prime");
    if (p >= (std::int64_t{1} << 31)) throw input_error("prime exceeds 2^31");
    std::uint64_t cap = std::uint64_t{1} << 62;
    std::uint64_t psq = static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(p);
    headroom_ = psq > cap ? 1 : static_cast<std::size_t>(cap / psq);
    if (headroom_ == 0) headroom_ = 1;
  }

  std::int64_t characteristic() const { return p_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem a) const { return a == 0; }

  Elem from_int(long long v) const {
    Elem r = static_cast<Elem>(v % p_);
    return r < 0 ? r + p_ : r;
  }

  Elem add(Elem a, Elem b) const {
    Elem r = a + b;
    return r >= p_ ? r - p_ : r;
  }
  Elem sub(Elem a, Elem b) const {
    Elem r = a - b;
    return r < 0 ? r + p_ : r;
  }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p_; }

  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero in GF(p)");
    // extended Euclid
    Elem t = 0, new_t = 1, r = p_, new_r = a;
    while (new_r != 0) {
      Elem q = r / new_r;
      t = std::exchange(new_t, t - q * new_t);
      r = std::exchange(new_r, r - q * new_r);
    }
    return t < 0 ? t + p_ : t;
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  /// Reduce a possibly non-canonical (but nonnegative) accumulator value.
  Elem canon(Elem v) const { return v % p_; }

  std::size_t axpy_headroom() const { return headroom_; }

  /// dst += c * src without reduction. Arguments must be nonnegative with
  /// src and c canonical; safe for axpy_headroom() consecutive calls.
  void axpy_nored(Elem* dst, const Elem* src, Elem c, std::size_t n) const {
    for (std::size_t i = 0; i < n; ++i) dst[i] += c * src[i];
  }

  void canonicalize_row(Elem* v, std::size_t n) const {
    for (std::size_t i = 0; i < n; ++i) v[i] %= p_;
  }

  std::string to_string(Elem a) const { return std::to_string(a); }

  bool eq(Elem a, Elem b) const { return a == b; }

 private:
  std::int64_t p_;
  std::size_t headroom_;
};

/// The field of rational numbers; arbitrary-precision, always reduced.
class Rationals {
 public:
  using Elem = boost::multiprecision::cpp_rational;

  std::int64_t characteristic() const { return 0; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(const Elem& a) const { return a == 0; }

  Elem from_int(long long v) const { return Elem(v); }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return 1 / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

  Elem canon(const Elem& v) const { return v; }
  std::size_t axpy_headroom() const { return std::numeric_limits<std::size_t>::max(); }
  void axpy_nored(Elem* dst, const Elem* src, const Elem& c, std::size_t n) const {
    for (std::size_t i = 0; i < n; ++i)
      if (src[i] != 0) dst[i] += c * src[i];
  }
  void canonicalize_row(Elem*, std::size_t) const {}

  std::string to_string(const Elem& a) const { return a.str(); }

  bool eq(const Elem& a, const Elem& b) const { return a == b; }
};

template <class F>
concept field = requires(const F f, const typename F::Elem a) {
  { f.characteristic() } -> std::convertible_to<std::int64_t>;
  { f.zero() } -> std::same_as<typename F::Elem>;
  { f.one() } -> std::same_as<typename F::Elem>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.add(a, a) } -> std::same_as<typename F::Elem>;
  { f.sub(a, a) } -> std::same_as<typename F::Elem>;
  { f.mul(a, a) } -> std::same_as<typename F::Elem>;
  { f.neg(a) } -> std::same_as<typename F::Elem>;
  { f.inv(a) } -> std::same_as<typename F::Elem>;
  { f.from_int(1LL) } -> std::same_as<typename F::Elem>;
};

using AnyField = std::variant<Gf, Rationals>;

/// characteristic 0 gives the rationals, a prime p gives GF(p);
/// anything else is rejected.
inline AnyField make_field(std::int64_t characteristic) {
  if (characteristic == 0) return Rationals{};
  return Gf{characteristic};
}

/// Parse an integer or fraction literal ("7", "-3", "2/5") into the field.
template <field F>
typename F::Elem scalar_from_string(const F& f, const std::string& s) {
  auto parse_int = [](const std::string& t) -> long long {
    if (t.empty()) throw input_error("empty numeric literal");
    std::size_t pos = 0;
    long long v;
    try {
      v = std::stoll(t, &pos);
    } catch (const std::exception&) {
      throw input_error("bad numeric literal '" + t + "'");
    }
    if (pos != t.size()) throw input_error("bad numeric literal '" + t + "'");
    return v;
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) return f.from_int(parse_int(s));
  long long num = parse_int(s.substr(0, slash));
  long long den = parse_int(s.substr(slash + 1));
  if (den == 0) throw input_error("zero denominator in '" + s + "'");
  auto d = f.from_int(den);
  if (f.is_zero(d)) throw input_error("denominator of '" + s + "' vanishes in this field");
  return f.mul(f.from_int(num), f.inv(d));
}

}  // namespace thinlie
