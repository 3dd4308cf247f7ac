#pragma once

// Exact field arithmetic over GF(p) and the rationals.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wgshift/error.hpp"

namespace wgshift {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

enum class FieldKind { prime, rational };

class FieldContext;

namespace detail {

struct Residue {
  std::uint64_t modulus;
  std::uint64_t value;
};

inline bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  // extended Euclid on signed 64-bit, p < 2^32
  std::int64_t old_r = static_cast<std::int64_t>(a), r = static_cast<std::int64_t>(p);
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  std::int64_t inv = old_s % static_cast<std::int64_t>(p);
  if (inv < 0) inv += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(inv);
}

/// Largest x >= 0 with x^n <= value, for value >= 0.
inline BigInt integer_root_floor(const BigInt& value, unsigned n) {
  if (value < 2 || n == 1) return value;
  BigInt lo = 0;
  BigInt hi = BigInt(1) << (boost::multiprecision::msb(value) / n + 1);
  while (lo < hi) {
    BigInt mid = (lo + hi + 1) >> 1;
    if (boost::multiprecision::pow(mid, n) <= value)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

}  // namespace detail

/// An element of GF(p) or of Q. Elements are immutable values that carry
/// their own field, so arithmetic across different fields is detected.
class FieldElement {
 public:
  FieldKind kind() const noexcept {
    return std::holds_alternative<detail::Residue>(rep_) ? FieldKind::prime : FieldKind::rational;
  }

  /// 0 for rationals.
  std::uint64_t modulus() const noexcept {
    if (auto r = std::get_if<detail::Residue>(&rep_)) return r->modulus;
    return 0;
  }

  std::uint64_t residue() const {
    if (auto r = std::get_if<detail::Residue>(&rep_)) return r->value;
    throw Error(Errc::invalid_argument, "residue() on a rational element");
  }

  const BigRational& rational() const {
    if (auto q = std::get_if<BigRational>(&rep_)) return *q;
    throw Error(Errc::invalid_argument, "rational() on a prime-field element");
  }

  bool is_zero() const noexcept {
    if (auto r = std::get_if<detail::Residue>(&rep_)) return r->value == 0;
    return std::get<BigRational>(rep_) == 0;
  }

  bool is_one() const noexcept {
    if (auto r = std::get_if<detail::Residue>(&rep_)) return r->value == 1;
    return std::get<BigRational>(rep_) == 1;
  }

  bool same_field(const FieldElement& other) const noexcept {
    return kind() == other.kind() && modulus() == other.modulus();
  }

  FieldElement zero_like() const { return with_int(0); }
  FieldElement one_like() const { return with_int(1); }

  FieldElement inverse() const {
    if (is_zero()) throw Error(Errc::division_by_zero, "inverse of zero");
    if (auto r = std::get_if<detail::Residue>(&rep_))
      return FieldElement(detail::Residue{r->modulus, detail::mod_inverse(r->value, r->modulus)});
    return FieldElement(BigRational(1) / std::get<BigRational>(rep_));
  }

  FieldElement operator-() const {
    if (auto r = std::get_if<detail::Residue>(&rep_))
      return FieldElement(detail::Residue{r->modulus, r->value == 0 ? 0 : r->modulus - r->value});
    return FieldElement(BigRational(-std::get<BigRational>(rep_)));
  }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    if (auto ra = std::get_if<detail::Residue>(&a.rep_)) {
      const auto& rb = std::get<detail::Residue>(b.rep_);
      return FieldElement(detail::Residue{ra->modulus, (ra->value + rb.value) % ra->modulus});
    }
    return FieldElement(BigRational(std::get<BigRational>(a.rep_) + std::get<BigRational>(b.rep_)));
  }

  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    if (auto ra = std::get_if<detail::Residue>(&a.rep_)) {
      const auto& rb = std::get<detail::Residue>(b.rep_);
      return FieldElement(
          detail::Residue{ra->modulus, (ra->value + ra->modulus - rb.value) % ra->modulus});
    }
    return FieldElement(BigRational(std::get<BigRational>(a.rep_) - std::get<BigRational>(b.rep_)));
  }

  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    if (auto ra = std::get_if<detail::Residue>(&a.rep_)) {
      const auto& rb = std::get<detail::Residue>(b.rep_);
      return FieldElement(detail::Residue{ra->modulus, (ra->value * rb.value) % ra->modulus});
    }
    return FieldElement(BigRational(std::get<BigRational>(a.rep_) * std::get<BigRational>(b.rep_)));
  }

  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    if (b.is_zero()) throw Error(Errc::division_by_zero, "division by zero");
    return a * b.inverse();
  }

  FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
  FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
  FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }

  /// Structural equality; elements of different fields are never equal.
  friend bool operator==(const FieldElement& a, const FieldElement& b) noexcept {
    if (!a.same_field(b)) return false;
    if (auto ra = std::get_if<detail::Residue>(&a.rep_))
      return ra->value == std::get<detail::Residue>(b.rep_).value;
    return std::get<BigRational>(a.rep_) == std::get<BigRational>(b.rep_);
  }

  /// Canonical order: GF(p) by residue, Q by value. Elements of different
  /// fields are ordered by (kind, modulus) so containers stay well-formed.
  friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) noexcept {
    if (a.kind() != b.kind()) return a.kind() <=> b.kind();
    if (a.modulus() != b.modulus()) return a.modulus() <=> b.modulus();
    if (auto ra = std::get_if<detail::Residue>(&a.rep_))
      return ra->value <=> std::get<detail::Residue>(b.rep_).value;
    const auto& qa = std::get<BigRational>(a.rep_);
    const auto& qb = std::get<BigRational>(b.rep_);
    if (qa < qb) return std::strong_ordering::less;
    if (qb < qa) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string to_string() const {
    if (auto r = std::get_if<detail::Residue>(&rep_)) return std::to_string(r->value);
    const auto& q = std::get<BigRational>(rep_);
    std::string out = boost::multiprecision::numerator(q).str();
    if (boost::multiprecision::denominator(q) != 1)
      out += "/" + boost::multiprecision::denominator(q).str();
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const FieldElement& e) {
    return os << e.to_string();
  }

 private:
  friend class FieldContext;

  explicit FieldElement(detail::Residue r) : rep_(r) {}
  explicit FieldElement(BigRational q) : rep_(std::move(q)) {}

  FieldElement with_int(long long v) const {
    if (auto r = std::get_if<detail::Residue>(&rep_)) {
      auto m = static_cast<long long>(r->modulus);
      return FieldElement(detail::Residue{r->modulus, static_cast<std::uint64_t>(((v % m) + m) % m)});
    }
    return FieldElement(BigRational(v));
  }

  static void check_same(const FieldElement& a, const FieldElement& b) {
    if (!a.same_field(b))
      throw Error(Errc::mixed_field_contexts, "operands belong to different fields");
  }

  std::variant<detail::Residue, BigRational> rep_;
};

/// a^k by square-and-multiply; negative k inverts first.
inline FieldElement pow(const FieldElement& a, long long k) {
  if (k < 0) {
    if (a.is_zero()) throw Error(Errc::division_by_zero, "negative power of zero");
    return pow(a.inverse(), -k);
  }
  FieldElement result = a.one_like();
  FieldElement base = a;
  auto e = static_cast<unsigned long long>(k);
  while (e != 0) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  return result;
}

/// Either GF(p) for a prime p, or Q. Prime fields remember the bound that
/// licenses exhaustive enumeration of their elements.
class FieldContext {
 public:
  static constexpr std::uint64_t default_enumeration_bound = std::uint64_t{1} << 16;
  static constexpr std::uint64_t max_enumeration_bound = std::uint64_t{1} << 32;

  static FieldContext prime(std::uint64_t p,
                            std::uint64_t enumeration_bound = default_enumeration_bound) {
    if (enumeration_bound > max_enumeration_bound)
      throw Error(Errc::invalid_argument, "enumeration bound above 2^32");
    if (!detail::is_prime(p)) throw Error(Errc::not_prime, std::to_string(p) + " is not prime");
    if (p > enumeration_bound)
      throw Error(Errc::enumeration_bound_exceeded,
                  "p = " + std::to_string(p) + " exceeds bound " + std::to_string(enumeration_bound));
    return FieldContext(FieldKind::prime, p, enumeration_bound);
  }

  static FieldContext rationals(std::uint64_t enumeration_bound = default_enumeration_bound) {
    return FieldContext(FieldKind::rational, 0, enumeration_bound);
  }

  FieldKind kind() const noexcept { return kind_; }
  bool is_prime_field() const noexcept { return kind_ == FieldKind::prime; }
  /// 0 for Q.
  std::uint64_t modulus() const noexcept { return p_; }
  std::uint64_t enumeration_bound() const noexcept { return bound_; }

  FieldElement zero() const { return from_int(0); }
  FieldElement one() const { return from_int(1); }

  FieldElement from_int(long long v) const {
    if (kind_ == FieldKind::prime) {
      auto m = static_cast<long long>(p_);
      return FieldElement(detail::Residue{p_, static_cast<std::uint64_t>(((v % m) + m) % m)});
    }
    return FieldElement(BigRational(v));
  }

  FieldElement from_integer(const BigInt& v) const {
    if (kind_ == FieldKind::prime) {
      BigInt r = v % p_;
      if (r < 0) r += p_;
      return FieldElement(detail::Residue{p_, r.convert_to<std::uint64_t>()});
    }
    return FieldElement(BigRational(v));
  }

  FieldElement from_fraction(const BigInt& num, const BigInt& den) const {
    if (den == 0) throw Error(Errc::zero_denominator, "zero denominator");
    if (kind_ == FieldKind::prime) {
      FieldElement d = from_integer(den);
      if (d.is_zero())
        throw Error(Errc::zero_denominator, "denominator vanishes mod " + std::to_string(p_));
      return from_integer(num) / d;
    }
    // boost::rational over an unbounded integer rejects negative denominators.
    if (den < 0) return FieldElement(BigRational(BigInt(-num), BigInt(-den)));
    return FieldElement(BigRational(num, den));
  }

  bool contains(const FieldElement& e) const noexcept {
    return e.kind() == kind_ && e.modulus() == p_;
  }

  void require(const FieldElement& e) const {
    if (!contains(e))
      throw Error(Errc::mixed_field_contexts, "element " + e.to_string() + " is not in " + name());
  }

  /// Every element of GF(p), ascending. Rationals cannot be enumerated.
  std::vector<FieldElement> elements() const {
    if (kind_ != FieldKind::prime)
      throw Error(Errc::invalid_argument, "cannot enumerate the rationals");
    std::vector<FieldElement> out;
    out.reserve(p_);
    for (std::uint64_t v = 0; v < p_; ++v) out.push_back(FieldElement(detail::Residue{p_, v}));
    return out;
  }

  /// "GF(7)" or "Q".
  std::string name() const {
    return kind_ == FieldKind::prime ? "GF(" + std::to_string(p_) + ")" : std::string("Q");
  }

  /// "gfp:7" or "rational", the CLI spelling.
  std::string descriptor() const {
    return kind_ == FieldKind::prime ? "gfp:" + std::to_string(p_) : std::string("rational");
  }

  friend bool operator==(const FieldContext& a, const FieldContext& b) noexcept {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }

 private:
  FieldContext(FieldKind kind, std::uint64_t p, std::uint64_t bound)
      : kind_(kind), p_(p), bound_(bound) {}

  FieldKind kind_;
  std::uint64_t p_;
  std::uint64_t bound_;
};

/// All nonzero r with r^n = c. c must be nonzero.
inline std::vector<FieldElement> nth_roots(const FieldContext& ctx, const FieldElement& c,
                                           long long n) {
  ctx.require(c);
  if (c.is_zero()) throw Error(Errc::zero_radicand, "nth_roots of zero");
  if (n < 1) throw Error(Errc::invalid_argument, "root degree must be >= 1");

  std::vector<FieldElement> roots;
  if (ctx.is_prime_field()) {
    for (std::uint64_t v = 1; v < ctx.modulus(); ++v) {
      FieldElement r = ctx.from_int(static_cast<long long>(v));
      if (pow(r, n) == c) roots.push_back(r);
    }
    return roots;
  }

  const BigRational& q = c.rational();
  const bool negative = q < 0;
  const bool even = n % 2 == 0;
  if (negative && even) return roots;
  const BigInt a = boost::multiprecision::abs(boost::multiprecision::numerator(q));
  const BigInt b = boost::multiprecision::denominator(q);
  const auto deg = static_cast<unsigned>(n);
  const BigInt ra = detail::integer_root_floor(a, deg);
  const BigInt rb = detail::integer_root_floor(b, deg);
  if (boost::multiprecision::pow(ra, deg) != a || boost::multiprecision::pow(rb, deg) != b)
    return roots;
  FieldElement root = ctx.from_fraction(ra, rb);
  if (even) {
    roots.push_back(-root);
    roots.push_back(root);
  } else {
    roots.push_back(negative ? -root : root);
  }
  return roots;
}

/// Multiplicative order of a nonzero r; nullopt stands for infinite order.
inline std::optional<std::uint64_t> element_order(const FieldContext& ctx, const FieldElement& r) {
  ctx.require(r);
  if (r.is_zero()) throw Error(Errc::zero_element, "order of zero is undefined");
  if (ctx.is_prime_field()) {
    const std::uint64_t group = ctx.modulus() - 1;
    for (std::uint64_t d = 1; d <= group; ++d)
      if (group % d == 0 && pow(r, static_cast<long long>(d)).is_one()) return d;
    throw Error(Errc::internal_verification_failure, "order does not divide p - 1");
  }
  if (r.is_one()) return 1;
  if ((-r).is_one()) return 2;
  return std::nullopt;
}

namespace detail {

inline bool parse_signed_decimal(std::string_view text, BigInt& out) {
  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) return false;
  for (char ch : text)
    if (ch < '0' || ch > '9') return false;
  out = BigInt(std::string(text));
  if (negative) out = -out;
  return true;
}

}  // namespace detail

/// Parses `[sign]digits[/[sign]digits]`. Over GF(p) values are reduced mod p
/// and a fraction means multiplication by the inverse of the denominator.
inline FieldElement parse_element(std::string_view text, const FieldContext& ctx) {
  const auto slash = text.find('/');
  BigInt num, den = 1;
  const std::string_view num_text = text.substr(0, slash);
  if (!detail::parse_signed_decimal(num_text, num))
    throw Error(Errc::malformed_literal, "\"" + std::string(text) + "\"");
  if (slash != std::string_view::npos &&
      !detail::parse_signed_decimal(text.substr(slash + 1), den))
    throw Error(Errc::malformed_literal, "\"" + std::string(text) + "\"");
  if (den == 0) throw Error(Errc::zero_denominator, "\"" + std::string(text) + "\"");
  return ctx.from_fraction(num, den);
}

inline std::string format_element(const FieldElement& e) { return e.to_string(); }

}  // namespace wgshift
