#pragma once

// Matrix-side ground truth for the spectrum engine. Nothing here looks at
// cycles, closures or roots of weight products; only the raw operator.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wgshift/error.hpp"
#include "wgshift/field.hpp"
#include "wgshift/shift.hpp"

namespace wgshift {

template <class T>
concept RingElement = std::copyable<T> && requires(const T& a, const T& b) {
  { a + b } -> std::convertible_to<T>;
  { a - b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { a == b } -> std::convertible_to<bool>;
};

template <RingElement T>
class DenseMatrix {
 public:
  DenseMatrix(std::size_t n, const T& fill) : n_(n), entries_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  std::vector<T> operator*(const std::vector<T>& x) const {
    if (x.size() != n_) throw Error(Errc::length_mismatch, "matrix-vector size mismatch");
    std::vector<T> out;
    out.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      T acc = (*this)(i, 0) * x[0];
      for (std::size_t j = 1; j < n_; ++j) acc = acc + (*this)(i, j) * x[j];
      out.push_back(std::move(acc));
    }
    return out;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<T> entries_;
};

/// Coefficients in ascending degree with no trailing zeros; the zero
/// polynomial has no coefficients.
template <RingElement T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coefficients) : c_(std::move(coefficients)) { trim(); }

  const std::vector<T>& coefficients() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  const T& operator[](std::size_t i) const { return c_[i]; }

  T operator()(const T& x) const {
    if (c_.empty()) throw Error(Errc::zero_polynomial, "evaluating the zero polynomial");
    T acc = c_.back();
    for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == c_.back() - c_.back()) c_.pop_back();
  }

  std::vector<T> c_;
};

/// det(xI - A) by Berkowitz's division-free recurrence, O(n^4) ring
/// operations. Valid over any commutative ring.
template <RingElement T>
Polynomial<T> char_poly(const DenseMatrix<T>& a, const T& one) {
  const T zero = one - one;
  const std::size_t n = a.size();
  // Descending coefficients of det(xI - A_k) for the leading k x k block.
  std::vector<T> poly{one};
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t m = k - 1;  // new row/column index
    // First column of the Toeplitz factor: 1, -a_mm, -R C, -R A C, ...
    std::vector<T> col;
    col.reserve(k + 1);
    col.push_back(one);
    col.push_back(zero - a(m, m));
    std::vector<T> x(m, zero);
    for (std::size_t i = 0; i < m; ++i) x[i] = a(i, m);
    for (std::size_t j = 0; j + 2 <= k; ++j) {
      T dot = zero;
      for (std::size_t i = 0; i < m; ++i) dot = dot + a(m, i) * x[i];
      col.push_back(zero - dot);
      std::vector<T> next(m, zero);
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) next[r] = next[r] + a(r, c) * x[c];
      x = std::move(next);
    }
    std::vector<T> updated(k + 1, zero);
    for (std::size_t i = 0; i <= k; ++i)
      for (std::size_t j = 0; j < poly.size() && j <= i; ++j)
        updated[i] = updated[i] + col[i - j] * poly[j];
    poly = std::move(updated);
  }
  std::reverse(poly.begin(), poly.end());
  return Polynomial<T>(std::move(poly));
}

/// A[a][phi(a)] = w_a, zero elsewhere.
inline DenseMatrix<FieldElement> build_matrix(const WeightedShift& shift) {
  DenseMatrix<FieldElement> m(shift.size(), shift.field().zero());
  for (Node a = 0; a < shift.size(); ++a) m(a, shift.graph()(a)) = shift.weight(a);
  return m;
}

namespace detail {

/// Divisors of 1 <= m < 2^63 by trial division.
inline std::vector<BigInt> positive_divisors(const BigInt& m) {
  if (m <= 0 || m >= (BigInt(1) << 63))
    throw Error(Errc::oracle_limit_exceeded, "cannot factor " + m.str() + " (limit 2^63)");
  auto rest = m.convert_to<std::uint64_t>();
  std::vector<std::pair<std::uint64_t, unsigned>> factors;
  for (std::uint64_t d = 2; d <= rest / d; ++d) {
    unsigned e = 0;
    while (rest % d == 0) {
      rest /= d;
      ++e;
    }
    if (e) factors.emplace_back(d, e);
  }
  if (rest > 1) factors.emplace_back(rest, 1);

  std::vector<BigInt> divisors{1};
  for (auto [prime, exp] : factors) {
    const std::size_t base = divisors.size();
    BigInt power = 1;
    for (unsigned e = 1; e <= exp; ++e) {
      power *= prime;
      for (std::size_t i = 0; i < base; ++i) divisors.push_back(divisors[i] * power);
    }
  }
  std::sort(divisors.begin(), divisors.end());
  return divisors;
}

inline BigInt gcd(BigInt a, BigInt b) {
  a = boost::multiprecision::abs(a);
  b = boost::multiprecision::abs(b);
  while (b != 0) {
    BigInt t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

}  // namespace detail

/// Distinct roots of p lying in the field, ascending.
inline std::vector<FieldElement> roots_in_field(const Polynomial<FieldElement>& p,
                                                const FieldContext& field) {
  if (p.is_zero()) throw Error(Errc::zero_polynomial, "every element is a root of 0");
  std::vector<FieldElement> roots;
  if (field.is_prime_field()) {
    for (const FieldElement& r : field.elements())
      if (p(r).is_zero()) roots.push_back(r);
    return roots;
  }

  // Scale to a primitive integer polynomial.
  const auto& c = p.coefficients();
  BigInt lcm = 1;
  for (const auto& q : c) {
    const BigInt den = boost::multiprecision::denominator(q.rational());
    lcm = lcm / detail::gcd(lcm, den) * den;
  }
  std::vector<BigInt> ints;
  BigInt content = 0;
  for (const auto& q : c) {
    const auto& r = q.rational();
    ints.push_back(boost::multiprecision::numerator(r) * (lcm / boost::multiprecision::denominator(r)));
    content = detail::gcd(content, ints.back());
  }
  for (auto& v : ints) v /= content;

  std::size_t low = 0;
  while (ints[low] == 0) ++low;
  if (low > 0) roots.push_back(field.zero());
  const std::vector<BigInt> reduced(ints.begin() + static_cast<std::ptrdiff_t>(low), ints.end());
  const std::size_t deg = reduced.size() - 1;
  if (deg == 0) return roots;

  // r = num/den in lowest terms is a root iff sum a_i num^i den^(deg-i) = 0.
  auto is_root = [&](const BigInt& num, const BigInt& den) {
    BigInt acc = 0;
    BigInt num_pow = 1;
    std::vector<BigInt> den_pows(deg + 1, 1);
    for (std::size_t i = 1; i <= deg; ++i) den_pows[i] = den_pows[i - 1] * den;
    for (std::size_t i = 0; i <= deg; ++i) {
      acc += reduced[i] * num_pow * den_pows[deg - i];
      num_pow *= num;
    }
    return acc == 0;
  };

  const auto numerators = detail::positive_divisors(boost::multiprecision::abs(reduced.front()));
  const auto denominators = detail::positive_divisors(boost::multiprecision::abs(reduced.back()));
  for (const BigInt& d : numerators) {
    for (const BigInt& e : denominators) {
      if (detail::gcd(d, e) != 1) continue;
      if (is_root(d, e)) roots.push_back(field.from_fraction(d, e));
      if (is_root(-d, e)) roots.push_back(field.from_fraction(-d, e));
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

/// The eigenvalue set of the shift on F^n, via the characteristic polynomial.
inline std::vector<FieldElement> oracle_spectrum(const WeightedShift& shift) {
  return roots_in_field(char_poly(build_matrix(shift), shift.field().one()), shift.field());
}

/// Independent check of an eigenpair: nonzero and A y = lambda y.
inline bool oracle_verify_eigenpair(const WeightedShift& shift, const EigenPair& pair) {
  if (!shift.field().contains(pair.lambda)) return false;
  std::vector<FieldElement> y(shift.size(), shift.field().zero());
  for (const auto& [a, value] : pair.vector) {
    if (a >= shift.size() || !shift.field().contains(value)) return false;
    y[a] = value;
  }
  if (std::all_of(y.begin(), y.end(), [](const FieldElement& e) { return e.is_zero(); }))
    return false;
  const auto ay = build_matrix(shift) * y;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (ay[i] != pair.lambda * y[i]) return false;
  return true;
}

/// Matrix of the shift acting on (F^d)^n: block (a, phi(a)) is w_a I_d.
inline DenseMatrix<FieldElement> build_block_matrix(const WeightedShift& shift, std::size_t d) {
  const std::size_t n = shift.size();
  DenseMatrix<FieldElement> m(n * d, shift.field().zero());
  for (Node a = 0; a < n; ++a)
    for (std::size_t i = 0; i < d; ++i) m(a * d + i, shift.graph()(a) * d + i) = shift.weight(a);
  return m;
}

/// Whether the eigenvalues on (F^d)^n coincide with those on F^n.
inline bool block_check(const WeightedShift& shift, std::size_t d) {
  if (d < 2) throw Error(Errc::invalid_argument, "block dimension must be >= 2");
  if (shift.size() * d > 32) throw Error(Errc::invalid_argument, "n * d must be <= 32");
  const auto blocks =
      roots_in_field(char_poly(build_block_matrix(shift, d), shift.field().one()), shift.field());
  return blocks == oracle_spectrum(shift);
}

}  // namespace wgshift
