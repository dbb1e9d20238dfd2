#pragma once

// Scalar types shared by every module. Each type is a value type with
// ring operations; exact types compare exactly, ComplexFloat with a
// relative tolerance. Generic code talks to them through ScalarTraits.

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace holodet {

// Arbitrary precision rational, always in lowest terms with positive
// denominator (mpq canonical form).
class BigRational {
 public:
  BigRational() = default;
  BigRational(long long v);  // NOLINT(google-explicit-constructor)
  BigRational(long long num, long long den);
  explicit BigRational(mpq_class v);

  // Accepts "7", "-3/4", "0.125", "1e-3", "2.5E2".
  static BigRational parse(std::string_view text);

  const mpq_class& raw() const { return value_; }
  int sign() const { return sgn(value_); }
  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  double to_double() const { return value_.get_d(); }
  std::string to_string() const;

  BigRational operator-() const { return BigRational(mpq_class(-value_)); }
  BigRational& operator+=(const BigRational& o);
  BigRational& operator-=(const BigRational& o);
  BigRational& operator*=(const BigRational& o);
  BigRational& operator/=(const BigRational& o);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
  friend bool operator==(const BigRational& a, const BigRational& b) { return a.value_ == b.value_; }
  friend bool operator<(const BigRational& a, const BigRational& b) { return a.value_ < b.value_; }

 private:
  mpq_class value_{0};
};

// re + i*im with rational parts.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(BigRational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(BigRational re, BigRational im) : re_(std::move(re)), im_(std::move(im)) {}

  const BigRational& re() const { return re_; }
  const BigRational& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }
  GaussianRational conj() const { return {re_, -im_}; }
  BigRational norm() const { return re_ * re_ + im_ * im_; }
  std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }

  // Canonical text: "3/4", "2i", "-1/3i", "1/2+1/3i", "i", "-i".
  std::string to_string() const;

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  BigRational re_;
  BigRational im_;
};

using ComplexFloat = std::complex<double>;

// Exact quotient by a positive integer.
BigRational int_div(const BigRational& s, long long k);
GaussianRational int_div(const GaussianRational& s, long long k);
ComplexFloat int_div(const ComplexFloat& s, long long k);

// Relative tolerance 1e-9 with absolute floor 1e-12.
bool approx_equal(const ComplexFloat& a, const ComplexFloat& b, double rel = 1e-9, double abs_floor = 1e-12);

std::string to_string(const ComplexFloat& c);

enum class ScalarKind { Float, Field, Polynomial };

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<ComplexFloat> {
  static constexpr ScalarKind kind = ScalarKind::Float;
  static constexpr bool exact = false;
  static ComplexFloat zero() { return {}; }
  static ComplexFloat one() { return {1.0, 0.0}; }
  static ComplexFloat from_int(long long v) { return {static_cast<double>(v), 0.0}; }
  static bool is_zero(const ComplexFloat& a) { return a == ComplexFloat{}; }
  static bool equal(const ComplexFloat& a, const ComplexFloat& b) { return approx_equal(a, b); }
  static double magnitude(const ComplexFloat& a) { return std::abs(a); }
  static std::string to_string(const ComplexFloat& a) { return holodet::to_string(a); }
};

template <>
struct ScalarTraits<BigRational> {
  static constexpr ScalarKind kind = ScalarKind::Field;
  static constexpr bool exact = true;
  static BigRational zero() { return {}; }
  static BigRational one() { return {1}; }
  static BigRational from_int(long long v) { return {v}; }
  static bool is_zero(const BigRational& a) { return a.is_zero(); }
  static bool equal(const BigRational& a, const BigRational& b) { return a == b; }
  static double magnitude(const BigRational& a) { return std::abs(a.to_double()); }
  static std::string to_string(const BigRational& a) { return a.to_string(); }
};

template <>
struct ScalarTraits<GaussianRational> {
  static constexpr ScalarKind kind = ScalarKind::Field;
  static constexpr bool exact = true;
  static GaussianRational zero() { return {}; }
  static GaussianRational one() { return {1}; }
  static GaussianRational from_int(long long v) { return {v}; }
  static bool is_zero(const GaussianRational& a) { return a.is_zero(); }
  static bool equal(const GaussianRational& a, const GaussianRational& b) { return a == b; }
  static double magnitude(const GaussianRational& a) { return std::abs(a.to_complex()); }
  static std::string to_string(const GaussianRational& a) { return a.to_string(); }
};

template <class S>
concept Scalar = requires(const S& a, const S& b) {
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { -a } -> std::convertible_to<S>;
  { ScalarTraits<S>::zero() } -> std::convertible_to<S>;
  { ScalarTraits<S>::one() } -> std::convertible_to<S>;
  { int_div(a, 1LL) } -> std::convertible_to<S>;
};

template <class S>
inline constexpr bool is_exact_v = ScalarTraits<S>::exact;

template <class S>
inline constexpr bool is_field_v = ScalarTraits<S>::kind != ScalarKind::Polynomial;

template <Scalar S>
S scalar_pow(const S& base, unsigned exponent) {
  S result = ScalarTraits<S>::one();
  S b = base;
  while (exponent > 0) {
    if (exponent & 1U) result = result * b;
    exponent >>= 1U;
    if (exponent > 0) b = b * b;
  }
  return result;
}

template <Scalar S>
S scale_int(const S& s, long long k) {
  return s * ScalarTraits<S>::from_int(k);
}

inline ComplexFloat to_complex(const ComplexFloat& c) { return c; }
inline ComplexFloat to_complex(const BigRational& r) { return {r.to_double(), 0.0}; }
inline ComplexFloat to_complex(const GaussianRational& g) { return g.to_complex(); }

}  // namespace holodet
