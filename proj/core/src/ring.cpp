#include "holodet/ring.hpp"

#include <cmath>
#include <sstream>

#include "holodet/error.hpp"

namespace holodet {

BigRational::BigRational(long long v) : value_(static_cast<long>(v)) {}

BigRational::BigRational(long long num, long long den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  value_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  value_.canonicalize();
}

BigRational::BigRational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

namespace {

mpz_class parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw ValidationError("malformed number: '" + std::string(whole) + "'");
  for (char c : digits) {
    if (c < '0' || c > '9') throw ValidationError("malformed number: '" + std::string(whole) + "'");
  }
  return mpz_class(std::string(digits), 10);
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

// Decimal or integer literal with optional sign, fraction and exponent.
mpq_class parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
    std::string_view exp_part = s.substr(epos + 1);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    exponent = static_cast<long>(parse_integer(exp_part, text).get_si());
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, epos);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view frac = s.substr(dot + 1);
    digits = std::string(s.substr(0, dot)) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    digits = std::string(s);
  }
  mpq_class q(parse_integer(digits, text));
  if (exponent > 0) q *= pow10(static_cast<unsigned long>(exponent));
  if (exponent < 0) q /= pow10(static_cast<unsigned long>(-exponent));
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

}  // namespace

BigRational BigRational::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpq_class num = parse_decimal(text.substr(0, slash));
    mpq_class den = parse_decimal(text.substr(slash + 1));
    if (sgn(den) == 0) throw ValidationError("rational with zero denominator: '" + std::string(text) + "'");
    return BigRational(mpq_class(num / den));
  }
  return BigRational(parse_decimal(text));
}

std::string BigRational::to_string() const { return value_.get_str(10); }

BigRational& BigRational::operator+=(const BigRational& o) {
  value_ += o.value_;
  return *this;
}
BigRational& BigRational::operator-=(const BigRational& o) {
  value_ -= o.value_;
  return *this;
}
BigRational& BigRational::operator*=(const BigRational& o) {
  value_ *= o.value_;
  return *this;
}
BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw InvariantError("division of a rational by zero");
  value_ /= o.value_;
  return *this;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}
GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}
GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (im_.is_zero() && o.im_.is_zero()) {
    re_ *= o.re_;
    return *this;
  }
  BigRational re = re_ * o.re_ - im_ * o.im_;
  BigRational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}
GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  BigRational n = o.norm();
  if (n.is_zero()) throw InvariantError("division of a Gaussian rational by zero");
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

std::string GaussianRational::to_string() const {
  if (im_.is_zero()) return re_.to_string();
  auto imag_text = [](const BigRational& v) {
    if (v == BigRational(1)) return std::string("i");
    if (v == BigRational(-1)) return std::string("-i");
    return v.to_string() + "i";
  };
  if (re_.is_zero()) return imag_text(im_);
  std::string out = re_.to_string();
  if (im_.sign() > 0) out += "+";
  out += imag_text(im_);
  return out;
}

BigRational int_div(const BigRational& s, long long k) { return s / BigRational(k); }

GaussianRational int_div(const GaussianRational& s, long long k) {
  BigRational d(k);
  return {s.re() / d, s.im() / d};
}

ComplexFloat int_div(const ComplexFloat& s, long long k) { return s / static_cast<double>(k); }

bool approx_equal(const ComplexFloat& a, const ComplexFloat& b, double rel, double abs_floor) {
  double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= std::max(abs_floor, rel * scale);
}

std::string to_string(const ComplexFloat& c) {
  std::ostringstream os;
  os.precision(17);
  os << c.real();
  if (c.imag() != 0.0) {
    if (c.imag() > 0 || std::isnan(c.imag())) os << "+";
    os << c.imag() << "i";
  }
  return os.str();
}

}  // namespace holodet
