#pragma once

// Sparse multivariate polynomials over a declared set of indeterminates.
//
// A monomial is a dense exponent vector indexed by the position of the symbol
// in its IndeterminateSet. Trailing zero exponents are trimmed so that
// constants built without a symbol table compare equal to constants built
// with one; the vector is otherwise dense.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "holodet/error.hpp"
#include "holodet/ring.hpp"

namespace holodet {

class IndeterminateSet {
 public:
  IndeterminateSet() = default;
  explicit IndeterminateSet(const std::vector<std::string>& names) {
    for (const auto& n : names) add(n);
  }

  // Returns the index of `name`, registering it if new.
  std::size_t add(const std::string& name) {
    if (auto it = index_.find(name); it != index_.end()) return it->second;
    names_.push_back(name);
    index_.emplace(name, names_.size() - 1);
    return names_.size() - 1;
  }

  bool contains(const std::string& name) const { return index_.count(name) != 0; }

  std::size_t index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw ValidationError("unknown symbol '" + name + "'");
    return it->second;
  }

  const std::string& name(std::size_t index) const { return names_.at(index); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

template <class C>
class Poly {
 public:
  using Coefficient = C;
  using Exponents = std::vector<std::uint16_t>;
  using Terms = std::map<Exponents, C>;

  Poly() = default;
  explicit Poly(const C& constant) {
    if (!ScalarTraits<C>::is_zero(constant)) terms_.emplace(Exponents{}, constant);
  }

  static Poly variable(std::size_t index, std::uint16_t power = 1) {
    Poly p;
    Exponents e(index + 1, 0);
    e[index] = power;
    p.terms_.emplace(trimmed(std::move(e)), ScalarTraits<C>::one());
    return p;
  }

  static Poly monomial(Exponents e, const C& coefficient) {
    Poly p;
    if (!ScalarTraits<C>::is_zero(coefficient)) p.terms_.emplace(trimmed(std::move(e)), coefficient);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
  C constant_term() const {
    auto it = terms_.find(Exponents{});
    return it == terms_.end() ? ScalarTraits<C>::zero() : it->second;
  }
  C coefficient(const Exponents& e) const {
    auto it = terms_.find(trimmed(e));
    return it == terms_.end() ? ScalarTraits<C>::zero() : it->second;
  }

  // Highest symbol index occurring, plus one.
  std::size_t width() const {
    std::size_t w = 0;
    for (const auto& [e, c] : terms_) w = std::max(w, e.size());
    return w;
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, degree_of(e));
    return d;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) accumulate(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) accumulate(e, -c);
    return *this;
  }
  Poly& operator*=(const Poly& o) {
    *this = *this * o;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) r.accumulate(add_exponents(ea, eb), ca * cb);
    }
    return r;
  }
  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib) {
      if (ia->first != ib->first || !ScalarTraits<C>::equal(ia->second, ib->second)) return false;
    }
    return true;
  }

  Poly scaled(const C& factor) const {
    Poly r;
    for (const auto& [e, c] : terms_) r.accumulate(e, c * factor);
    return r;
  }

  // Adds c * x^e in place; drops the term if it cancels.
  void accumulate(const Exponents& e, const C& c) {
    if (ScalarTraits<C>::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second = it->second + c;
      if (ScalarTraits<C>::is_zero(it->second)) terms_.erase(it);
    }
  }

  static unsigned degree_of(const Exponents& e) {
    unsigned d = 0;
    for (auto x : e) d += x;
    return d;
  }

  static Exponents trimmed(Exponents e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
    return e;
  }

  static Exponents add_exponents(const Exponents& a, const Exponents& b) {
    Exponents r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<std::uint16_t>(r[i] + a[i]);
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = static_cast<std::uint16_t>(r[i] + b[i]);
    return trimmed(std::move(r));
  }

 private:
  Terms terms_;
};

using MultiPoly = Poly<GaussianRational>;

template <class C>
Poly<C> int_div(const Poly<C>& p, long long k) {
  Poly<C> r;
  for (const auto& [e, c] : p.terms()) r.accumulate(e, int_div(c, k));
  return r;
}

template <class C>
struct ScalarTraits<Poly<C>> {
  static constexpr ScalarKind kind = ScalarKind::Polynomial;
  static constexpr bool exact = ScalarTraits<C>::exact;
  static Poly<C> zero() { return {}; }
  static Poly<C> one() { return Poly<C>(ScalarTraits<C>::one()); }
  static Poly<C> from_int(long long v) { return Poly<C>(ScalarTraits<C>::from_int(v)); }
  static bool is_zero(const Poly<C>& a) { return a.is_zero(); }
  static bool equal(const Poly<C>& a, const Poly<C>& b) { return a == b; }
  static double magnitude(const Poly<C>& a) {
    double m = 0;
    for (const auto& [e, c] : a.terms()) m = std::max(m, ScalarTraits<C>::magnitude(c));
    return m;
  }
  static std::string to_string(const Poly<C>& a);
};

// Monomial order used for printing: total degree ascending, then exponent
// vectors descending lexicographically (earlier symbols first).
template <class C>
std::vector<typename Poly<C>::Terms::const_iterator> ordered_terms(const Poly<C>& p) {
  std::vector<typename Poly<C>::Terms::const_iterator> order;
  for (auto it = p.terms().begin(); it != p.terms().end(); ++it) order.push_back(it);
  std::stable_sort(order.begin(), order.end(), [](auto a, auto b) {
    unsigned da = Poly<C>::degree_of(a->first);
    unsigned db = Poly<C>::degree_of(b->first);
    if (da != db) return da < db;
    return a->first > b->first;
  });
  return order;
}

namespace detail {

inline bool is_negative_real(const GaussianRational& c) { return c.is_real() && c.re().sign() < 0; }
inline bool is_negative_real(const BigRational& c) { return c.sign() < 0; }
inline bool is_negative_real(const ComplexFloat& c) { return c.imag() == 0.0 && c.real() < 0; }
inline bool is_compound(const GaussianRational& c) { return !c.re().is_zero() && !c.im().is_zero(); }
inline bool is_compound(const BigRational&) { return false; }
inline bool is_compound(const ComplexFloat& c) { return c.real() != 0.0 && c.imag() != 0.0; }

}  // namespace detail

// Canonical text, e.g. "x1*x2 - x1*x2*u*v". Symbols without a table print as
// s0, s1, ...
template <class C>
std::string to_string(const Poly<C>& p, const IndeterminateSet* symbols = nullptr) {
  if (p.is_zero()) return "0";
  auto symbol = [&](std::size_t i) {
    if (symbols != nullptr && i < symbols->size()) return symbols->name(i);
    return "s" + std::to_string(i);
  };
  std::string out;
  bool first = true;
  for (auto it : ordered_terms(p)) {
    const auto& [e, coeff] = *it;
    C c = coeff;
    bool negative = detail::is_negative_real(c);
    if (negative) c = -c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += symbol(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    bool unit = ScalarTraits<C>::equal(c, ScalarTraits<C>::one());
    std::string ctext = ScalarTraits<C>::to_string(c);
    if (detail::is_compound(c)) ctext = "(" + ctext + ")";
    if (mono.empty()) {
      out += ctext;
    } else if (unit) {
      out += mono;
    } else {
      out += ctext + "*" + mono;
    }
  }
  return out;
}

template <class C>
std::string ScalarTraits<Poly<C>>::to_string(const Poly<C>& a) {
  return holodet::to_string(a);
}

// Embeds a coefficient into an evaluation target.
template <class T, class C>
T embed_scalar(const C& c) {
  if constexpr (std::is_same_v<T, C>) {
    return c;
  } else if constexpr (std::is_same_v<T, ComplexFloat>) {
    return to_complex(c);
  } else if constexpr (std::is_same_v<T, BigRational> && std::is_same_v<C, GaussianRational>) {
    if (!c.is_real()) throw ValidationError("cannot evaluate a complex coefficient in a real target");
    return c.re();
  } else if constexpr (std::is_same_v<T, GaussianRational> && std::is_same_v<C, BigRational>) {
    return GaussianRational(c);
  } else {
    static_assert(std::is_same_v<T, Poly<C>>, "unsupported embedding");
    return Poly<C>(c);
  }
}

// Substitutes a value for every symbol occurring in p and evaluates in T.
template <class T, class C>
T poly_eval(const Poly<C>& p, const IndeterminateSet& symbols, const std::map<std::string, T>& assignment) {
  std::size_t width = p.width();
  std::vector<const T*> values(width, nullptr);
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0 || values[i] != nullptr) continue;
      const std::string& name = i < symbols.size() ? symbols.name(i) : "s" + std::to_string(i);
      auto it = assignment.find(name);
      if (it == assignment.end()) throw ValidationError("no value assigned to symbol '" + name + "'");
      values[i] = &it->second;
    }
  }
  T result = ScalarTraits<T>::zero();
  for (const auto& [e, c] : p.terms()) {
    T term = embed_scalar<T>(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) term = term * scalar_pow(*values[i], e[i]);
    }
    result = result + term;
  }
  return result;
}

// Replaces selected symbols by polynomials; other symbols are kept.
template <class C>
Poly<C> substitute(const Poly<C>& p, const std::map<std::size_t, Poly<C>>& replacement) {
  Poly<C> result;
  for (const auto& [e, c] : p.terms()) {
    typename Poly<C>::Exponents kept = e;
    Poly<C> factor(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      auto it = replacement.find(i);
      if (it == replacement.end() || e[i] == 0) continue;
      kept[i] = 0;
      factor = factor * scalar_pow(it->second, e[i]);
    }
    result += factor * Poly<C>::monomial(kept, ScalarTraits<C>::one());
  }
  return result;
}

// Groups p by the total degree in `vars`: result[k] is the coefficient of
// t^k after setting every listed symbol equal to a single t.
template <class C>
std::vector<Poly<C>> collapse_by_degree(const Poly<C>& p, const std::vector<std::size_t>& vars) {
  std::vector<Poly<C>> out;
  for (const auto& [e, c] : p.terms()) {
    typename Poly<C>::Exponents rest = e;
    unsigned k = 0;
    for (std::size_t v : vars) {
      if (v < rest.size()) {
        k += rest[v];
        rest[v] = 0;
      }
    }
    if (out.size() <= k) out.resize(k + 1);
    out[k].accumulate(Poly<C>::trimmed(rest), c);
  }
  return out;
}

// Constant embedding of an exact scalar into the polynomial ring.
inline MultiPoly to_poly(const MultiPoly& p) { return p; }
inline MultiPoly to_poly(const GaussianRational& g) { return MultiPoly(g); }
inline MultiPoly to_poly(const BigRational& r) { return MultiPoly(GaussianRational(r)); }

}  // namespace holodet
