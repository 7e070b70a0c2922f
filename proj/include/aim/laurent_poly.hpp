#pragma once

// Finite Laurent polynomial in u whose coefficients are EpsPoly values; the
// representation of the AIM sequences lambda_k(u), s_k(u).

#include <map>
#include <ostream>

#include "aim/eps_poly.hpp"
#include "aim/errors.hpp"

namespace aim {

template <Scalar T>
class LaurentPoly {
 public:
  using Terms = std::map<int, EpsPoly<T>>;

  LaurentPoly() = default;
  explicit LaurentPoly(Terms terms) : terms_(std::move(terms)) { prune(); }

  static LaurentPoly term(int exponent, EpsPoly<T> c) { return LaurentPoly(Terms{{exponent, std::move(c)}}); }
  static LaurentPoly constant(T c) { return term(0, EpsPoly<T>::constant(std::move(c))); }

  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  int min_exp() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  int max_exp() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

  EpsPoly<T> coefficient(int exponent) const {
    const auto it = terms_.find(exponent);
    return it == terms_.end() ? EpsPoly<T>{} : it->second;
  }

  /// Highest degree in the eigenparameter over all coefficients.
  int eps_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, c.degree());
    return d;
  }

  /// Term-wise d/du.
  LaurentPoly diff_u() const {
    Terms out;
    for (const auto& [e, c] : terms_) {
      if (e == 0) continue;
      out.emplace(e - 1, c * T(static_cast<long>(e)));
    }
    return LaurentPoly(std::move(out));
  }

  /// Substitutes u = u_star, leaving a polynomial in the eigenparameter.
  EpsPoly<T> eval_u(const T& u_star) const {
    if (is_zero_scalar(u_star)) {
      if (!terms_.empty() && min_exp() < 0) throw PoleError("Laurent polynomial has a pole at u = 0");
      return coefficient(0);
    }
    EpsPoly<T> acc;
    for (const auto& [e, c] : terms_) acc += c * power(u_star, e);
    return acc;
  }

  /// Substitutes a value for the eigenparameter in every coefficient.
  LaurentPoly specialize(const T& eps) const {
    Terms out;
    for (const auto& [e, c] : terms_) out.emplace(e, EpsPoly<T>::constant(c(eps)));
    return LaurentPoly(std::move(out));
  }

  /// Value at (u, eps).
  T value(const T& u, const T& eps) const { return eval_u(u)(eps); }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) {
      auto [it, inserted] = terms_.try_emplace(e, c);
      if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
      }
    }
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this += -o; }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(LaurentPoly a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    Terms out;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        EpsPoly<T> prod = ca * cb;
        auto [it, inserted] = out.try_emplace(ea + eb, std::move(prod));
        if (!inserted) it->second += prod;
      }
    }
    return LaurentPoly(std::move(out));
  }
  friend LaurentPoly operator*(const T& s, const LaurentPoly& a) {
    Terms out;
    for (const auto& [e, c] : a.terms_) out.emplace(e, c * s);
    return LaurentPoly(std::move(out));
  }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

  friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (const auto& [e, c] : p.terms_) {
      if (!first) os << " + ";
      os << "[" << c << "]*u^" << e;
      first = false;
    }
    return os;
  }

 private:
  static bool is_zero_scalar(const T& x) { return aim::is_zero(x); }

  static T power(const T& base, int e) {
    T r(1);
    T b = e >= 0 ? base : T(T(1) / base);
    for (int n = e >= 0 ? e : -e; n > 0; n >>= 1) {
      if (n & 1) r *= b;
      b *= b;
    }
    return r;
  }

  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }
  }

  Terms terms_;
};

}  // namespace aim
