#pragma once

// Dense univariate polynomial in the eigenparameter, ascending coefficients.

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "aim/scalar.hpp"

namespace aim {

template <Scalar T>
class EpsPoly {
 public:
  EpsPoly() = default;
  explicit EpsPoly(std::vector<T> coefficients) : coeffs_(std::move(coefficients)) { trim(); }
  EpsPoly(std::initializer_list<T> coefficients) : coeffs_(coefficients) { trim(); }

  static EpsPoly constant(T c) { return EpsPoly(std::vector<T>{std::move(c)}); }
  static EpsPoly monomial(T c, std::size_t degree) {
    std::vector<T> v(degree + 1, T(0));
    v[degree] = std::move(c);
    return EpsPoly(std::move(v));
  }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<T>& coefficients() const { return coeffs_; }
  T coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : T(0); }
  const T& leading() const {
    if (coeffs_.empty()) throw std::logic_error("leading coefficient of the zero polynomial");
    return coeffs_.back();
  }

  T operator()(const T& x) const {
    T acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  EpsPoly derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<T> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * T(static_cast<long>(i));
    return EpsPoly(std::move(d));
  }

  EpsPoly& operator+=(const EpsPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  EpsPoly& operator-=(const EpsPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  EpsPoly& operator*=(const T& c) {
    if (aim::is_zero(c)) {
      coeffs_.clear();
      return *this;
    }
    for (auto& x : coeffs_) x *= c;
    return *this;
  }

  friend EpsPoly operator+(EpsPoly a, const EpsPoly& b) { return a += b; }
  friend EpsPoly operator-(EpsPoly a, const EpsPoly& b) { return a -= b; }
  friend EpsPoly operator-(EpsPoly a) {
    for (auto& x : a.coeffs_) x = -x;
    return a;
  }
  friend EpsPoly operator*(EpsPoly a, const T& c) { return a *= c; }
  friend EpsPoly operator*(const T& c, EpsPoly a) { return a *= c; }
  friend EpsPoly operator*(const EpsPoly& a, const EpsPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (aim::is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return EpsPoly(std::move(r));
  }
  friend bool operator==(const EpsPoly& a, const EpsPoly& b) { return a.coeffs_ == b.coeffs_; }

  friend std::ostream& operator<<(std::ostream& os, const EpsPoly& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i) {
      if (aim::is_zero(p.coeffs_[i])) continue;
      if (!first) os << " + ";
      os << "(" << p.coeffs_[i] << ")";
      if (i > 0) os << "*e^" << i;
      first = false;
    }
    return os;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && aim::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

/// Quotient and remainder of polynomial division over the coefficient field.
template <Scalar T>
std::pair<EpsPoly<T>, EpsPoly<T>> div_rem(const EpsPoly<T>& a, const EpsPoly<T>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<T> rem = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {EpsPoly<T>{}, a};
  std::vector<T> quot(static_cast<std::size_t>(a.degree() - db + 1), T(0));
  const T& lead = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    const T c = rem[static_cast<std::size_t>(i)] / lead;
    quot[static_cast<std::size_t>(i - db)] = c;
    if (is_zero(c)) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= c * b.coefficients()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {EpsPoly<T>(std::move(quot)), EpsPoly<T>(std::move(rem))};
}

template <Scalar T>
EpsPoly<BigReal> to_big(const EpsPoly<T>& p) {
  std::vector<BigReal> c;
  c.reserve(p.coefficients().size());
  for (const auto& x : p.coefficients()) c.push_back(to_big(x));
  return EpsPoly<BigReal>(std::move(c));
}

}  // namespace aim
