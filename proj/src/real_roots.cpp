#include "aim/real_roots.hpp"

#include <algorithm>
#include <stdexcept>

#include "aim/bracket.hpp"
#include "aim/errors.hpp"

namespace aim {
namespace {

// Ascending integer coefficients; used for all sign evaluations in exact mode
// so that no rational normalisation happens inside the hot loops.
using IntPoly = std::vector<Integer>;

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }

Integer content(const IntPoly& p) {
  Integer g = 0;
  for (const auto& c : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

// Divides by the (positive) content, so signs are preserved.
void make_primitive(IntPoly& p) {
  trim(p);
  if (p.empty()) return;
  const Integer g = content(p);
  if (g == 1) return;
  for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

IntPoly to_int_poly(const EpsPoly<Rational>& p) {
  Integer l = 1;
  for (const auto& c : p.coefficients()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  IntPoly out;
  out.reserve(p.coefficients().size());
  for (const auto& c : p.coefficients()) {
    Integer v = l / c.get_den();
    v *= c.get_num();
    out.push_back(v);
  }
  make_primitive(out);
  return out;
}

EpsPoly<Rational> to_monic_rational(const IntPoly& p) {
  if (p.empty()) return {};
  std::vector<Rational> c;
  c.reserve(p.size());
  for (const auto& x : p) {
    Rational q(x, p.back());
    q.canonicalize();
    c.push_back(q);
  }
  return EpsPoly<Rational>(std::move(c));
}

IntPoly derivative(const IntPoly& p) {
  IntPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
  trim(d);
  return d;
}

// Pseudo-division: lc(b)^steps * a = q * b + r; returns r.
IntPoly pseudo_remainder(IntPoly a, const IntPoly& b, int* exponent_parity = nullptr) {
  const int db = degree(b);
  const Integer& lb = b.back();
  int steps = 0;
  while (degree(a) >= db && !a.empty()) {
    const int shift = degree(a) - db;
    const Integer la = a.back();
    for (auto& c : a) c *= lb;
    for (int j = 0; j <= db; ++j) a[static_cast<std::size_t>(shift + j)] -= la * b[static_cast<std::size_t>(j)];
    trim(a);
    ++steps;
  }
  // r = lb^steps * rem(a, b)
  if (exponent_parity) *exponent_parity = steps;
  return a;
}

// Remainder up to a positive constant: returns r with r = c * rem(a, b), c > 0.
IntPoly positive_remainder(const IntPoly& a, const IntPoly& b) {
  int steps = 0;
  IntPoly r = pseudo_remainder(a, b, &steps);
  if (sgn(b.back()) < 0 && (steps % 2 == 1)) {
    for (auto& c : r) c = -c;
  }
  make_primitive(r);
  return r;
}

std::vector<IntPoly> sturm_sequence(const IntPoly& p) {
  std::vector<IntPoly> seq{p, derivative(p)};
  make_primitive(seq[1]);
  while (!seq.back().empty() && degree(seq.back()) > 0) {
    IntPoly r = positive_remainder(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    seq.push_back(std::move(r));
  }
  return seq;
}

int eval_sign(const IntPoly& p, const Rational& x) {
  if (p.empty()) return 0;
  const Integer& num = x.get_num();
  const Integer& den = x.get_den();
  Integer acc = p.back();
  Integer dpow = den;
  for (int i = degree(p) - 1; i >= 0; --i) {
    acc *= num;
    acc += p[static_cast<std::size_t>(i)] * dpow;
    dpow *= den;
  }
  return sgn(acc);
}

int variations(const std::vector<IntPoly>& seq, const Rational& x) {
  int count = 0;
  int last = 0;
  for (const auto& s : seq) {
    const int sg = eval_sign(s, x);
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++count;
    last = sg;
  }
  return count;
}

IntPoly int_gcd(IntPoly a, IntPoly b) {
  make_primitive(a);
  make_primitive(b);
  if (degree(a) < degree(b)) std::swap(a, b);
  while (!b.empty()) {
    IntPoly r = pseudo_remainder(a, b);
    make_primitive(r);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

struct Interval {
  Rational lo;
  Rational hi;
  int v_lo;
  int v_hi;
};

RealRoot refine_isolated(const IntPoly& f, const std::vector<IntPoly>& seq, Rational a, Rational b, int v_a,
                         const BigReal& tol, const RootOptions& options) {
  // Exactly one root in (a, b].
  RealRoot root;
  if (eval_sign(f, b) == 0) {
    root.exact = b;
    root.value = to_big(b);
    return root;
  }
  int sa = eval_sign(f, a);
  while (sa == 0) {
    // a is a root belonging to a neighbouring interval; step off it with Sturm counts.
    Rational m = (a + b) / 2;
    if (eval_sign(f, m) == 0) {
      root.exact = m;
      root.value = to_big(m);
      return root;
    }
    const int v_m = variations(seq, m);
    if (v_a - v_m == 1) {
      b = m;
    } else {
      a = m;
      v_a = v_m;
      sa = eval_sign(f, a);
    }
  }

  const Rational bound(static_cast<long>(options.max_denominator));
  const Rational exact_width = Rational(1) / (bound * bound * 2);
  const Rational tol_q = to_rational(tol);
  bool exact_checked = false;
  for (;;) {
    const Rational width = b - a;
    if (!exact_checked && width < exact_width) {
      exact_checked = true;
      const Rational s = simplest_rational_between(a, b);
      if (eval_sign(f, s) == 0) {
        root.exact = s;
        root.value = to_big(s);
        return root;
      }
    }
    if (width <= tol_q && exact_checked) break;
    Rational m = (a + b) / 2;
    const int sm = eval_sign(f, m);
    if (sm == 0) {
      root.exact = m;
      root.value = to_big(m);
      return root;
    }
    if (sm == sa) {
      a = m;
    } else {
      b = m;
    }
  }
  root.value = to_big(Rational((a + b) / 2));
  return root;
}

std::vector<RealRoot> isolate_square_free(const EpsPoly<Rational>& p, const Rational& lo, const Rational& hi,
                                          const BigReal& tol, const RootOptions& options) {
  const IntPoly f = to_int_poly(p);
  std::vector<RealRoot> out;
  if (degree(f) < 1) return out;
  const auto seq = sturm_sequence(f);

  if (eval_sign(f, lo) == 0) out.push_back(RealRoot{to_big(lo), lo, 1});

  std::vector<Interval> stack{{lo, hi, variations(seq, lo), variations(seq, hi)}};
  while (!stack.empty()) {
    Interval iv = std::move(stack.back());
    stack.pop_back();
    const int count = iv.v_lo - iv.v_hi;
    if (count <= 0) continue;
    if (count == 1) {
      out.push_back(refine_isolated(f, seq, iv.lo, iv.hi, iv.v_lo, tol, options));
      continue;
    }
    Rational m = (iv.lo + iv.hi) / 2;
    const int v_m = variations(seq, m);
    stack.push_back({m, iv.hi, v_m, iv.v_hi});
    stack.push_back({iv.lo, m, iv.v_lo, v_m});
  }
  return out;
}

// ---- numeric mode -------------------------------------------------------

BigReal abs_scale(const EpsPoly<BigReal>& p, const BigReal& x) {
  BigReal acc = 0;
  const BigReal ax = abs_value(x);
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * ax + abs_value(*it);
  return acc;
}

bool near_zero(const EpsPoly<BigReal>& p, const BigReal& x) {
  const BigReal thr = working_epsilon() * 1000 * (p.degree() + 1) * abs_scale(p, x);
  return abs_value(p(x)) <= thr;
}

std::vector<RealRoot> numeric_roots(const EpsPoly<BigReal>& p, const BigReal& lo, const BigReal& hi,
                                    const BigReal& tol) {
  std::vector<RealRoot> out;
  const int d = p.degree();
  if (d <= 0) return out;
  if (d == 1) {
    const BigReal r = -p.coefficient(0) / p.coefficient(1);
    if (r >= lo && r <= hi) out.push_back(RealRoot{r, std::nullopt, 1});
    return out;
  }
  const auto critical = numeric_roots(p.derivative(), lo, hi, tol);

  struct Point {
    BigReal x;
    bool is_root;
    int multiplicity;
  };
  std::vector<Point> pts;
  pts.push_back({lo, p(lo) == 0, 1});
  for (const auto& c : critical) {
    const bool root = near_zero(p, c.value);
    pts.push_back({c.value, root, c.multiplicity + 1});
  }
  pts.push_back({hi, p(hi) == 0, 1});

  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].is_root) {
      if (out.empty() || out.back().value != pts[i].x) out.push_back(RealRoot{pts[i].x, std::nullopt, pts[i].multiplicity});
    }
    if (i + 1 == pts.size()) break;
    const Point& a = pts[i];
    const Point& b = pts[i + 1];
    if (a.is_root || b.is_root || !(a.x < b.x)) continue;
    const BigReal fa = p(a.x);
    const BigReal fb = p(b.x);
    if (sign(fa) * sign(fb) >= 0) continue;
    const auto r = bracketed_root([&p](const BigReal& x) { return p(x); }, a.x, b.x, fa, fb, tol);
    out.push_back(RealRoot{r.root, std::nullopt, 1});
  }
  return out;
}

}  // namespace

Rational cauchy_bound(const EpsPoly<Rational>& p) {
  if (p.is_zero()) throw DegenerateInputError("Cauchy bound of the zero polynomial");
  Rational m = 0;
  const Rational lead = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) {
    const Rational r = abs(p.coefficients()[static_cast<std::size_t>(i)]) / lead;
    if (r > m) m = r;
  }
  return m + 1;
}

BigReal cauchy_bound(const EpsPoly<BigReal>& p) {
  if (p.is_zero()) throw DegenerateInputError("Cauchy bound of the zero polynomial");
  BigReal m = 0;
  const BigReal lead = abs_value(p.leading());
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, BigReal(abs_value(p.coefficients()[static_cast<std::size_t>(i)]) / lead));
  return m + 1;
}

EpsPoly<Rational> poly_gcd(const EpsPoly<Rational>& a, const EpsPoly<Rational>& b) {
  if (a.is_zero() && b.is_zero()) return {};
  if (a.is_zero()) return to_monic_rational(to_int_poly(b));
  if (b.is_zero()) return to_monic_rational(to_int_poly(a));
  return to_monic_rational(int_gcd(to_int_poly(a), to_int_poly(b)));
}

std::vector<std::pair<EpsPoly<Rational>, int>> square_free_factors(const EpsPoly<Rational>& p) {
  if (p.is_zero()) throw DegenerateInputError("square-free decomposition of the zero polynomial");
  std::vector<std::pair<EpsPoly<Rational>, int>> out;
  if (p.degree() < 1) return out;
  const EpsPoly<Rational> dp = p.derivative();
  const EpsPoly<Rational> a0 = poly_gcd(p, dp);
  EpsPoly<Rational> b = div_rem(p, a0).first;
  EpsPoly<Rational> d = div_rem(dp, a0).first - b.derivative();
  for (int i = 1; b.degree() >= 1; ++i) {
    const EpsPoly<Rational> a = poly_gcd(b, d);
    if (a.degree() >= 1) out.emplace_back(a * Rational(Rational(1) / a.leading()), i);
    const EpsPoly<Rational> c = div_rem(d, a).first;
    b = div_rem(b, a).first;
    d = c - b.derivative();
  }
  return out;
}

int sturm_count(const EpsPoly<Rational>& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw DegenerateInputError("sturm_count: identically zero polynomial");
  if (p.degree() < 1) return 0;
  const EpsPoly<Rational> square_free = div_rem(p, poly_gcd(p, p.derivative())).first;
  const auto seq = sturm_sequence(to_int_poly(square_free));
  return variations(seq, lo) - variations(seq, hi);
}

Rational simplest_rational_between(const Rational& lo, const Rational& hi) {
  if (hi < lo) return simplest_rational_between(hi, lo);
  if (sgn(lo) <= 0 && sgn(hi) >= 0) return Rational(0);
  if (sgn(hi) < 0) return -simplest_rational_between(-hi, -lo);
  // 0 < lo <= hi
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  const Rational frac_lo = lo - fl;
  const Rational frac_hi = hi - fl;
  const Rational inner = simplest_rational_between(Rational(1) / frac_hi, Rational(1) / frac_lo);
  return Rational(fl) + Rational(1) / inner;
}

std::vector<RealRoot> real_roots(const EpsPoly<Rational>& p, const Rational& lo, const Rational& hi,
                                 const BigReal& tol, const RootOptions& options) {
  if (p.is_zero()) throw DegenerateInputError("real_roots: identically zero polynomial");
  if (!(lo < hi)) throw std::invalid_argument("real_roots: empty interval");
  std::vector<RealRoot> out;
  for (const auto& [factor, mult] : square_free_factors(p)) {
    for (auto& r : isolate_square_free(factor, lo, hi, tol, options)) {
      r.multiplicity = mult;
      out.push_back(std::move(r));
    }
  }
  std::sort(out.begin(), out.end(), [](const RealRoot& a, const RealRoot& b) {
    if (a.exact && b.exact) return *a.exact < *b.exact;
    return a.value < b.value;
  });
  return out;
}

std::vector<RealRoot> real_roots(const EpsPoly<BigReal>& p, const BigReal& lo, const BigReal& hi,
                                 const BigReal& tol) {
  if (p.is_zero()) throw DegenerateInputError("real_roots: identically zero polynomial");
  if (!(lo < hi)) throw std::invalid_argument("real_roots: empty interval");
  return numeric_roots(p, lo, hi, tol);
}

}  // namespace aim
