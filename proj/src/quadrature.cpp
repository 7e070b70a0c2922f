#include "aim/quadrature.hpp"

#include <algorithm>
#include <queue>
#include <vector>

#include <mpfr.h>

#include "aim/errors.hpp"

namespace aim {
namespace {

constexpr int kNodes = 12;

struct Rule {
  unsigned digits = 0;
  std::vector<BigReal> nodes;
  std::vector<BigReal> weights;
};

// Legendre nodes/weights on [-1, 1] at the working precision, by Newton's method.
const Rule& legendre_rule() {
  thread_local Rule rule;
  if (rule.digits == working_digits()) return rule;
  rule = Rule{working_digits(), {}, {}};
  BigReal pi;
  mpfr_const_pi(pi.backend().data(), MPFR_RNDN);
  const BigReal eps = working_epsilon() * 10;
  for (int i = 1; i <= kNodes; ++i) {
    BigReal x = boost::multiprecision::cos(pi * (BigReal(i) - BigReal(1) / 4) / (BigReal(kNodes) + BigReal(1) / 2));
    BigReal dp;
    for (int it = 0; it < 100; ++it) {
      BigReal p0 = 1;
      BigReal p1 = x;
      for (int n = 2; n <= kNodes; ++n) {
        BigReal p2 = ((2 * n - 1) * x * p1 - (n - 1) * p0) / n;
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      dp = kNodes * (x * p1 - p0) / (x * x - 1);
      const BigReal step = p1 / dp;
      x -= step;
      if (boost::multiprecision::abs(step) < eps) break;
    }
    rule.nodes.push_back(x);
    rule.weights.push_back(2 / ((1 - x * x) * dp * dp));
  }
  return rule;
}

BigReal apply(const std::function<BigReal(const BigReal&)>& f, const BigReal& a, const BigReal& b) {
  const Rule& rule = legendre_rule();
  const BigReal mid = (a + b) / 2;
  const BigReal half = (b - a) / 2;
  BigReal sum = 0;
  for (int i = 0; i < kNodes; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

struct Panel {
  BigReal a;
  BigReal b;
  BigReal value;
  BigReal error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel make_panel(const std::function<BigReal(const BigReal&)>& f, const BigReal& a, const BigReal& b) {
  const BigReal m = (a + b) / 2;
  const BigReal whole = apply(f, a, b);
  const BigReal halves = apply(f, a, m) + apply(f, m, b);
  return Panel{a, b, halves, boost::multiprecision::abs(halves - whole)};
}

}  // namespace

QuadratureResult integrate(const std::function<BigReal(const BigReal&)>& f, const BigReal& a, const BigReal& b,
                           const BigReal& rel_tol, const BigReal& abs_tol, int max_panels) {
  std::priority_queue<Panel> panels;
  constexpr int kInitial = 8;
  for (int i = 0; i < kInitial; ++i) {
    const BigReal lo = a + (b - a) * i / kInitial;
    const BigReal hi = a + (b - a) * (i + 1) / kInitial;
    panels.push(make_panel(f, lo, hi));
  }

  auto totals = [&panels]() {
    auto copy = panels;
    QuadratureResult r{BigReal(0), BigReal(0), static_cast<int>(copy.size())};
    while (!copy.empty()) {
      r.value += copy.top().value;
      r.error += copy.top().error;
      copy.pop();
    }
    return r;
  };

  BigReal value = 0;
  BigReal error = 0;
  {
    auto t = totals();
    value = t.value;
    error = t.error;
  }
  while (error > std::max(BigReal(rel_tol * boost::multiprecision::abs(value)), abs_tol)) {
    if (static_cast<int>(panels.size()) >= max_panels) {
      throw QuadratureError("quadrature did not converge within " + std::to_string(max_panels) + " panels",
                            value.convert_to<double>(), error.convert_to<double>());
    }
    const Panel worst = panels.top();
    panels.pop();
    const BigReal m = (worst.a + worst.b) / 2;
    Panel left = make_panel(f, worst.a, m);
    Panel right = make_panel(f, m, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(std::move(left));
    panels.push(std::move(right));
  }
  // Re-sum to shed accumulated rounding in the running totals.
  QuadratureResult out = totals();
  return out;
}

}  // namespace aim
