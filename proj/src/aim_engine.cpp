#include "aim/aim_engine.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <limits>
#include <stdexcept>

#include "aim/bracket.hpp"

namespace aim {

template <Scalar T>
AimProblem<T>::AimProblem(LaurentPoly<T> lambda0, LaurentPoly<T> s0, T u_star, std::string label, LevelOrder order)
    : lambda0_(std::move(lambda0)), s0_(std::move(s0)), u_star_(std::move(u_star)), label_(std::move(label)),
      order_(order) {
  if (lambda0_.is_zero()) throw std::invalid_argument("AIM requires lambda0 != 0");
  if (sign(u_star_) <= 0) throw std::invalid_argument("evaluation point u* must be positive");
}

template <Scalar T>
AimSequence<T>::AimSequence(const AimProblem<T>& problem) : problem_(problem) {
  current_.k = 0;
  current_.lambda = problem_.lambda0();
  current_.s = problem_.s0();
}

template <Scalar T>
const AimTrace<T>& AimSequence<T>::advance() {
  auto [lambda, s] = aim_step(current_.lambda, current_.s, problem_.lambda0(), problem_.s0());
  AimTrace<T> next{current_.k + 1, std::move(lambda), std::move(s), {}};
  next.delta_at_u = delta_poly(next, current_, problem_.u_star());
  previous_ = std::move(current_);
  current_ = std::move(next);
  return current_;
}

template class AimProblem<Rational>;
template class AimProblem<BigReal>;
template class AimSequence<Rational>;
template class AimSequence<BigReal>;

namespace {

struct Candidate {
  BigReal value;
  std::optional<Rational> exact;
  int first_k = 0;
  BigReal gap;
};

// |p(r) / p'(r)|: the Newton step, an estimate of the distance to the root.
template <Scalar T>
BigReal newton_residual(const EpsPoly<T>& p, const BigReal& r) {
  const EpsPoly<BigReal> pb = to_big(p);
  const BigReal v = pb(r);
  if (v == 0) return BigReal(0);
  const BigReal d = pb.derivative()(r);
  if (d == 0) return boost::multiprecision::abs(v);
  return boost::multiprecision::abs(v / d);
}

template <Scalar T>
T scalar_from(const Candidate& c) {
  if constexpr (std::same_as<T, Rational>) {
    return c.exact ? *c.exact : to_rational(c.value);
  } else {
    return c.value;
  }
}

template <Scalar T>
std::vector<EigenvalueResult<T>> to_results(std::vector<Candidate> accepted, const AimProblem<T>& problem,
                                            const EpsPoly<T>& delta, std::size_t limit) {
  std::sort(accepted.begin(), accepted.end(), [&](const Candidate& a, const Candidate& b) {
    return problem.order() == LevelOrder::ascending ? a.value < b.value : a.value > b.value;
  });
  if (accepted.size() > limit) accepted.resize(limit);
  std::vector<EigenvalueResult<T>> out;
  out.reserve(accepted.size());
  for (std::size_t i = 0; i < accepted.size(); ++i) {
    const auto& c = accepted[i];
    BigReal residual = c.exact ? BigReal(0) : newton_residual(delta, c.value);
    out.push_back(EigenvalueResult<T>{static_cast<int>(i), scalar_from<T>(c), c.first_k, residual, c.gap});
  }
  return out;
}

// Carries first-acceptance iteration numbers from the previous accepted set.
void inherit_first_k(std::vector<Candidate>& now, const std::vector<Candidate>& before, const BigReal& tol) {
  for (auto& c : now) {
    for (const auto& b : before) {
      const bool same = (c.exact && b.exact) ? *c.exact == *b.exact
                                             : boost::multiprecision::abs(c.value - b.value) < tol * 10;
      if (same) {
        c.first_k = b.first_k;
        break;
      }
    }
  }
}

std::vector<RealRoot> all_roots(const EpsPoly<Rational>& p, const BigReal& tol, const SymbolicOptions& options) {
  const Rational radius = options.search_radius ? to_rational(*options.search_radius) : cauchy_bound(p);
  return real_roots(p, Rational(-radius), radius, tol, RootOptions{options.max_denominator});
}

std::vector<RealRoot> all_roots(const EpsPoly<BigReal>& p, const BigReal& tol, const SymbolicOptions& options) {
  const BigReal radius = options.search_radius ? *options.search_radius : cauchy_bound(p);
  return real_roots(p, BigReal(-radius), radius, tol);
}

// Exact mode: a root present in delta_k and delta_{k-1} is a root of their gcd.
std::vector<Candidate> stable_roots(const EpsPoly<Rational>& delta, const EpsPoly<Rational>& prev_delta, int k,
                                    const BigReal& tol, const SymbolicOptions& options) {
  std::vector<Candidate> out;
  const EpsPoly<Rational> g = poly_gcd(delta, prev_delta);
  if (g.degree() < 1) return out;
  for (auto& r : all_roots(g, tol, options)) out.push_back(Candidate{r.value, r.exact, k, BigReal(0)});
  return out;
}

// Numeric mode: match roots of consecutive deltas by distance.
std::vector<Candidate> stable_roots(const std::vector<RealRoot>& now, const std::vector<RealRoot>& before, int k,
                                    const BigReal& tol) {
  std::vector<Candidate> out;
  for (const auto& r : now) {
    std::optional<BigReal> best;
    for (const auto& b : before) {
      const BigReal gap = boost::multiprecision::abs(r.value - b.value);
      if (!best || gap < *best) best = gap;
    }
    if (best && *best < tol) out.push_back(Candidate{r.value, std::nullopt, k, *best});
  }
  return out;
}

std::size_t real_root_count(const EpsPoly<Rational>& p, const SymbolicOptions& options) {
  if (p.is_zero() || p.degree() < 1) return 0;
  const Rational radius = options.search_radius ? to_rational(*options.search_radius) : cauchy_bound(p);
  return static_cast<std::size_t>(sturm_count(p, -radius, radius));
}

std::size_t real_root_count(const EpsPoly<BigReal>& p, const SymbolicOptions& options) {
  if (p.is_zero() || p.degree() < 1) return 0;
  return all_roots(p, working_epsilon(), options).size();
}

}  // namespace

namespace {

// Coefficient-wise bound on |L(u*)| as a polynomial in eps.
EpsPoly<BigReal> magnitude(const LaurentPoly<BigReal>& l, const BigReal& u_star) {
  const BigReal u = boost::multiprecision::abs(u_star);
  std::vector<BigReal> acc;
  for (const auto& [e, c] : l.terms()) {
    const BigReal w = boost::multiprecision::pow(u, e);
    const auto& cs = c.coefficients();
    if (acc.size() < cs.size()) acc.resize(cs.size(), BigReal(0));
    for (std::size_t i = 0; i < cs.size(); ++i) acc[i] += boost::multiprecision::abs(cs[i]) * w;
  }
  return EpsPoly<BigReal>(std::move(acc));
}

}  // namespace

EpsPoly<BigReal> trim_cancelled(EpsPoly<BigReal> delta, const AimTrace<BigReal>& current,
                                const AimTrace<BigReal>& previous, const BigReal& u_star) {
  if (delta.is_zero()) return delta;
  const EpsPoly<BigReal> scale = magnitude(current.s, u_star) * magnitude(previous.lambda, u_star) +
                                 magnitude(previous.s, u_star) * magnitude(current.lambda, u_star);
  // Rounding in lambda_k and s_k grows roughly linearly with k.
  const BigReal noise = working_epsilon() * 1000 * (current.k + 1);
  std::vector<BigReal> c = delta.coefficients();
  while (!c.empty()) {
    const std::size_t i = c.size() - 1;
    if (boost::multiprecision::abs(c[i]) > noise * scale.coefficient(static_cast<int>(i))) break;
    c.pop_back();
  }
  return EpsPoly<BigReal>(std::move(c));
}

template <Scalar T>
std::vector<EigenvalueResult<T>> eigenvalues_symbolic(const AimProblem<T>& problem, int n_levels, int k_max,
                                                      const BigReal& tol, const SymbolicOptions& options) {
  if (n_levels < 1) throw std::invalid_argument("n_levels must be at least 1");
  if (k_max < n_levels + 2) throw std::invalid_argument("k_max must be at least n_levels + 2");

  AimSequence<T> seq(problem);
  EpsPoly<T> prev_delta = seq.advance().delta_at_u;
  std::vector<RealRoot> prev_roots;
  if constexpr (std::same_as<T, BigReal>) {
    if (!prev_delta.is_zero()) prev_roots = all_roots(prev_delta, tol, options);
  }

  std::vector<Candidate> accepted;
  for (int k = 2; k <= k_max; ++k) {
    const EpsPoly<T> delta = seq.advance().delta_at_u;
    if (delta.is_zero()) {
      throw DegenerateInputError("delta_" + std::to_string(k) + " vanishes identically for every eigenparameter");
    }
    std::vector<Candidate> now;
    if constexpr (std::same_as<T, Rational>) {
      now = stable_roots(delta, prev_delta, k, tol, options);
    } else {
      std::vector<RealRoot> roots = all_roots(delta, tol, options);
      now = stable_roots(roots, prev_roots, k, tol);
      prev_roots = std::move(roots);
    }
    inherit_first_k(now, accepted, tol);
    accepted = std::move(now);
    if (accepted.size() >= static_cast<std::size_t>(n_levels)) {
      return to_results<T>(std::move(accepted), problem, delta, static_cast<std::size_t>(n_levels));
    }
    prev_delta = delta;
  }

  auto partial = to_results<T>(accepted, problem, prev_delta, accepted.size());
  const std::size_t available = real_root_count(prev_delta, options);
  const std::string msg = std::to_string(accepted.size()) + " of " + std::to_string(n_levels) +
                          " levels stable after k_max = " + std::to_string(k_max) + " iterations";
  if (available < static_cast<std::size_t>(n_levels)) {
    throw LevelCountError<T>(msg + " (delta has only " + std::to_string(available) + " real roots)", std::move(partial));
  }
  throw ConvergenceError<T>(msg, std::move(partial));
}

template std::vector<EigenvalueResult<Rational>> eigenvalues_symbolic(const AimProblem<Rational>&, int, int,
                                                                      const BigReal&, const SymbolicOptions&);
template std::vector<EigenvalueResult<BigReal>> eigenvalues_symbolic(const AimProblem<BigReal>&, int, int,
                                                                     const BigReal&, const SymbolicOptions&);

BigReal delta_value(const AimProblem<BigReal>& problem, const BigReal& eps, int k) {
  if (k < 1) throw std::invalid_argument("delta_k is defined for k >= 1");
  const LaurentPoly<BigReal> lambda0 = problem.lambda0().specialize(eps);
  const LaurentPoly<BigReal> s0 = problem.s0().specialize(eps);
  LaurentPoly<BigReal> lambda_prev;
  LaurentPoly<BigReal> s_prev;
  LaurentPoly<BigReal> lambda = lambda0;
  LaurentPoly<BigReal> s = s0;
  for (int i = 0; i < k; ++i) {
    auto [ln, sn] = aim_step(lambda, s, lambda0, s0);
    lambda_prev = std::move(lambda);
    s_prev = std::move(s);
    lambda = std::move(ln);
    s = std::move(sn);
  }
  const BigReal& u = problem.u_star();
  const BigReal zero(0);
  return s.value(u, zero) * lambda_prev.value(u, zero) - s_prev.value(u, zero) * lambda.value(u, zero);
}

EigenvalueResult<BigReal> eigenvalue_numeric(const AimProblem<BigReal>& problem, const BigReal& lo, const BigReal& hi,
                                             int k_fixed, const BigReal& tol) {
  if (k_fixed < 1) throw std::invalid_argument("k_fixed must be at least 1");
  if (!(lo < hi)) throw std::invalid_argument("bracket must satisfy lo < hi");
  auto f = [&](int k) { return [&problem, k](const BigReal& e) { return delta_value(problem, e, k); }; };

  const BracketResult r = bracketed_root(f(k_fixed), lo, hi, tol);
  if (!r.converged) {
    throw ConvergenceError<BigReal>("bracketed root search did not reach the requested tolerance", {});
  }

  BigReal gap = std::numeric_limits<BigReal>::infinity();
  if (k_fixed > 1) {
    try {
      const BracketResult prev = bracketed_root(f(k_fixed - 1), lo, hi, tol);
      gap = boost::multiprecision::abs(prev.root - r.root);
    } catch (const BracketError&) {
      // root not yet present one iteration earlier
    }
  }

  BigReal residual = 0;
  const BigReal fr = f(k_fixed)(r.root);
  if (fr != 0) {
    const BigReal h = std::max(tol, BigReal(working_epsilon() * 1000 * (1 + abs_value(r.root))));
    const BigReal slope = (f(k_fixed)(r.root + h) - f(k_fixed)(r.root - h)) / (2 * h);
    residual = slope == 0 ? abs_value(fr) : BigReal(abs_value(fr / slope));
  }
  return EigenvalueResult<BigReal>{0, r.root, k_fixed, residual, gap};
}

std::vector<EigenvalueResult<BigReal>> eigenvalues_shooting(const AimProblem<BigReal>& problem, int n_levels,
                                                            int k_max, const BigReal& tol,
                                                            const ShootingOptions& options) {
  if (options.workers < 1) throw std::invalid_argument("workers must be at least 1");
  std::vector<EigenvalueResult<BigReal>> located;
  std::optional<std::string> failure;
  try {
    located = eigenvalues_symbolic(problem, n_levels, k_max, BigReal(options.locate_tol));
  } catch (const ConvergenceError<BigReal>& e) {
    located = e.partial();
    failure = e.what();
  }

  const std::size_t count = located.size();
  std::vector<std::optional<EigenvalueResult<BigReal>>> refined(count);
  const unsigned digits = working_digits();
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    // Only touch the default when it differs: it may be shared between threads.
    std::optional<PrecisionGuard> guard;
    if (working_digits() != digits) guard.emplace(digits);
    for (std::size_t i = next++; i < count; i = next++) {
      const BigReal& x = located[i].epsilon;
      BigReal below = 1;
      BigReal above = 1;
      // Neighbours in value, whatever the level order.
      for (std::size_t j = 0; j < count; ++j) {
        if (j == i) continue;
        const BigReal d = located[j].epsilon - x;
        if (d > 0) above = std::min(above, BigReal(d / 2));
        if (d < 0) below = std::min(below, BigReal(-d / 2));
      }
      try {
        auto r = eigenvalue_numeric(problem, x - below, x + above, located[i].k_converged + options.k_extra, tol);
        if (r.stability_gap < tol) {
          r.n = static_cast<int>(i);
          r.k_converged = located[i].k_converged;
          refined[i] = std::move(r);
        }
      } catch (const AimError&) {
        // left empty: the level did not converge
      }
    }
  };
  std::vector<std::thread> pool;
  const int extra = std::min<int>(options.workers, static_cast<int>(count)) - 1;
  for (int t = 0; t < extra; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::vector<EigenvalueResult<BigReal>> out;
  for (auto& r : refined) {
    if (!r) break;
    out.push_back(std::move(*r));
  }
  if (out.size() < static_cast<std::size_t>(n_levels)) {
    if (!failure) {
      failure = "level " + std::to_string(out.size()) + " did not settle to the requested tolerance when refined";
    }
    throw ConvergenceError<BigReal>(*failure, std::move(out));
  }
  return out;
}

template <Scalar T>
RhoPair<T> rho_function(const AimProblem<T>& problem, const T& epsilon, int k) {
  if (k < 0) throw std::invalid_argument("iteration index must be non-negative");
  const LaurentPoly<T> lambda0 = problem.lambda0().specialize(epsilon);
  const LaurentPoly<T> s0 = problem.s0().specialize(epsilon);
  LaurentPoly<T> lambda = lambda0;
  LaurentPoly<T> s = s0;
  for (int i = 0; i < k; ++i) {
    auto [ln, sn] = aim_step(lambda, s, lambda0, s0);
    lambda = std::move(ln);
    s = std::move(sn);
  }
  return RhoPair<T>{std::move(s), std::move(lambda)};
}

template RhoPair<Rational> rho_function(const AimProblem<Rational>&, const Rational&, int);
template RhoPair<BigReal> rho_function(const AimProblem<BigReal>&, const BigReal&, int);

}  // namespace aim
