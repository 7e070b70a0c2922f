#pragma once

// Asymptotic iteration method for f'' = lambda0(u) f' + s0(u) f.
//
//   lambda_k = lambda_{k-1}' + s_{k-1} + lambda0 * lambda_{k-1}
//   s_k      = s_{k-1}'      + s0 * lambda_{k-1}
//
// Eigenvalues of the eigenparameter are the zeros of
//   delta_k(u*) = s_k(u*) lambda_{k-1}(u*) - s_{k-1}(u*) lambda_k(u*)
// that persist across consecutive iterations.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aim/laurent_poly.hpp"
#include "aim/real_roots.hpp"

namespace aim {

/// How root values map to level indices n = 0, 1, 2, ...
enum class LevelOrder { ascending, descending };

template <Scalar T>
class AimProblem {
 public:
  AimProblem(LaurentPoly<T> lambda0, LaurentPoly<T> s0, T u_star, std::string label,
             LevelOrder order = LevelOrder::ascending);

  const LaurentPoly<T>& lambda0() const { return lambda0_; }
  const LaurentPoly<T>& s0() const { return s0_; }
  const T& u_star() const { return u_star_; }
  const std::string& label() const { return label_; }
  LevelOrder order() const { return order_; }
  static constexpr Mode mode() { return mode_of<T>; }

  /// Same problem evaluated at a different point.
  AimProblem with_u_star(T u_star) const { return AimProblem(lambda0_, s0_, std::move(u_star), label_, order_); }

 private:
  LaurentPoly<T> lambda0_;
  LaurentPoly<T> s0_;
  T u_star_;
  std::string label_;
  LevelOrder order_;
};

template <Scalar T>
struct AimTrace {
  int k = 0;
  LaurentPoly<T> lambda;
  LaurentPoly<T> s;
  /// delta_k at u*; the zero polynomial for k = 0.
  EpsPoly<T> delta_at_u;
};

template <Scalar T>
struct EigenvalueResult {
  int n = 0;
  T epsilon;
  int k_converged = 0;
  BigReal residual;
  BigReal stability_gap;
};

/// Thrown when k_max iterations do not produce the requested number of stable
/// levels; carries the levels that did converge.
template <Scalar T>
class ConvergenceError : public AimError {
 public:
  ConvergenceError(const std::string& what, std::vector<EigenvalueResult<T>> partial)
      : AimError(what), partial_(std::move(partial)) {}
  const std::vector<EigenvalueResult<T>>& partial() const { return partial_; }

 private:
  std::vector<EigenvalueResult<T>> partial_;
};

/// delta_k has fewer real roots than the requested number of levels.
template <Scalar T>
class LevelCountError : public ConvergenceError<T> {
 public:
  using ConvergenceError<T>::ConvergenceError;
};

template <Scalar T>
std::pair<LaurentPoly<T>, LaurentPoly<T>> aim_step(const LaurentPoly<T>& lambda_prev, const LaurentPoly<T>& s_prev,
                                                   const LaurentPoly<T>& lambda0, const LaurentPoly<T>& s0) {
  LaurentPoly<T> lambda = lambda_prev.diff_u() + s_prev + lambda0 * lambda_prev;
  LaurentPoly<T> s = s_prev.diff_u() + s0 * lambda_prev;
  return {std::move(lambda), std::move(s)};
}

/// Drops leading eps-coefficients of a floating delta_k that are pure rounding
/// residue of the cancellation between its two products.
EpsPoly<BigReal> trim_cancelled(EpsPoly<BigReal> delta, const AimTrace<BigReal>& current,
                                const AimTrace<BigReal>& previous, const BigReal& u_star);

template <Scalar T>
EpsPoly<T> delta_poly(const AimTrace<T>& current, const AimTrace<T>& previous, const T& u_star) {
  EpsPoly<T> d = current.s.eval_u(u_star) * previous.lambda.eval_u(u_star) -
                 previous.s.eval_u(u_star) * current.lambda.eval_u(u_star);
  if constexpr (std::same_as<T, BigReal>) {
    return trim_cancelled(std::move(d), current, previous, u_star);
  } else {
    return d;
  }
}

/// Lazily generated sequence of AIM traces for one problem.
template <Scalar T>
class AimSequence {
 public:
  explicit AimSequence(const AimProblem<T>& problem);

  const AimTrace<T>& current() const { return current_; }
  const AimTrace<T>& previous() const { return previous_; }
  /// Performs one recursion step and returns the new trace.
  const AimTrace<T>& advance();

 private:
  AimProblem<T> problem_;
  AimTrace<T> previous_;
  AimTrace<T> current_;
};

struct SymbolicOptions {
  /// Denominator bound for exact rational roots.
  unsigned long max_denominator = 1'000'000;
  /// Half-width of the search interval; defaults to a Cauchy bound of delta_k.
  std::optional<BigReal> search_radius;
};

template <Scalar T>
std::vector<EigenvalueResult<T>> eigenvalues_symbolic(const AimProblem<T>& problem, int n_levels, int k_max,
                                                      const BigReal& tol, const SymbolicOptions& options = {});

/// Shooting mode: root of eps -> delta_k(u*; eps) inside a bracket, with the
/// eigenparameter fixed numerically before the recursion runs.
EigenvalueResult<BigReal> eigenvalue_numeric(const AimProblem<BigReal>& problem, const BigReal& lo, const BigReal& hi,
                                             int k_fixed, const BigReal& tol);

struct ShootingOptions {
  /// Stability tolerance of the locating symbolic pass.
  double locate_tol = 1e-6;
  /// Iterations beyond a level's first stable k used for its shooting solve.
  int k_extra = 2;
  int workers = 1;
};

/// Numeric mode for a whole spectrum: roots located by eigenvalues_symbolic
/// with a loose tolerance, then each level refined by eigenvalue_numeric inside
/// a bracket reaching halfway to its neighbours. A level counts as converged
/// when its shooting root moves by less than tol between k - 1 and k.
/// Runs at the caller's working precision; the symbolic pass loses roughly
/// two digits per iteration, so callers should add guard digits.
std::vector<EigenvalueResult<BigReal>> eigenvalues_shooting(const AimProblem<BigReal>& problem, int n_levels,
                                                            int k_max, const BigReal& tol,
                                                            const ShootingOptions& options = {});

/// delta_k(u*; eps) for a fixed numeric eps.
BigReal delta_value(const AimProblem<BigReal>& problem, const BigReal& eps, int k);

/// s_k and lambda_k with the eigenparameter substituted; rho(u) = s_k/lambda_k.
template <Scalar T>
struct RhoPair {
  LaurentPoly<T> s;
  LaurentPoly<T> lambda;

  T at(const T& u) const {
    const T den = lambda.eval_u(u)(T(0));
    if (is_zero(den)) throw PoleError("lambda_k vanishes at the requested point");
    return T(s.eval_u(u)(T(0)) / den);
  }
};

template <Scalar T>
RhoPair<T> rho_function(const AimProblem<T>& problem, const T& epsilon, int k);

extern template class AimProblem<Rational>;
extern template class AimProblem<BigReal>;
extern template class AimSequence<Rational>;
extern template class AimSequence<BigReal>;

}  // namespace aim
