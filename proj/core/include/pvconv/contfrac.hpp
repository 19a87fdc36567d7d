#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pvconv/error.hpp"

namespace pvconv {

/// Generalized continued fraction driven by alpha and the parity bit kappa:
/// partial numerators/denominators are the geometric sums
///   u_n = alpha + ... + alpha^{a_n},  v_n = alpha^{a_n}        (n+kappa even)
/// and their reciprocal-form counterparts for odd n+kappa; u_0 = 0 whenever
/// a_0 = 0 (empty sum).
struct CFParams {
  double alpha = 1.0;
  int kappa = 0;

  double rho() const;  // min(sqrt(alpha), 1/sqrt(alpha))
};

/// Incremental evaluator of [kappa | a_0; a_1, ..., a_n] keeping the last two
/// (p, q) pairs; the state renormalizes every 32 steps, which leaves every
/// ratio observable unchanged.
class ContinuedFraction {
 public:
  explicit ContinuedFraction(CFParams params);

  void push(long a);
  int length() const { return n_ + 1; }  // digits consumed

  /// p_n / q_n.
  double value() const;
  /// Vector-terminated value p_n(x,y)/q_n(x,y) per the Q_kappa product.
  double value_vector(double x, double y) const;
  /// delta_n = |p_n/q_n - p_{n-1}/q_{n-1}| (needs n >= 1).
  double delta() const;
  /// Value obtained by sending one further digit to infinity:
  /// [kappa | a_0; ..., a_n, infinity].
  double value_inf_tail(double tol) const;

  double u(long a, int index_parity) const;  // partial numerator for digit a
  double v(long a, int index_parity) const;

  const CFParams& params() const { return par_; }

 private:
  CFParams par_;
  int n_ = -1;
  double pn_ = 1, qn_ = 0;    // seeds p_{-1} = 1, q_{-1} = 0
  double pn1_ = 0, qn1_ = 0;  // p_{-2}, q_{-2} unused until n >= 1
  double vn_ = 1, vn1_ = 1;   // v_n, v_{n-1}
  int steps_since_renorm_ = 0;

  void renormalize();
};

/// [kappa | digits[0]; digits[1], ...].
double cf_eval(const CFParams& params, std::span<const long> digits);

/// Vector-terminated evaluation (Eq.-level Q_kappa(a_0..a_n) (x y)^T ratio).
double cf_eval_vector(const CFParams& params, std::span<const long> digits,
                      double x, double y);

/// delta_n for the full digit list (n = digits.size() - 1 >= 1).
double cf_delta(const CFParams& params, std::span<const long> digits);

/// [kappa | a_0; ..., a_n, infinity]: iterates the trailing digit with
/// doubling until successive values differ by less than tol.
double cf_limit(const CFParams& params, std::span<const long> digits,
                double tol);

/// Limit of an infinite digit stream (stream(i) = a_i), extended until
/// delta_n < tol. Throws ConvergenceError past the cap.
double cf_limit(const CFParams& params, const std::function<long(int)>& stream,
                double tol, int cap = 100000);

/// Test-facing bounds from the convergence lemmas.
/// Exponential branch (alpha != 1): rho^{a_1+...+a_n} / rho^{2+2a_0+a_n}.
/// Throws DomainError when alpha == 1.
double delta_bound_exponential(const CFParams& params,
                               std::span<const long> digits);
/// Regular branch (alpha == 1): 1/(a_0+...+a_n).
double delta_bound_regular(std::span<const long> digits);
/// Truncation-change majorant (K/rho^{2a_0}) rho^{a_1+...+a_{n-1}+a} with
/// K = 1/(rho^2 (1-rho)).
double truncation_bound(const CFParams& params, std::span<const long> digits,
                        long a);

}  // namespace pvconv
