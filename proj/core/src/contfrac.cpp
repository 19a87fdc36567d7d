#include "pvconv/contfrac.hpp"

#include <cmath>

namespace pvconv {

double CFParams::rho() const {
  if (!(alpha > 0)) throw UsageError("cf alpha must be positive");
  double s = std::sqrt(alpha);
  return std::min(s, 1.0 / s);
}

ContinuedFraction::ContinuedFraction(CFParams params) : par_(params) {
  if (!(par_.alpha > 0)) throw UsageError("cf alpha must be positive");
  if (par_.kappa != 0 && par_.kappa != 1)
    throw UsageError("cf kappa must be 0 or 1");
}

double ContinuedFraction::u(long a, int idx) const {
  if (a < 0) throw UsageError("cf digits must be nonnegative");
  bool even = ((idx + par_.kappa) % 2) == 0;
  double base = even ? par_.alpha : 1.0 / par_.alpha;
  // Geometric sum base + ... + base^a; empty sum (a = 0) gives u = 0.
  if (a == 0) return 0.0;
  if (a <= 64) {
    double s = 0.0, t = 1.0;
    for (long i = 0; i < a; ++i) {
      t *= base;
      s += t;
    }
    return s;
  }
  if (base == 1.0) return double(a);
  double ba = std::pow(base, double(a));
  if (std::isinf(ba)) return ba;
  return base * (ba - 1.0) / (base - 1.0);
}

double ContinuedFraction::v(long a, int idx) const {
  bool even = ((idx + par_.kappa) % 2) == 0;
  double base = even ? par_.alpha : 1.0 / par_.alpha;
  return std::pow(base, double(a));
}

void ContinuedFraction::push(long a) {
  if (a < 0) throw UsageError("cf digits must be nonnegative");
  if (n_ >= 0 && a == 0)
    throw UsageError("cf digits a_i must be positive for i >= 1");
  int idx = n_ + 1;
  double ui = u(a, idx), vi = v(a, idx);
  if (idx == 0) {
    // (p_0, q_0) = (u_0, 1), keeping (p_{-1}, q_{-1}) = (1, 0).
    pn1_ = 1;
    qn1_ = 0;
    pn_ = ui;
    qn_ = 1;
  } else {
    double p = ui * pn_ + vn_ * pn1_;
    double q = ui * qn_ + vn_ * qn1_;
    pn1_ = pn_;
    qn1_ = qn_;
    pn_ = p;
    qn_ = q;
  }
  vn1_ = vn_;
  vn_ = vi;
  ++n_;
  if (++steps_since_renorm_ >= 32) renormalize();
}

void ContinuedFraction::renormalize() {
  double scale = std::max(std::max(std::abs(pn_), std::abs(qn_)),
                          std::max(std::abs(pn1_), std::abs(qn1_)));
  if (scale > 0 && std::isfinite(scale)) {
    pn_ /= scale;
    qn_ /= scale;
    pn1_ /= scale;
    qn1_ /= scale;
  }
  steps_since_renorm_ = 0;
}

double ContinuedFraction::value() const {
  if (n_ < 0) throw UsageError("cf has no digits yet");
  return pn_ / qn_;
}

double ContinuedFraction::value_vector(double x, double y) const {
  if (n_ < 0) throw UsageError("cf has no digits yet");
  if (!(x >= 0 && y >= 0) || (x == 0 && y == 0))
    throw UsageError("cf terminal vector must be nonnegative and nonzero");
  double num = pn_ * x + vn_ * pn1_ * y;
  double den = qn_ * x + vn_ * qn1_ * y;
  if (den == 0) throw DomainError("cf vector evaluation: q_n(x,y) = 0");
  return num / den;
}

double ContinuedFraction::delta() const {
  if (n_ < 1) throw UsageError("delta_n needs n >= 1");
  if (qn_ == 0 || qn1_ == 0) throw DomainError("cf delta: zero denominator");
  return std::abs(pn_ / qn_ - pn1_ / qn1_);
}

double ContinuedFraction::value_inf_tail(double tol) const {
  if (n_ < 0) throw UsageError("cf has no digits yet");
  int idx = n_ + 1;
  auto with_digit = [&](double ui) {
    double p = ui * pn_ + vn_ * pn1_;
    double q = ui * qn_ + vn_ * qn1_;
    return p / q;
  };
  double prev = with_digit(u(1, idx));
  for (long k = 2;; k *= 2) {
    double ui = u(k, idx);
    if (ui > 1e150 || std::isinf(ui)) return pn_ / qn_;
    double cur = with_digit(ui);
    if (std::abs(cur - prev) < tol) return cur;
    prev = cur;
    if (k > (1L << 60))
      throw ConvergenceError("cf infinity-tail limit did not settle");
  }
}

double cf_eval(const CFParams& params, std::span<const long> digits) {
  if (digits.empty()) throw UsageError("cf needs at least a_0");
  ContinuedFraction cf(params);
  for (long a : digits) cf.push(a);
  return cf.value();
}

double cf_eval_vector(const CFParams& params, std::span<const long> digits,
                      double x, double y) {
  if (digits.empty()) throw UsageError("cf needs at least a_0");
  ContinuedFraction cf(params);
  for (long a : digits) cf.push(a);
  return cf.value_vector(x, y);
}

double cf_delta(const CFParams& params, std::span<const long> digits) {
  if (digits.size() < 2) throw UsageError("delta_n needs n >= 1");
  ContinuedFraction cf(params);
  for (long a : digits) cf.push(a);
  return cf.delta();
}

double cf_limit(const CFParams& params, std::span<const long> digits,
                double tol) {
  if (!(tol > 0)) throw UsageError("cf tolerance must be positive");
  ContinuedFraction cf(params);
  for (long a : digits) cf.push(a);
  return cf.value_inf_tail(tol);
}

double cf_limit(const CFParams& params, const std::function<long(int)>& stream,
                double tol, int cap) {
  if (!(tol > 0)) throw UsageError("cf tolerance must be positive");
  ContinuedFraction cf(params);
  cf.push(stream(0));
  for (int i = 1; i < cap; ++i) {
    cf.push(stream(i));
    if (i >= 2 && cf.delta() < tol) return cf.value();
  }
  throw ConvergenceError("cf stream limit did not reach tolerance within cap");
}

double delta_bound_exponential(const CFParams& params,
                               std::span<const long> digits) {
  if (params.alpha == 1.0)
    throw DomainError("exponential delta bound requires alpha != 1");
  if (digits.size() < 2) throw UsageError("delta bound needs n >= 1");
  double rho = params.rho();
  long a0 = digits[0];
  long tail = 0;
  for (size_t i = 1; i < digits.size(); ++i) tail += digits[i];
  long an = digits.back();
  return std::pow(rho, double(tail)) / std::pow(rho, double(2 + 2 * a0 + an));
}

double delta_bound_regular(std::span<const long> digits) {
  // delta_n = 1/(q_n q_{n-1}) and q_n >= a_1 + ... + a_n; a_0 never enters
  // the q recursion, so it cannot appear in the bound.
  long s = 0;
  for (size_t i = 1; i < digits.size(); ++i) s += digits[i];
  if (s <= 0) throw DomainError("regular delta bound needs positive digits");
  return 1.0 / double(s);
}

double truncation_bound(const CFParams& params, std::span<const long> digits,
                        long a) {
  if (params.alpha == 1.0)
    throw DomainError("truncation bound requires alpha != 1");
  if (digits.size() < 2) throw UsageError("truncation bound needs n >= 1");
  if (!(a > 0 && a < digits.back()))
    throw UsageError("truncation bound needs 0 < a < a_n");
  double rho = params.rho();
  double K = 1.0 / (rho * rho * (1.0 - rho));
  long a0 = digits[0];
  long mid = 0;
  for (size_t i = 1; i + 1 < digits.size(); ++i) mid += digits[i];
  return K / std::pow(rho, double(2 * a0)) * std::pow(rho, double(mid + a));
}

}  // namespace pvconv
