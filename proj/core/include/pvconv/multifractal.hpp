#pragma once

#include "pvconv/walk.hpp"

namespace pvconv {

/// A measure together with the geometry of its net: per-letter contraction
/// log-ratios and the log-length of the base interval.
struct NetMeasure {
  MeasureWalk walk;
  std::vector<double> letter_loglen;
  double base_loglen = 0.0;
  double log_beta = 0.0;  // scale unit: level k lives at r = base * beta^{-k}

  static NetMeasure on_net(MeasureWalk walk, const AdaptedSystem& net);
};

/// Stopping-time partition at scale r: minimal words with |[w]| <= r.
/// Every emitted length lies in (r * l_min, r].
struct StoppingPartition {
  double log_r = 0.0;
  std::vector<double> logmass;
  std::vector<double> loglen;
};

StoppingPartition stopping_partition(const NetMeasure& nm, double log_r,
                                     std::size_t word_budget = std::size_t(1)
                                                               << 22);

struct TauPoint {
  double q = 0.0, tau = 0.0, err = 0.0;
};

/// tau(q) as the regression slope of log sum eta[w]^q against log r over the
/// deepest four of `levels` scales r_k = base * beta^{-k}; the error bar is
/// the maximum fit residual in slope units. Accumulation is log-sum-exp.
TauPoint tau_estimate(const NetMeasure& nm, double q, int levels,
                      std::size_t word_budget = std::size_t(1) << 22);

/// Shared-partition sweep over a q grid.
std::vector<TauPoint> tau_sweep(const NetMeasure& nm,
                                std::span<const double> qs, int levels,
                                std::size_t word_budget = std::size_t(1)
                                                          << 22);

struct FAlphaPoint {
  double alpha = 0.0, f = 0.0;
};

struct SpectrumEstimate {
  std::vector<TauPoint> tau;        // raw grid estimates
  std::vector<TauPoint> tau_hull;   // concave-hull vertices
  std::vector<FAlphaPoint> falpha;  // Legendre-transform vertices
  double alpha_min = 0.0, alpha_max = 0.0;  // hull end slopes
  double alpha_min_err = 0.0, alpha_max_err = 0.0;
  double f_peak = 0.0;
  // Exploratory kink scan over q in [-8, -2]: the grid point maximizing the
  // discrete curvature of tau. Finite-depth estimates smooth genuine kinks,
  // so this is diagnostic output, never a gate.
  double qc_estimate = 0.0;
  double qc_curvature = 0.0;
};

/// Upper concave hull of the tau grid (vertices kept in q order).
std::vector<TauPoint> concave_hull(std::vector<TauPoint> pts);

/// f(alpha) = inf_q (alpha q - tau(q)) of the hulled grid, as the exact
/// piecewise-linear conjugate (one vertex per hull segment slope).
std::vector<FAlphaPoint> legendre(const std::vector<TauPoint>& tau);

/// inf_alpha (q alpha - f(alpha)): evaluates the conjugate of an f-vertex
/// list at one point (used for the idempotence check and reconstruction).
double conjugate_eval(const std::vector<FAlphaPoint>& f, double q);

SpectrumEstimate spectrum(const NetMeasure& nm, int depth, double qmin,
                          double qmax, double qstep,
                          std::size_t word_budget = std::size_t(1) << 22);

struct LocalDimEstimate {
  std::vector<double> slopes;  // log eta[w_{:k}] / log |[w_{:k}]|
  double tail_mean = 0.0;      // mean over the last quarter
};

LocalDimEstimate local_dimension(const NetMeasure& nm,
                                 std::span<const int> word);

/// Closed-form multifractal-domain check for the scaled-net golden model:
/// alpha* = log(min(p,q))/log(1/beta) against the bound
/// log(pq)/(2 log(1/beta)); the verdict additionally requires the gap over
/// the measured alpha-bar estimate to exceed 10x its error bar.
struct DomainCheck {
  bool disconnected = false;
  bool closed_form_gap = false;  // exact: min(p,q)^2 < pq, i.e. p != q
  double alpha_star = 0.0;
  double bound = 0.0;
  double alpha_bar_est = 0.0;
  double alpha_bar_err = 0.0;
  bool gap_significant = false;
};

DomainCheck erdos_domain_check(const Rat& p, int depth = 14);

}  // namespace pvconv
