#pragma once

#include <cstdint>
#include <optional>

#include "pvconv/contfrac.hpp"
#include "pvconv/walk.hpp"

namespace pvconv {

/// n-step potential phi_n(xi) = log(eta[xi_0..xi_{n-1}] / eta[xi_1..xi_{n-1}])
/// (phi_1 = log eta[xi_0]); constant on n-cylinders, so a word suffices.
/// Throws DomainError when the shifted word carries no mass.
double n_step(const MeasureWalk& measure, std::span<const int> word);

/// Closed-form limit potential of mu_star for the multinacci model: log of
/// the Xi table on a leading letter outside {0, m}, and a vector-terminated
/// continued fraction across a leading {0, m} block run.
class LimitPotential {
 public:
  LimitPotential(int m, double p);

  int m() const { return m_; }
  double xi(int j) const;

  /// Phi on a prefix that determines the value (contains a letter outside
  /// {0, m}); throws DomainError when the prefix is all-{0, m}.
  double at(std::span<const int> prefix) const;

  /// Phi with the parse closed by the canonical letter 1.
  double at_with_canonical_tail(std::span<const int> prefix) const;

  /// Phi along the canonical continuation of a prefix: prefixes holding a
  /// letter outside {0, m} are already determined; all-{0, m} prefixes
  /// continue their final block forever. The letter-1 closure is degenerate
  /// as a gap probe for m = 2, where R is parallel to X_j and phi_n equals
  /// the closed value identically.
  double at_canonical(std::span<const int> prefix) const;

  /// Phi of a pure {0, m} stream given as alternating block lengths starting
  /// with `first` (0 or m); the tail either alternates forever (infinite
  /// stream) or pins the final block at infinity.
  double at_osc_stream(int first, std::span<const long> blocks,
                       bool final_block_infinite, double tol = 1e-13) const;

  /// Regular-continued-fraction route for the uniform (p = q) model, m = 2:
  /// Phi(0^{a0} 2^{a1} ... 1 xi) = log(f(a0,...,a_{2n})/4).
  double uniform_f(std::span<const int> prefix) const;

 private:
  int m_;
  double p_, q_, alpha_;

  double cf_tail_value(int kappa, std::span<const long> blocks,
                       std::optional<int> j, bool final_inf, double tol) const;
};

enum class DecayClass { Exponential, Harmonic, Divergent };

struct ConvergenceEntry {
  int n = 0;
  double sup_gap = 0.0;        // max over J^n of |phi_n - Phi(canonical)|
  double sandwich_slack = 0.0; // max of |log eta[w] - sum Phi| - log K_n
  std::size_t words = 0;
};

struct ConvergenceReport {
  std::vector<ConvergenceEntry> entries;  // n = 1..n_hi
  int fit_lo = 0, fit_hi = 0;
  DecayClass cls = DecayClass::Divergent;
  double exp_rate = 0.0, exp_r2 = 0.0;      // log g_n ~ intercept + rate * n
  double harmonic_K = 0.0;                   // mean of g_n * n on the window
  double harmonic_spread = 0.0;              // (max-min)/min of g_n * n
  std::vector<double> log_Kn;                // log K_n = sum_{k<=n} g_k
  double tail_sensitivity = 0.0;             // sampled |Phi(w tail) - Phi(w 1)|
};

/// Exhaustive sup-gap sweep of the multinacci model with decay
/// classification over [fit_lo, fit_hi] and the weak-Gibbs sandwich checked
/// at every n. Budget guard: |J|^n words per level.
ConvergenceReport convergence_report(int m, double p, int fit_lo, int fit_hi,
                                     std::uint64_t seed = 1,
                                     std::size_t word_budget = std::size_t(1)
                                                               << 26);

/// Extremal concatenation ratios eta[ww']/(eta[w] eta[w']) over word pairs.
/// Pairs are enumerated exhaustively by increasing |w| + |w'| until the pair
/// budget runs out; coverage is reported.
struct QuasiBernoulliReport {
  double min_ratio = 0.0, max_ratio = 0.0;
  std::vector<int> min_w, min_wp, max_w, max_wp;
  int pair_len_covered = 0;  // all pairs with |w|+|w'| <= this were scanned
  std::size_t pairs = 0;
};

QuasiBernoulliReport quasi_bernoulli(const MeasureWalk& measure, int max_len,
                                     std::size_t pair_budget = std::size_t(1)
                                                               << 24);

/// Weak-Gibbs failure probe on the pair (m^n, j*^n), j* = m+1 when it exists
/// (m >= 3), else 1: r_n = |log QB-ratio| / n.
struct ProbeResult {
  int m = 0;
  double p = 0.0;
  int partner_letter = 0;
  std::vector<int> n;
  std::vector<double> r;
  double floor_estimate = 0.0;  // min r_n over the range
};

ProbeResult counterexample_probe(int m, double p, int n_lo, int n_hi);

struct LinearFit {
  double slope = 0.0, intercept = 0.0, r2 = 0.0;
};
LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys);

}  // namespace pvconv
