#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "pvconv/measures.hpp"

namespace pvconv {

/// Double-precision word evaluator over a net alphabet, with incremental
/// states for tree sweeps and rescaled accumulation for long words.
///
/// Two shapes cover every measure in use: plain L.P_w.R products, and
/// head-indexed products whose row vector after the first letter eta is a
/// table lookup (the scaled-net mu).
class MeasureWalk {
 public:
  struct State {
    std::vector<double> u;
    double logscale = 0.0;
    int depth = 0;
  };

  int alphabet() const { return int(P_.size()); }

  State root() const;
  State step(const State& s, int letter) const;

  double value(const State& s) const { return raw_value(s) * std::exp(s.logscale); }
  double log_value(const State& s) const;

  double eval(std::span<const int> w) const;
  double log_eval(std::span<const int> w) const;

  static MeasureWalk mu_star(const MultinacciModel<double>& model);
  static MeasureWalk erdos_mu(const ErdosModel<double>& model);
  static MeasureWalk erdos_mu_star(const ErdosModel<double>& model);
  /// Lebesgue measure restricted to the net's base interval (1x1 family).
  static MeasureWalk lebesgue(const AdaptedSystem& net);
  static MeasureWalk from_mmeasure(const MMeasure<double>& m);

  const std::vector<Mat<double>>& family() const { return P_; }
  const std::vector<double>& terminal() const { return R_; }

 private:
  std::vector<Mat<double>> P_;
  std::vector<double> L_, R_;
  std::vector<std::vector<double>> head_;  // nonempty => head-indexed
  double empty_value_ = 1.0;               // value of the empty word

  double raw_value(const State& s) const;
};

}  // namespace pvconv
