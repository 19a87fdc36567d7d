#include "pvconv/walk.hpp"

#include <limits>

namespace pvconv {

MeasureWalk::State MeasureWalk::root() const {
  State s;
  s.u = L_;
  return s;
}

MeasureWalk::State MeasureWalk::step(const State& s, int letter) const {
  if (letter < 0 || letter >= alphabet())
    throw UsageError("word letter outside the net alphabet");
  State t;
  t.depth = s.depth + 1;
  t.logscale = s.logscale;
  if (!head_.empty() && s.depth == 0) {
    t.u = head_[letter];
  } else {
    t.u = row_times(s.u, P_[letter]);
  }
  double mx = 0.0;
  for (double e : t.u) mx = std::max(mx, std::abs(e));
  if (mx > 0.0 && mx < 1e-120) {
    for (auto& e : t.u) e /= mx;
    t.logscale += std::log(mx);
  }
  return t;
}

double MeasureWalk::raw_value(const State& s) const {
  if (!head_.empty() && s.depth == 0) return empty_value_;
  return dot(s.u, R_);
}

double MeasureWalk::log_value(const State& s) const {
  double raw = raw_value(s);
  if (raw <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(raw) + s.logscale;
}

double MeasureWalk::eval(std::span<const int> w) const {
  State s = root();
  for (int letter : w) s = step(s, letter);
  return value(s);
}

double MeasureWalk::log_eval(std::span<const int> w) const {
  State s = root();
  for (int letter : w) s = step(s, letter);
  return log_value(s);
}

MeasureWalk MeasureWalk::mu_star(const MultinacciModel<double>& model) {
  MeasureWalk w;
  w.P_ = model.P;
  w.L_ = {1.0, 1.0};
  w.R_ = model.R;
  return w;
}

MeasureWalk MeasureWalk::erdos_mu(const ErdosModel<double>& model) {
  MeasureWalk w;
  w.P_.assign(model.P.begin(), model.P.end());
  w.head_.assign(model.V.begin(), model.V.end());
  w.L_ = {0.0, 0.0};  // unused before the first letter
  w.R_ = model.tail;
  w.empty_value_ = model.total_mass();
  return w;
}

MeasureWalk MeasureWalk::erdos_mu_star(const ErdosModel<double>& model) {
  MeasureWalk w;
  w.P_.assign(model.P.begin(), model.P.end());
  w.L_ = {1.0, 1.0};
  w.R_ = {model.p, model.q};
  return w;
}

MeasureWalk MeasureWalk::lebesgue(const AdaptedSystem& net) {
  MeasureWalk w;
  double beta = net.field->beta_approx();
  double base_len = net.base_len.approx();
  for (int j = 0; j < net.alphabet(); ++j) {
    Mat<double> m(1, 1);
    m(0, 0) = std::pow(beta, -double(net.maps[j].pow));
    w.P_.push_back(m);
  }
  w.L_ = {base_len};
  w.R_ = {1.0};
  return w;
}

MeasureWalk MeasureWalk::from_mmeasure(const MMeasure<double>& m) {
  MeasureWalk w;
  w.P_ = m.family.mats;
  w.L_ = m.L;
  w.R_ = m.R;
  return w;
}

}  // namespace pvconv
