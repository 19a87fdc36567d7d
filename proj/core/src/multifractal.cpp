#include "pvconv/multifractal.hpp"

#include "pvconv/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pvconv {

NetMeasure NetMeasure::on_net(MeasureWalk walk, const AdaptedSystem& net) {
  NetMeasure nm;
  nm.walk = std::move(walk);
  if (nm.walk.alphabet() != net.alphabet())
    throw UsageError("measure and net alphabets disagree");
  for (int j = 0; j < net.alphabet(); ++j)
    nm.letter_loglen.push_back(net.letter_ratio_log(j));
  nm.base_loglen = std::log(net.base_len.approx());
  nm.log_beta = std::log(net.field->beta_approx());
  return nm;
}

StoppingPartition stopping_partition(const NetMeasure& nm, double log_r,
                                     std::size_t word_budget) {
  StoppingPartition part;
  part.log_r = log_r;
  struct Frame {
    MeasureWalk::State state;
    double loglen;
    int next = 0;
  };
  std::vector<Frame> stack;
  stack.push_back({nm.walk.root(), nm.base_loglen, 0});
  if (nm.base_loglen <= log_r)
    throw UsageError("stopping scale is coarser than the base interval");
  std::size_t emitted = 0;
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next >= nm.walk.alphabet()) {
      stack.pop_back();
      continue;
    }
    int j = top.next++;
    double len = top.loglen + nm.letter_loglen[j];
    MeasureWalk::State child = nm.walk.step(top.state, j);
    if (len <= log_r) {
      if (++emitted > word_budget)
        throw BudgetExceeded("stopping partition word budget exceeded");
      part.logmass.push_back(nm.walk.log_value(child));
      part.loglen.push_back(len);
    } else {
      stack.push_back({std::move(child), len, 0});
    }
  }
  return part;
}

namespace {

double log_sum_exp_q(const std::vector<double>& logmass, double q) {
  // log sum exp(q * logmass), stable for |q| up to the grid extremes.
  double mx = -std::numeric_limits<double>::infinity();
  for (double lm : logmass) mx = std::max(mx, q * lm);
  if (std::isinf(mx)) return mx;
  double s = 0.0;
  for (double lm : logmass) s += std::exp(q * lm - mx);
  return mx + std::log(s);
}

struct TauFitData {
  std::vector<double> logr, logS;
};

TauPoint fit_tau(double q, const TauFitData& d) {
  LinearFit fit = linear_fit(d.logr, d.logS);
  TauPoint out;
  out.q = q;
  out.tau = fit.slope;
  double resid = 0.0;
  for (size_t i = 0; i < d.logr.size(); ++i)
    resid = std::max(resid, std::abs(d.logS[i] -
                                     (fit.intercept + fit.slope * d.logr[i])));
  double halfspan =
      (d.logr.front() - d.logr.back()) != 0.0
          ? std::abs(d.logr.front() - d.logr.back()) / 2.0
          : 1.0;
  out.err = resid / halfspan;
  return out;
}

}  // namespace

std::vector<TauPoint> tau_sweep(const NetMeasure& nm,
                                std::span<const double> qs, int levels,
                                std::size_t word_budget) {
  if (levels < 7) throw UsageError("tau estimate needs depth >= 7");
  if (!(nm.log_beta > 0)) throw UsageError("net measure missing scale unit");
  // Regress over the deepest four scales of the beta^{-2}-spaced ladder;
  // unit spacing couples the fit to the 2/3-power staircase of the letter
  // lengths and loses concavity.
  std::vector<StoppingPartition> parts;
  for (int k = levels - 6; k <= levels; k += 2)
    parts.push_back(
        stopping_partition(nm, nm.base_loglen - nm.log_beta * k, word_budget));

  std::vector<TauPoint> out;
  for (double q : qs) {
    TauFitData d;
    for (const auto& part : parts) {
      d.logr.push_back(part.log_r);
      d.logS.push_back(log_sum_exp_q(part.logmass, q));
    }
    out.push_back(fit_tau(q, d));
  }
  return out;
}

TauPoint tau_estimate(const NetMeasure& nm, double q, int levels,
                      std::size_t word_budget) {
  std::array<double, 1> qs{q};
  return tau_sweep(nm, qs, levels, word_budget)[0];
}

std::vector<TauPoint> concave_hull(std::vector<TauPoint> pts) {
  if (pts.size() < 3) return pts;
  std::sort(pts.begin(), pts.end(),
            [](const TauPoint& a, const TauPoint& b) { return a.q < b.q; });
  std::vector<TauPoint> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const TauPoint& a = hull[hull.size() - 2];
      const TauPoint& b = hull[hull.size() - 1];
      // Keep b only when it lies strictly above chord a--pt.
      double cross = (b.q - a.q) * (pt.tau - a.tau) -
                     (pt.q - a.q) * (b.tau - a.tau);
      if (cross >= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(pt);
  }
  return hull;
}

std::vector<FAlphaPoint> legendre(const std::vector<TauPoint>& tau) {
  auto hull = concave_hull(std::vector<TauPoint>(tau));
  if (hull.size() < 3) throw UsageError("legendre needs >= 3 grid points");
  std::vector<FAlphaPoint> out;
  // One vertex per hull segment: alpha = segment slope, f = alpha q_i - tau_i.
  for (size_t i = 0; i + 1 < hull.size(); ++i) {
    double slope =
        (hull[i + 1].tau - hull[i].tau) / (hull[i + 1].q - hull[i].q);
    out.push_back({slope, slope * hull[i].q - hull[i].tau});
  }
  std::sort(out.begin(), out.end(),
            [](const FAlphaPoint& a, const FAlphaPoint& b) {
              return a.alpha < b.alpha;
            });
  return out;
}

double conjugate_eval(const std::vector<FAlphaPoint>& f, double q) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& v : f) best = std::min(best, q * v.alpha - v.f);
  return best;
}

namespace {

// End slopes of the tau grid: the hull slope between the two outermost grid
// points. Staircase wobble in tau at large |q| cancels in the pairing.
std::pair<double, double> end_slopes(const std::vector<TauPoint>& tau) {
  size_t k = tau.size();
  double at_qmin = (tau[1].tau - tau[0].tau) / (tau[1].q - tau[0].q);
  double at_qmax =
      (tau[k - 1].tau - tau[k - 2].tau) / (tau[k - 1].q - tau[k - 2].q);
  return {at_qmin, at_qmax};
}

}  // namespace

SpectrumEstimate spectrum(const NetMeasure& nm, int depth, double qmin,
                          double qmax, double qstep, std::size_t word_budget) {
  if (!(qstep > 0) || !(qmax > qmin)) throw UsageError("bad q grid");
  std::vector<double> qs;
  for (double q = qmin; q <= qmax + 1e-12; q += qstep) qs.push_back(q);
  if (qs.size() < 3) throw UsageError("q grid needs at least 3 points");

  SpectrumEstimate est;
  est.tau = tau_sweep(nm, qs, depth, word_budget);
  est.tau_hull = concave_hull(est.tau);
  est.falpha = legendre(est.tau);

  auto [bar_alpha, low_alpha] = end_slopes(est.tau);
  est.alpha_max = bar_alpha;  // slope at the qmin end
  est.alpha_min = low_alpha;  // slope at the qmax end

  // Stability bars: rerun the end points on a fit window two levels
  // shallower and take the drift.
  if (depth >= 6) {
    std::array<double, 2> lo_qs{qs[0], qs[1]};
    std::array<double, 2> hi_qs{qs[qs.size() - 2], qs.back()};
    auto lo_shallow = tau_sweep(nm, lo_qs, depth - 2, word_budget);
    auto hi_shallow = tau_sweep(nm, hi_qs, depth - 2, word_budget);
    double bar2 =
        (lo_shallow[1].tau - lo_shallow[0].tau) / (lo_qs[1] - lo_qs[0]);
    double low2 =
        (hi_shallow[1].tau - hi_shallow[0].tau) / (hi_qs[1] - hi_qs[0]);
    est.alpha_max_err = std::abs(bar_alpha - bar2);
    est.alpha_min_err = std::abs(low_alpha - low2);
  }
  est.f_peak = 0.0;
  for (const auto& v : est.falpha) est.f_peak = std::max(est.f_peak, v.f);

  for (size_t i = 1; i + 1 < est.tau.size(); ++i) {
    double q = est.tau[i].q;
    if (q < -8.0 || q > -2.0) continue;
    double dd = std::abs(est.tau[i + 1].tau - 2.0 * est.tau[i].tau +
                         est.tau[i - 1].tau);
    if (dd > est.qc_curvature) {
      est.qc_curvature = dd;
      est.qc_estimate = q;
    }
  }
  return est;
}

LocalDimEstimate local_dimension(const NetMeasure& nm,
                                 std::span<const int> word) {
  if (word.empty()) throw UsageError("local dimension needs a nonempty word");
  LocalDimEstimate out;
  MeasureWalk::State s = nm.walk.root();
  double loglen = nm.base_loglen;
  for (int letter : word) {
    s = nm.walk.step(s, letter);
    loglen += nm.letter_loglen[letter];
    double lm = nm.walk.log_value(s);
    if (std::isinf(lm))
      throw DomainError("local dimension: the nest carries no mass");
    out.slopes.push_back(lm / loglen);
  }
  size_t tail = std::max<size_t>(1, out.slopes.size() / 4);
  double s_sum = 0.0;
  for (size_t i = out.slopes.size() - tail; i < out.slopes.size(); ++i)
    s_sum += out.slopes[i];
  out.tail_mean = s_sum / double(tail);
  return out;
}

DomainCheck erdos_domain_check(const Rat& p, int depth) {
  if (!(p > 0 && p < 1))
    throw UsageError("domain check needs p strictly inside (0, 1)");
  Rat q = Rat(1) - p;
  DomainCheck out;
  // Exact side: alpha* > bound iff min(p,q)^2 < pq iff p != q.
  out.closed_form_gap = (p != q);

  double pd = to_double(p), qd = to_double(q);
  double beta = golden_field()->beta_approx();
  double log_inv_beta = -std::log(beta);
  out.alpha_star = std::log(std::min(pd, qd)) / log_inv_beta;
  out.bound = std::log(pd * qd) / (2.0 * log_inv_beta);

  auto model = ErdosModel<double>::make(pd);
  auto net = scaled_erdos_net();
  auto nm = NetMeasure::on_net(MeasureWalk::erdos_mu_star(model), net);
  std::array<double, 2> qs{-20.0, -19.75};
  double dq = qs[1] - qs[0];
  auto deep = tau_sweep(nm, qs, depth);
  auto shallow = tau_sweep(nm, qs, depth - 2);
  out.alpha_bar_est = (deep[1].tau - deep[0].tau) / dq;
  double est2 = (shallow[1].tau - shallow[0].tau) / dq;
  out.alpha_bar_err = std::abs(out.alpha_bar_est - est2);
  out.gap_significant =
      out.alpha_star - out.alpha_bar_est >= 10.0 * out.alpha_bar_err;
  out.disconnected = out.closed_form_gap && out.gap_significant;
  return out;
}

}  // namespace pvconv
