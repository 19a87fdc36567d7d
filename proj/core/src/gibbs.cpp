#include "pvconv/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace pvconv {

double n_step(const MeasureWalk& measure, std::span<const int> word) {
  if (word.empty()) throw UsageError("n_step needs a nonempty word");
  if (word.size() == 1) {
    double v = measure.log_eval(word);
    return v;  // log eta[xi_0]
  }
  double den = measure.log_eval(word.subspan(1));
  if (std::isinf(den))
    throw DomainError("n_step: shifted word outside the support pattern");
  double num = measure.log_eval(word);
  return num - den;
}

// ---------------------------------------------------------------------------
// LimitPotential
// ---------------------------------------------------------------------------

LimitPotential::LimitPotential(int m, double p) : m_(m), p_(p), q_(1.0 - p) {
  if (m < 2) throw UsageError("limit potential needs m >= 2");
  if (!(p > 0.0 && p < 1.0)) throw UsageError("p must lie in (0, 1)");
  alpha_ = std::pow(q_ / p_, m - 1);
}

double LimitPotential::xi(int j) const {
  if (j == 0) return std::pow(p_, m_) * alpha_ * alpha_;
  if (j > 0 && j < m_)
    return std::pow(p_, m_) * std::pow(q_, j) * (1.0 + alpha_);
  if (j == m_) return std::pow(q_, m_) / (alpha_ * alpha_);
  if (j > m_ && j <= m_ * (m_ - 1)) {
    int x = (m_ - 1) - (j - 1) / (m_ - 1);
    int y = (j - 1) % (m_ - 1);
    return std::pow(p_, x + 1) * std::pow(q_, y + 1);
  }
  throw UsageError("letter outside J");
}

double LimitPotential::cf_tail_value(int kappa, std::span<const long> blocks,
                                     std::optional<int> j, bool final_inf,
                                     double tol) const {
  CFParams par{alpha_, 1 - kappa};
  ContinuedFraction cf(par);
  cf.push(1);
  for (long b : blocks) cf.push(b);
  double value;
  if (final_inf) {
    value = cf.value_inf_tail(tol);
  } else if (j.has_value()) {
    // Delta^{kappa_hat + n} X_j with X_j = (1, alpha) inside (0, m) and
    // (1, 0) above m.
    double x = 1.0;
    double y = (*j > 0 && *j < m_) ? alpha_ : 0.0;
    if (((1 - kappa) + int(blocks.size())) % 2 != 0) std::swap(x, y);
    value = cf.value_vector(x, y);
  } else {
    value = cf.value();
  }
  double head = xi(kappa == 0 ? 0 : m_);
  return std::log(head) + std::log(value);
}

double LimitPotential::at(std::span<const int> prefix) const {
  if (prefix.empty())
    throw DomainError("limit potential needs a nonempty prefix");
  int first = prefix[0];
  if (first != 0 && first != m_) return std::log(xi(first));

  int kappa = (first == m_) ? 1 : 0;
  std::vector<long> blocks;
  int current = first;
  long run = 0;
  size_t pos = 0;
  for (; pos < prefix.size(); ++pos) {
    int letter = prefix[pos];
    if (letter == current) {
      ++run;
    } else if (letter == m_ - current) {  // the other oscillation letter
      blocks.push_back(run);
      current = letter;
      run = 1;
    } else {
      break;
    }
  }
  blocks.push_back(run);
  if (pos == prefix.size())
    throw DomainError(
        "prefix stays inside {0, m}: the value depends on the tail");
  int j = prefix[pos];
  if (j < 0 || j > m_ * (m_ - 1)) throw UsageError("letter outside J");
  return cf_tail_value(kappa, blocks, j, false, 1e-13);
}

double LimitPotential::at_with_canonical_tail(
    std::span<const int> prefix) const {
  std::vector<int> closed(prefix.begin(), prefix.end());
  closed.push_back(1);
  return at(closed);
}

double LimitPotential::at_canonical(std::span<const int> prefix) const {
  if (prefix.empty())
    throw DomainError("limit potential needs a nonempty prefix");
  for (int letter : prefix)
    if (letter != 0 && letter != m_) return at(prefix);
  // All-{0,m}: continue the final block forever, [kappa_hat | 1; a_1, ...,
  // a_{k-1}, infinity] (the unfinished final block is absorbed).
  int kappa = (prefix[0] == m_) ? 1 : 0;
  std::vector<long> blocks;
  int current = prefix[0];
  long run = 0;
  for (int letter : prefix) {
    if (letter == current) {
      ++run;
    } else {
      blocks.push_back(run);
      current = letter;
      run = 1;
    }
  }
  (void)run;  // final block merges into the infinite tail
  return cf_tail_value(kappa, blocks, std::nullopt, true, 1e-13);
}

double LimitPotential::at_osc_stream(int first, std::span<const long> blocks,
                                     bool final_block_infinite,
                                     double tol) const {
  if (first != 0 && first != m_)
    throw UsageError("oscillation stream must start with 0 or m");
  int kappa = (first == m_) ? 1 : 0;
  if (final_block_infinite)
    return cf_tail_value(kappa, blocks, std::nullopt, true, tol);
  return cf_tail_value(kappa, blocks, std::nullopt, false, tol);
}

double LimitPotential::uniform_f(std::span<const int> prefix) const {
  if (m_ != 2) throw DomainError("the f-formula route is the m = 2 model");
  if (std::abs(p_ - q_) > 1e-15)
    throw DomainError("the f-formula route needs p = q");
  std::vector<long> digits;
  int current = -1;
  for (int letter : prefix) {
    if (letter == 1) break;
    if (letter != 0 && letter != 2)
      throw UsageError("letter outside {0,1,2}");
    if (letter == current) {
      ++digits.back();
    } else {
      digits.push_back(1);
      current = letter;
    }
  }
  if (digits.empty()) return std::log(1.0 / 4.0);  // f(0) = 1
  if (digits.size() % 2 == 0) digits.push_back(0);
  double t = double(digits.back()) + 1.0;
  for (int i = int(digits.size()) - 2; i >= 0; --i)
    t = double(digits[i]) + 1.0 / t;
  double f = 1.0 + 1.0 / t;
  return std::log(f / 4.0);
}

// ---------------------------------------------------------------------------
// convergence report
// ---------------------------------------------------------------------------

LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw UsageError("linear_fit needs >= 2 points");
  double n = double(xs.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = (syy > 0) ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

namespace {

struct Row2 {
  double a, b;
};

inline Row2 times(const Row2& u, const Mat<double>& P) {
  return {u.a * P(0, 0) + u.b * P(1, 0), u.a * P(0, 1) + u.b * P(1, 1)};
}

// Phi of the canonical stream through word[k..n): determined by the first
// letter outside {0,m} when one exists; otherwise the tail rule of the leaf
// applies (oscillation continued for all-{0,m} leaves, letter-1 closure for
// suffixes of mixed leaves).
double phi_suffix(const LimitPotential& pot, const std::vector<int>& word,
                  size_t k, const std::vector<int>& next_special, int m,
                  bool leaf_is_osc) {
  size_t n = word.size();
  if (k < n && word[k] != 0 && word[k] != m) return std::log(pot.xi(word[k]));
  std::span<const int> suffix(word.data() + k, n - k);
  size_t t = (k < n) ? size_t(next_special[k]) : n;
  if (t >= n) {
    return leaf_is_osc ? pot.at_canonical(suffix)
                       : pot.at_with_canonical_tail(suffix);
  }
  return pot.at(suffix.first(t - k + 1));
}

}  // namespace

ConvergenceReport convergence_report(int m, double p, int fit_lo, int fit_hi,
                                     std::uint64_t seed,
                                     std::size_t word_budget) {
  if (fit_lo < 1 || fit_hi < fit_lo)
    throw UsageError("convergence_report: bad fit window");
  auto model = MultinacciModel<double>::make(m, p);
  const int J = model.alphabet();
  double per_level = std::pow(double(J), double(fit_hi));
  if (per_level > double(word_budget))
    throw BudgetExceeded("convergence_report: |J|^n exceeds the word budget");

  LimitPotential pot(m, p);
  const std::vector<Mat<double>>& P = model.P;
  Row2 L{1.0, 1.0};
  Row2 R{model.R[0], model.R[1]};

  ConvergenceReport rep;
  rep.fit_lo = fit_lo;
  rep.fit_hi = fit_hi;

  double cum_g = 0.0;
  std::vector<int> word;
  std::vector<int> next_special;
  for (int n = 1; n <= fit_hi; ++n) {
    word.assign(n, 0);
    next_special.assign(n, 0);
    std::vector<Row2> ustack(n + 1), vstack(n + 1);
    ustack[0] = L;
    vstack[0] = L;  // vstack[k] tracks word[1..k)

    double g = 0.0;
    double max_lhs = 0.0;
    std::size_t count = 0;

    // Odometer sweep in lexicographic order; stacks refresh from the first
    // changed position.
    int refresh_from = 0;
    for (;;) {
      for (int k = refresh_from; k < n; ++k) {
        ustack[k + 1] = times(ustack[k], P[word[k]]);
        vstack[k + 1] = (k == 0) ? L : times(vstack[k], P[word[k]]);
      }
      // next_special[k]: first index >= k holding a letter outside {0, m}.
      int nxt = n;
      for (int k = n - 1; k >= 0; --k) {
        if (word[k] != 0 && word[k] != m) nxt = k;
        next_special[k] = nxt;
      }

      double val_n = ustack[n].a * R.a + ustack[n].b * R.b;
      double val_shift = vstack[n].a * R.a + vstack[n].b * R.b;
      double phi_n = std::log(val_n) - ((n == 1) ? 0.0 : std::log(val_shift));
      bool leaf_is_osc = next_special[0] >= n;
      double Phi = phi_suffix(pot, word, 0, next_special, m, leaf_is_osc);
      g = std::max(g, std::abs(phi_n - Phi));
      if (leaf_is_osc) {
        // The letter-1 closure is a second admissible tail; covering it keeps
        // the sandwich bound valid for suffixes of mixed leaves.
        double Phi1 = pot.at_with_canonical_tail(word);
        g = std::max(g, std::abs(phi_n - Phi1));
      }

      double sum_phi = Phi;
      for (size_t k = 1; k < size_t(n); ++k)
        sum_phi += phi_suffix(pot, word, k, next_special, m, leaf_is_osc);
      max_lhs = std::max(max_lhs, std::abs(std::log(val_n) - sum_phi));
      ++count;

      int pos = n - 1;
      while (pos >= 0 && word[pos] == J - 1) word[pos--] = 0;
      if (pos < 0) break;
      ++word[pos];
      refresh_from = pos;
    }

    cum_g += g;
    ConvergenceEntry e;
    e.n = n;
    e.sup_gap = g;
    e.words = count;
    e.sandwich_slack = max_lhs - cum_g;
    rep.entries.push_back(e);
    rep.log_Kn.push_back(cum_g);
  }

  // Decay classification on the fit window. The harmonic test runs first:
  // pure K/n data also regresses well against n on short windows.
  std::vector<double> ns, logg, gn;
  for (int n = fit_lo; n <= fit_hi; ++n) {
    double g = rep.entries[n - 1].sup_gap;
    ns.push_back(double(n));
    logg.push_back(std::log(std::max(g, 1e-300)));
    gn.push_back(g * n);
  }
  if (ns.size() >= 2) {
    double gn_min = *std::min_element(gn.begin(), gn.end());
    double gn_max = *std::max_element(gn.begin(), gn.end());
    rep.harmonic_spread =
        (gn_min > 0) ? (gn_max - gn_min) / gn_min
                     : std::numeric_limits<double>::infinity();
    rep.harmonic_K = 0.0;
    for (double h : gn) rep.harmonic_K += h;
    rep.harmonic_K /= double(gn.size());

    LinearFit fit = linear_fit(ns, logg);
    rep.exp_rate = fit.slope;
    rep.exp_r2 = fit.r2;
    if (rep.harmonic_spread <= 0.25) {
      rep.cls = DecayClass::Harmonic;
    } else if (fit.r2 >= 0.98 && fit.slope < -0.01) {
      rep.cls = DecayClass::Exponential;
    } else {
      rep.cls = DecayClass::Divergent;
    }
  } else {
    // A single-point window carries the sweep but supports no fit.
    rep.harmonic_spread = std::numeric_limits<double>::infinity();
  }

  // Canonical-tail sensitivity: sampled |Phi(w random-tail) - Phi(w 1...)|
  // over all-{0,m} prefixes, where the tail actually matters.
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> osc(0, 1), any(0, J - 1);
  double sens = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> w(fit_hi);
    for (auto& letter : w) letter = osc(rng) ? m : 0;
    std::vector<int> tailed = w;
    for (int t = 0; t < 2 * fit_hi; ++t) tailed.push_back(any(rng));
    tailed.push_back(1);
    double a = pot.at(tailed);
    double b = pot.at_canonical(w);
    sens = std::max(sens, std::abs(a - b));
  }
  rep.tail_sensitivity = sens;
  return rep;
}

// ---------------------------------------------------------------------------
// quasi-Bernoulli scan
// ---------------------------------------------------------------------------

namespace {

std::vector<int> decode_word(int depth, std::size_t idx, int J) {
  std::vector<int> w(depth);
  for (int pos = depth - 1; pos >= 0; --pos) {
    w[pos] = int(idx % J);
    idx /= J;
  }
  return w;
}

}  // namespace

QuasiBernoulliReport quasi_bernoulli(const MeasureWalk& measure, int max_len,
                                     std::size_t pair_budget) {
  if (max_len < 1) throw UsageError("quasi_bernoulli needs max_len >= 1");
  const int J = measure.alphabet();
  const auto& P = measure.family();
  const auto& R = measure.terminal();

  // Left tables: walk states and values, lexicographic per depth.
  struct Left {
    std::vector<double> u;
    double logscale;
    double value;
  };
  std::vector<std::vector<Left>> left(max_len + 1);
  {
    MeasureWalk::State root = measure.root();
    left[0].push_back({root.u, root.logscale, measure.value(root)});
    std::vector<MeasureWalk::State> prev{root};
    for (int depth = 1; depth <= max_len; ++depth) {
      // Appending the letter keeps base-J index order: idx(wj) = idx(w)*J + j.
      std::vector<MeasureWalk::State> cur;
      cur.reserve(prev.size() * J);
      for (const auto& s : prev)
        for (int j = 0; j < J; ++j) cur.push_back(measure.step(s, j));
      for (auto& s : cur)
        left[depth].push_back({s.u, s.logscale, measure.value(s)});
      prev = std::move(cur);
    }
  }

  // Right tables: z_w = P_w R, built by prepending letters.
  std::vector<std::vector<std::vector<double>>> right(max_len + 1);
  right[0].push_back(R);
  for (int depth = 1; depth <= max_len; ++depth) {
    right[depth].reserve(right[depth - 1].size() * J);
    for (int j = 0; j < J; ++j)
      for (const auto& z : right[depth - 1])
        right[depth].push_back(times_col(P[j], z));
  }

  QuasiBernoulliReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  rep.max_ratio = 0.0;
  std::size_t min_a = 0, min_ai = 0, min_b = 0, min_bi = 0;
  std::size_t max_a = 0, max_ai = 0, max_b = 0, max_bi = 0;

  bool budget_hit = false;
  for (int concat = 2; concat <= 2 * max_len && !budget_hit; ++concat) {
    for (int a = std::max(1, concat - max_len);
         a <= std::min(max_len, concat - 1) && !budget_hit; ++a) {
      int b = concat - a;
      std::size_t need = left[a].size() * right[b].size();
      if (rep.pairs + need > pair_budget) {
        budget_hit = true;
        break;
      }
      for (std::size_t i = 0; i < left[a].size(); ++i) {
        const Left& lw = left[a][i];
        for (std::size_t k = 0; k < right[b].size(); ++k) {
          double joint =
              dot(lw.u, right[b][k]) * std::exp(lw.logscale);
          double ratio = joint / (lw.value * left[b][k].value);
          if (ratio < rep.min_ratio) {
            rep.min_ratio = ratio;
            min_a = a;
            min_ai = i;
            min_b = b;
            min_bi = k;
          }
          if (ratio > rep.max_ratio) {
            rep.max_ratio = ratio;
            max_a = a;
            max_ai = i;
            max_b = b;
            max_bi = k;
          }
        }
      }
      rep.pairs += need;
    }
    if (!budget_hit) rep.pair_len_covered = concat;
  }

  rep.min_w = decode_word(int(min_a), min_ai, J);
  rep.min_wp = decode_word(int(min_b), min_bi, J);
  rep.max_w = decode_word(int(max_a), max_ai, J);
  rep.max_wp = decode_word(int(max_b), max_bi, J);
  return rep;
}

ProbeResult counterexample_probe(int m, double p, int n_lo, int n_hi) {
  if (n_lo < 1 || n_hi < n_lo) throw UsageError("probe: bad n range");
  auto model = MultinacciModel<double>::make(m, p);
  MeasureWalk walk = MeasureWalk::mu_star(model);
  ProbeResult out;
  out.m = m;
  out.p = p;
  out.partner_letter = (m >= 3) ? m + 1 : 1;

  for (int n = n_lo; n <= n_hi; ++n) {
    std::vector<int> w1(n, m), w2(n, out.partner_letter);
    std::vector<int> joint = w1;
    joint.insert(joint.end(), w2.begin(), w2.end());
    double lr = walk.log_eval(joint) - walk.log_eval(w1) - walk.log_eval(w2);
    out.n.push_back(n);
    out.r.push_back(std::abs(lr) / double(n));
  }
  out.floor_estimate = *std::min_element(out.r.begin(), out.r.end());
  return out;
}

}  // namespace pvconv
