#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pvconv/gibbs.hpp"

using namespace pvconv;

TEST_CASE("n-step potential basics") {
  auto mm = MultinacciModel<double>::make(2, 0.5);
  auto walk = MeasureWalk::mu_star(mm);
  std::vector<int> one{1};
  CHECK(n_step(walk, one) == doctest::Approx(std::log(0.25)).epsilon(1e-12));
  CHECK_THROWS_AS(n_step(walk, std::vector<int>{}), UsageError);
}

TEST_CASE("telescoping reconstructs values exactly in rational mode") {
  auto mm = MultinacciModel<Rat>::make(2, Rat(2, 5));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    std::vector<int> w(1 + rng() % 8);
    for (auto& c : w) c = int(rng() % 3);
    // Product over k of mu*(w[k:]) / mu*(w[k+1:]) telescopes to mu*(w).
    Rat prod(1);
    for (size_t k = 0; k < w.size(); ++k) {
      std::span<const int> suffix(w.data() + k, w.size() - k);
      std::span<const int> shifted(w.data() + k + 1, w.size() - k - 1);
      prod *= mm.mu_star(suffix) / mm.mu_star(shifted);
    }
    CHECK(prod == mm.mu_star(w));
  }
}

TEST_CASE("limit potential closed values") {
  LimitPotential pot(2, 0.4);
  double alpha = 0.6 / 0.4;
  std::vector<int> one{1};
  CHECK(pot.at(one) ==
        doctest::Approx(std::log(0.16 * 0.6 * (1 + alpha))).epsilon(1e-13));
  CHECK(pot.xi(0) == doctest::Approx(0.16 * alpha * alpha).epsilon(1e-13));
  CHECK(pot.xi(2) == doctest::Approx(0.36 / (alpha * alpha)).epsilon(1e-13));
  std::vector<int> osc{0, 0, 2};
  CHECK_THROWS_AS(pot.at(osc), DomainError);
  CHECK_NOTHROW(pot.at_canonical(osc));
}

TEST_CASE("n-step values converge to the potential") {
  // Words through a letter outside {0, m} pin the value exactly (m = 2).
  auto mm = MultinacciModel<double>::make(2, 0.3);
  auto walk = MeasureWalk::mu_star(mm);
  LimitPotential pot(2, 0.3);
  std::vector<int> prefix{0, 0, 2, 1};
  double phi = pot.at(prefix);
  for (int n : {8, 12, 16}) {
    std::vector<int> w = prefix;
    while (int(w.size()) < n) w.push_back(0);
    CHECK(n_step(walk, w) == doctest::Approx(phi).epsilon(1e-11));
  }
  // All-oscillation streams converge at the variation rate.
  auto mm3 = MultinacciModel<double>::make(3, 0.6);
  auto walk3 = MeasureWalk::mu_star(mm3);
  LimitPotential pot3(3, 0.6);
  std::vector<long> blocks{};  // 0^infinity
  double target = pot3.at_osc_stream(0, blocks, true);
  double err_prev = 1e9;
  for (int n : {6, 10, 14}) {
    std::vector<int> w(n, 0);
    double err = std::abs(n_step(walk3, w) - target);
    CHECK(err < err_prev);
    err_prev = err;
  }
  CHECK(err_prev < 1e-3);
}

TEST_CASE("uniform f-formula agrees with the general route") {
  LimitPotential pot(2, 0.5);
  std::vector<int> just1{1};
  CHECK(pot.uniform_f(just1) ==
        doctest::Approx(std::log(0.25)).epsilon(1e-14));
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    std::vector<int> prefix;
    int cur = (rng() % 2) ? 2 : 0;
    int blocks = 1 + int(rng() % 4);
    for (int b = 0; b < blocks; ++b) {
      int len = 1 + int(rng() % 5);
      prefix.insert(prefix.end(), len, cur);
      cur = 2 - cur;
    }
    prefix.push_back(1);
    CHECK(std::abs(pot.at(prefix) - pot.uniform_f(prefix)) <= 1e-12);
  }
  LimitPotential biased(2, 0.3);
  CHECK_THROWS_AS(biased.uniform_f(just1), DomainError);
}

TEST_CASE("sup gaps match a direct sweep for small n") {
  int m = 2;
  double p = 0.3;
  auto rep = convergence_report(m, p, 1, 5);
  auto mm = MultinacciModel<double>::make(m, p);
  auto walk = MeasureWalk::mu_star(mm);
  LimitPotential pot(m, p);
  for (int n = 1; n <= 5; ++n) {
    double g = 0;
    std::vector<int> w(n, 0);
    for (;;) {
      double phi_n = n_step(walk, w);
      bool osc = true;
      for (int c : w) osc = osc && (c == 0 || c == m);
      double gap = std::abs(phi_n - pot.at_canonical(w));
      if (osc)
        gap = std::max(gap,
                       std::abs(phi_n - pot.at_with_canonical_tail(w)));
      g = std::max(g, gap);
      int pos = n - 1;
      while (pos >= 0 && w[pos] == 2) w[pos--] = 0;
      if (pos < 0) break;
      ++w[pos];
    }
    CHECK(rep.entries[n - 1].sup_gap == doctest::Approx(g).epsilon(1e-9));
  }
}

TEST_CASE("decay classes on short windows") {
  auto exp_rep = convergence_report(2, 0.3, 4, 9);
  CHECK(exp_rep.cls == DecayClass::Exponential);
  CHECK(exp_rep.exp_r2 >= 0.98);
  // The measured decay follows min(alpha, 1/alpha)^n; the theorem's rho^n
  // stays an upper bound.
  double two_log_rho = std::log(3.0 / 7.0);
  CHECK(std::abs(exp_rep.exp_rate - two_log_rho) <=
        0.15 * std::abs(two_log_rho));
  double log_rho = 0.5 * two_log_rho;
  for (const auto& e : exp_rep.entries) {
    CHECK(e.sup_gap <= 2.0 * std::exp(log_rho * e.n));  // Krho^n upper bound
    CHECK(e.sandwich_slack <= 1e-9);
  }

  auto harm_rep = convergence_report(2, 0.5, 4, 9);
  CHECK(harm_rep.cls == DecayClass::Harmonic);
  CHECK(harm_rep.harmonic_spread <= 0.25);

  CHECK(convergence_report(3, 0.6, 3, 7).cls == DecayClass::Exponential);

  // K_n stays subexponential: log K_n / n shrinks over the window.
  const auto& kn = exp_rep.log_Kn;
  CHECK(kn.back() / 9.0 < kn[3] / 4.0);
  CHECK_THROWS_AS(convergence_report(3, 0.6, 3, 20), BudgetExceeded);
}

TEST_CASE("variation bound dominates the sup gap") {
  // Lemma-style check: measured sup gap <= sampled Var_n over tail pairs
  // sharing the n-prefix (the osc/closure pair is included explicitly).
  int n = 7;
  double p = 0.3;
  auto rep = convergence_report(2, p, n, n);
  LimitPotential pot(2, p);
  std::mt19937_64 rng(19);
  double var = 0;
  std::vector<int> w(n, 0);
  for (;;) {
    bool osc = true;
    for (int c : w) osc = osc && (c == 0 || c == 2);
    if (osc) {
      var = std::max(var, std::abs(pot.at_canonical(w) -
                                   pot.at_with_canonical_tail(w)));
      for (int t = 0; t < 20; ++t) {
        std::vector<int> tailed = w;
        for (int i = 0; i < n; ++i) tailed.push_back(int(rng() % 3));
        tailed.push_back(1);
        var = std::max(var, std::abs(pot.at(tailed) - pot.at_canonical(w)));
      }
    }
    int pos = n - 1;
    while (pos >= 0 && w[pos] == 2) w[pos--] = 0;
    if (pos < 0) break;
    ++w[pos];
  }
  CHECK(rep.entries[n - 1].sup_gap <= var * 1.05 + 1e-12);
}

TEST_CASE("quasi-Bernoulli reports") {
  // Lebesgue measure on a unit net: lengths multiply, ratio is 1.
  auto net = multinacci_adapted_system(2);
  auto leb = MeasureWalk::lebesgue(net);
  auto rep = quasi_bernoulli(leb, 5);
  CHECK(rep.min_ratio == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.max_ratio == doctest::Approx(1.0).epsilon(1e-9));

  // Uniform scaled-net mu: the witness family pushes the max ratio up
  // linearly, so no constant K fits.
  auto em = ErdosModel<double>::make(0.5);
  auto mu = MeasureWalk::erdos_mu(em);
  auto rep6 = quasi_bernoulli(mu, 6);
  auto rep9 = quasi_bernoulli(mu, 9);
  CHECK(rep9.pair_len_covered >= 10);
  // The witness ratio 3n/4 is capped by |w'| <= max_len, n = max_len + 1.
  CHECK(rep9.max_ratio >= 0.75 * 10 * 0.99);
  CHECK(rep9.max_ratio > rep6.max_ratio * 1.2);

  // Gibbs regime: mu* for p != q keeps both ratio extremes stable.
  auto mm = MultinacciModel<double>::make(2, 0.4);
  auto star = MeasureWalk::mu_star(mm);
  auto s6 = quasi_bernoulli(star, 6);
  auto s8 = quasi_bernoulli(star, 8);
  double k6 = std::max(s6.max_ratio, 1.0 / s6.min_ratio);
  double k8 = std::max(s8.max_ratio, 1.0 / s8.min_ratio);
  CHECK(k8 <= k6 * 1.2);
  CHECK(k8 >= 1.0);
}

TEST_CASE("potential at the discontinuity point evaluates") {
  // p < q, m >= 3: Phi is discontinuous at m^infinity but the formula still
  // produces a finite value there.
  LimitPotential pot(3, 0.3);
  std::vector<long> none;
  double at_m_inf = pot.at_osc_stream(3, none, true);
  CHECK(std::isfinite(at_m_inf));
  std::vector<long> blocks{4, 2};
  CHECK(std::isfinite(pot.at_osc_stream(0, blocks, true)));
  CHECK(std::isfinite(pot.at_osc_stream(0, blocks, false)));
}

TEST_CASE("counterexample probe regimes") {
  auto probe = counterexample_probe(3, 0.3, 4, 12);
  CHECK(probe.partner_letter == 4);
  CHECK(probe.floor_estimate >= 0.8);
  // r_n approaches 2 log(q/p).
  CHECK(probe.r.back() ==
        doctest::Approx(2 * std::log(7.0 / 3.0)).epsilon(0.05));

  auto control = counterexample_probe(3, 0.7, 4, 12);
  CHECK(control.r.back() < 0.01);
  CHECK(control.r.back() < control.r.front());

  auto m2 = counterexample_probe(2, 0.3, 4, 12);
  CHECK(m2.partner_letter == 1);
  CHECK(m2.floor_estimate < 1e-10);

  CHECK_THROWS_AS(counterexample_probe(3, 0.3, 5, 4), UsageError);
}
