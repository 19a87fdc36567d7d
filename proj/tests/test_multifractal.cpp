#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "pvconv/multifractal.hpp"

using namespace pvconv;

namespace {

NetMeasure erdos_nm(double p) {
  auto em = ErdosModel<double>::make(p);
  return NetMeasure::on_net(MeasureWalk::erdos_mu(em), scaled_erdos_net());
}

// Symbolic stopping words of the scaled net: stop once the power sum
// reaches k (length beta^{1 - sum} <= beta^{1 - k}).
void stopping_words(int k, std::vector<int>& w, int pow_sum,
                    std::vector<std::vector<int>>& out) {
  static const int pows[3] = {2, 3, 2};
  if (pow_sum >= k) {
    out.push_back(w);
    return;
  }
  for (int j = 0; j < 3; ++j) {
    w.push_back(j);
    stopping_words(k, w, pow_sum + pows[j], out);
    w.pop_back();
  }
}

}  // namespace

TEST_CASE("stopping partitions tile the base interval exactly") {
  auto net = scaled_erdos_net();
  auto f = net.field;
  std::vector<std::vector<int>> words;
  std::vector<int> w;
  stopping_words(8, w, 0, words);

  // Exact tiling: sorted left endpoints chain to beta.
  std::vector<BasicInterval> ivs;
  for (const auto& sw : words) ivs.push_back(interval_of_word(net, sw));
  std::sort(ivs.begin(), ivs.end(), [](const auto& a, const auto& b) {
    return compare(a.left, b.left) < 0;
  });
  CHECK(sign(ivs.front().left) == 0);
  for (size_t i = 0; i + 1 < ivs.size(); ++i)
    CHECK(compare(ivs[i].left + ivs[i].length, ivs[i + 1].left) == 0);
  auto end = ivs.back().left + ivs.back().length;
  CHECK(compare(end, RationalCombination::of(
                         AlgebraicNumber::beta(f))) == 0);

  // The double-precision walker finds the same number of words.
  auto nm = erdos_nm(0.5);
  auto part = stopping_partition(nm, nm.base_loglen - nm.log_beta * 8);
  CHECK(part.logmass.size() == words.size());
  // Lengths land in (r l_min, r].
  for (double ll : part.loglen) {
    CHECK(ll <= part.log_r + 1e-12);
    CHECK(ll > part.log_r - 3 * nm.log_beta);
  }
}

TEST_CASE("tau at the anchor points") {
  auto nm = erdos_nm(0.5);
  auto t1 = tau_estimate(nm, 1.0, 12);
  auto t0 = tau_estimate(nm, 0.0, 12);
  CHECK(std::abs(t1.tau) <= 0.02);
  CHECK(std::abs(t0.tau + 1.0) <= 0.02);
  CHECK_THROWS_AS(tau_estimate(nm, 1.0, 5), UsageError);
}

TEST_CASE("tau(2) against an independent coarse box count") {
  auto nm = erdos_nm(0.5);
  double beta = scaled_erdos_net().field->beta_approx();
  auto em = ErdosModel<double>::make(0.5);
  auto net = scaled_erdos_net();

  // Independent route: fixed-length boxes over [0, beta), masses assigned
  // by interval midpoints of a deep stopping partition.
  auto box_logS2 = [&](int kbox) {
    std::vector<std::vector<int>> words;
    std::vector<int> w;
    stopping_words(kbox + 8, w, 0, words);
    double r = beta * std::pow(beta, -kbox);
    std::map<long, double> box;
    for (const auto& sw : words) {
      auto iv = interval_of_word(net, sw);
      double mid = iv.left.approx() + 0.5 * iv.length.approx();
      box[long(mid / r)] += em.mu(sw);
    }
    double s = 0;
    for (auto& [idx, mass] : box) s += mass * mass;
    return std::log(s);
  };
  // Slope of log S against log r; log r drops by log beta per level.
  double tau2_box = (box_logS2(11) - box_logS2(8)) / (-3.0 * std::log(beta));
  auto t2 = tau_estimate(nm, 2.0, 14);
  CHECK(std::abs(t2.tau - tau2_box) <= 0.03);
}

TEST_CASE("legendre transform geometry") {
  auto nm = erdos_nm(0.5);
  auto est = spectrum(nm, 12, -20, 20, 0.25);
  CHECK(est.alpha_min <= est.alpha_max);
  CHECK(std::abs(est.f_peak - 1.0) <= 0.05);
  // Nondegenerate interval around 1 for the uniform model.
  CHECK(est.alpha_min < 1.0);
  CHECK(est.alpha_max > 1.0);

  // Hull slopes are nonincreasing (concavity).
  const auto& hull = est.tau_hull;
  for (size_t i = 0; i + 2 < hull.size(); ++i) {
    double s1 = (hull[i + 1].tau - hull[i].tau) / (hull[i + 1].q - hull[i].q);
    double s2 =
        (hull[i + 2].tau - hull[i + 1].tau) / (hull[i + 2].q - hull[i + 1].q);
    CHECK(s2 <= s1 + 1e-12);
  }

  // Tangency at q = 1: f(tau'(1)) = tau'(1).
  auto taus = tau_sweep(nm, std::array<double, 2>{0.75, 1.25}, 12);
  double slope1 = (taus[1].tau - taus[0].tau) / 0.5;
  // Evaluate f at alpha = slope1 via the vertex list.
  double f_val = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < est.falpha.size(); ++i) {
    if (slope1 >= est.falpha[i].alpha - 1e-9 &&
        slope1 <= est.falpha[i + 1].alpha + 1e-9) {
      double t = (slope1 - est.falpha[i].alpha) /
                 (est.falpha[i + 1].alpha - est.falpha[i].alpha);
      f_val = est.falpha[i].f +
              t * (est.falpha[i + 1].f - est.falpha[i].f);
      break;
    }
  }
  CHECK(std::abs(f_val - slope1) <= 0.05);

  // Idempotence: the double conjugate returns the hulled tau.
  for (const auto& pt : est.tau_hull)
    CHECK(std::abs(conjugate_eval(est.falpha, pt.q) - pt.tau) <= 1e-6);
}

TEST_CASE("kink scan reports a location in range") {
  auto nm = erdos_nm(0.5);
  auto est = spectrum(nm, 12, -10, 2, 0.25);
  CHECK(est.qc_estimate <= -2.0);
  CHECK(est.qc_estimate >= -8.0);
  CHECK(est.qc_curvature >= 0.0);
}

TEST_CASE("local dimensions") {
  std::vector<int> zeros(200, 0);
  auto ld3 = local_dimension(erdos_nm(0.3), zeros);
  CHECK(ld3.tail_mean ==
        doctest::Approx(std::log(0.3) / std::log(1 / 1.6180339887))
            .epsilon(0.005));
  auto ld5 = local_dimension(erdos_nm(0.5), zeros);
  CHECK(ld5.tail_mean ==
        doctest::Approx(std::log(2.0) / std::log(1.6180339887))
            .epsilon(0.005));

  // Lebesgue: value = length, slope identically 1.
  auto net = scaled_erdos_net();
  auto leb = NetMeasure::on_net(MeasureWalk::lebesgue(net), net);
  std::vector<int> word{0, 2, 1, 0, 2, 2, 0, 1};
  auto ld = local_dimension(leb, word);
  for (double s : ld.slopes) CHECK(s == doctest::Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(local_dimension(erdos_nm(0.5), std::vector<int>{}),
                  UsageError);
}

TEST_CASE("domain check verdicts") {
  auto dc = erdos_domain_check(Rat(3, 10));
  CHECK(dc.disconnected);
  CHECK(dc.alpha_star == doctest::Approx(2.502).epsilon(0.002));
  CHECK(dc.bound == doctest::Approx(1.6216).epsilon(0.002));
  CHECK(dc.alpha_star - dc.alpha_bar_est >= 10 * dc.alpha_bar_err);

  auto dc7 = erdos_domain_check(Rat(7, 10));
  CHECK(dc7.disconnected == dc.disconnected);  // (p,q) symmetry
  CHECK(dc7.alpha_star == doctest::Approx(dc.alpha_star).epsilon(1e-12));
  CHECK(dc7.bound == doctest::Approx(dc.bound).epsilon(1e-12));

  auto dc5 = erdos_domain_check(Rat(1, 2));
  CHECK_FALSE(dc5.disconnected);
  CHECK_FALSE(dc5.closed_form_gap);
  CHECK(dc5.alpha_star == doctest::Approx(dc5.bound).epsilon(1e-12));

  CHECK_THROWS_AS(erdos_domain_check(Rat(0)), UsageError);
  CHECK_THROWS_AS(erdos_domain_check(Rat(3, 2)), UsageError);
}

TEST_CASE("input guards") {
  auto nm = erdos_nm(0.5);
  CHECK_THROWS_AS(stopping_partition(nm, nm.base_loglen + 1.0), UsageError);
  CHECK_THROWS_AS(spectrum(nm, 10, 5.0, -5.0, 0.25), UsageError);
  CHECK_THROWS_AS(stopping_partition(nm, nm.base_loglen - nm.log_beta * 12,
                                     /*word_budget=*/8),
                  BudgetExceeded);
}
