#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pvconv/contfrac.hpp"
#include "pvconv/field.hpp"

using namespace pvconv;

TEST_CASE("plain evaluations at alpha = 1") {
  CFParams par{1.0, 0};
  // u_n = a_n, v_n = 1: [.|1; 2] = 1 + 1/2.
  std::vector<long> d{1, 2};
  CHECK(cf_eval(par, d) == doctest::Approx(1.5).epsilon(1e-15));
  std::vector<long> d2{0, 2};
  CHECK(cf_eval(par, d2) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("all-ones stream converges to the golden ratio") {
  CFParams par{1.0, 0};
  double value = cf_limit(par, [](int) { return 1L; }, 1e-12);
  auto bracket = golden_field()->beta_bracket();
  CHECK(std::abs(value - bracket.mid_d()) <= 1e-11);
}

TEST_CASE("convergents interlace") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> logu(std::log(0.2), std::log(5.0));
  for (int t = 0; t < 200; ++t) {
    CFParams par{std::exp(logu(rng)), int(rng() % 2)};
    ContinuedFraction cf(par);
    std::vector<double> vals;
    cf.push(long(rng() % 4));
    vals.push_back(cf.value());
    for (int i = 0; i < 12; ++i) {
      cf.push(1 + long(rng() % 5));
      vals.push_back(cf.value());
    }
    for (size_t n = 2; n < vals.size(); ++n) {
      double tol = 1e-12 * (1 + std::abs(vals[n]));
      if (n % 2 == 0)
        CHECK(vals[n] >= vals[n - 2] - tol);  // even: nondecreasing
      else
        CHECK(vals[n] <= vals[n - 2] + tol);  // odd: nonincreasing
    }
    for (size_t e = 0; e + 1 < vals.size(); e += 2)
      CHECK(vals[e] <= vals[e + 1] + 1e-12 * (1 + std::abs(vals[e])));
  }
}

TEST_CASE("vector termination") {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> logu(std::log(0.2), std::log(5.0));
  for (int t = 0; t < 200; ++t) {
    CFParams par{std::exp(logu(rng)), int(rng() % 2)};
    std::vector<long> d{long(rng() % 4)};
    int n = 2 + int(rng() % 10);
    for (int i = 0; i < n; ++i) d.push_back(1 + long(rng() % 5));

    // (x, y) = (1, 0) reduces to the plain value.
    CHECK(cf_eval_vector(par, d, 1.0, 0.0) ==
          doctest::Approx(cf_eval(par, d)).epsilon(1e-14));

    // (x, y) = (u_{n+1}, 1) advances one step.
    ContinuedFraction cf(par);
    for (long a : d) cf.push(a);
    long next = 1 + long(rng() % 5);
    double u_next = cf.u(next, int(d.size()));
    double advanced = cf.value_vector(u_next, 1.0);
    auto d2 = d;
    d2.push_back(next);
    CHECK(advanced == doctest::Approx(cf_eval(par, d2)).epsilon(1e-13));

    // Holder-style deviation bound for the vector value.
    std::uniform_real_distribution<double> xy(0.0, 3.0);
    double x = xy(rng), y = xy(rng);
    if (x == 0 && y == 0) x = 1;
    double un = cf.u(d.back(), int(d.size()) - 1);
    double vn = cf.v(d.back(), int(d.size()) - 1);
    double dev = std::abs(cf.value_vector(x, y) - cf.value());
    double bound = (x * un + y * vn) > 0
                       ? (y * vn) / (x * un + y * vn) * cf.delta()
                       : 0.0;
    CHECK(dev <= bound + 1e-12 * (1 + std::abs(cf.value())));
  }
}

TEST_CASE("delta monotonicity and bounds") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> logu(std::log(0.2), std::log(5.0));
  for (int t = 0; t < 300; ++t) {
    double alpha = std::exp(logu(rng));
    if (std::abs(alpha - 1) < 1e-3) alpha += 0.05;
    CFParams par{alpha, int(rng() % 2)};
    std::vector<long> d{long(rng() % 4)};
    for (int i = 0; i < 15; ++i) d.push_back(1 + long(rng() % 5));
    ContinuedFraction cf(par);
    cf.push(d[0]);
    cf.push(d[1]);
    double prev = cf.delta();
    double noise = 1e-12 * (1 + std::abs(cf.value()));
    for (size_t i = 2; i < d.size(); ++i) {
      cf.push(d[i]);
      double cur = cf.delta();
      if (cur > noise || prev > noise)
        CHECK(cur <= prev * (1 + 1e-9) + noise);
      prev = cur;
    }
    double dn = cf_delta(par, d);
    if (dn > noise)
      CHECK(dn <= delta_bound_exponential(par, d) * (1 + 1e-9) + noise);
  }
}

TEST_CASE("regular branch bound at alpha = 1") {
  std::mt19937_64 rng(78);
  for (int t = 0; t < 300; ++t) {
    CFParams par{1.0, int(rng() % 2)};
    std::vector<long> d{long(rng() % 4)};
    for (int i = 0; i < 12; ++i) d.push_back(1 + long(rng() % 6));
    CHECK(cf_delta(par, d) <= delta_bound_regular(d) * (1 + 1e-12));
  }
}

TEST_CASE("truncation-change bound") {
  CFParams par{0.25, 0};
  std::vector<long> d{1, 3, 2, 6};
  for (long a = 1; a < 6; ++a) {
    auto trunc = d;
    trunc.back() = a;
    double diff = std::abs(cf_eval(par, d) - cf_eval(par, trunc));
    CHECK(diff <= truncation_bound(par, d, a) * (1 + 1e-9));
  }
  CHECK_THROWS_AS(truncation_bound(CFParams{1.0, 0}, d, 2), DomainError);
  CHECK_THROWS_AS(delta_bound_exponential(CFParams{1.0, 0}, d), DomainError);
}

TEST_CASE("infinity-terminated limits") {
  // [kappa | 0; infinity]: limit of the one-term fractions v_0/u_1(k).
  CFParams par{2.0, 0};
  std::vector<long> d{0};
  double value = cf_limit(par, d, 1e-12);
  // u_1(k) = 1/2 + ... + 1/2^k -> 1, so the limit is v_0/1 = 1.
  CHECK(value == doctest::Approx(1.0).epsilon(1e-9));

  CFParams par_inv{0.5, 0};
  double value2 = cf_limit(par_inv, d, 1e-12);
  // Odd-parity u diverges for alpha < 1: the limit collapses to p_0/q_0 = 0.
  CHECK(value2 == doctest::Approx(0.0).epsilon(1e-9));

  // Closed-form cross-check on a longer head, alpha > 1, even tail index.
  CFParams par3{3.0, 0};
  std::vector<long> head{1, 2, 1};
  double lim = cf_limit(par3, head, 1e-13);
  ContinuedFraction cf(par3);
  for (long a : head) cf.push(a);
  // Tail index 3 has odd parity for kappa = 0: u*(k) -> 1/(alpha-1).
  double ustar = 1.0 / (3.0 - 1.0);
  std::vector<long> big = head;
  big.push_back(60);
  double by_formula = cf.value_vector(ustar, 1.0);
  CHECK(lim == doctest::Approx(by_formula).epsilon(1e-9));
  CHECK(lim == doctest::Approx(cf_eval(par3, big)).epsilon(1e-6));
}

TEST_CASE("stream limits honor the tolerance cap") {
  CFParams par{1.0, 0};
  CHECK_THROWS_AS(cf_limit(par, [](int) { return 1L; }, 1e-12, 5),
                  ConvergenceError);
}

TEST_CASE("renormalization leaves long evaluations finite") {
  CFParams par{1.3, 1};
  std::vector<long> d{2};
  std::mt19937_64 rng(91);
  for (int i = 0; i < 200; ++i) d.push_back(1 + long(rng() % 6));
  double v = cf_eval(par, d);
  CHECK(std::isfinite(v));
  // The value agrees with the evaluation of any long prefix beyond
  // convergence.
  std::vector<long> d2(d.begin(), d.begin() + 150);
  CHECK(v == doctest::Approx(cf_eval(par, d2)).epsilon(1e-10));
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(ContinuedFraction(CFParams{0.0, 0}), UsageError);
  CHECK_THROWS_AS(ContinuedFraction(CFParams{1.0, 2}), UsageError);
  CFParams par{1.0, 0};
  std::vector<long> empty;
  CHECK_THROWS_AS(cf_eval(par, empty), UsageError);
  ContinuedFraction cf(par);
  cf.push(0);
  CHECK_THROWS_AS(cf.push(0), UsageError);  // a_i > 0 for i >= 1
  CHECK_THROWS_AS(cf.push(-1), UsageError);
  cf.push(2);
  CHECK_THROWS_AS(cf.value_vector(0.0, 0.0), UsageError);
  CHECK_THROWS_AS(cf.value_vector(-1.0, 1.0), UsageError);
}
