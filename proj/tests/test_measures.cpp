#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pvconv/measures.hpp"

using namespace pvconv;

TEST_CASE("mu_star basics") {
  auto mm = MultinacciModel<Rat>::make(2, Rat(1, 2));
  CHECK(mm.mu_star(std::vector<int>{}) == 1);
  CHECK(mm.mu_star(std::vector<int>{1}) == Rat(1, 4));
  CHECK_THROWS_AS(mm.mu_star(std::vector<int>{3}), UsageError);
  CHECK_THROWS_AS(MultinacciModel<Rat>::make(1, Rat(1, 2)), UsageError);
  CHECK_THROWS_AS(MultinacciModel<Rat>::make(2, Rat(0)), UsageError);
}

TEST_CASE("mu_star additivity, m = 3") {
  auto mm = MultinacciModel<Rat>::make(3, Rat(2, 5));
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    std::vector<int> w(rng() % 5);
    for (auto& c : w) c = int(rng() % 7);
    Rat total = mm.mu_star(w);
    Rat sum(0);
    for (int j = 0; j < 7; ++j) {
      w.push_back(j);
      sum += mm.mu_star(w);
      w.pop_back();
    }
    CHECK(sum == total);
  }
}

TEST_CASE("erdos model heads and closed forms") {
  auto em = ErdosModel<Rat>::make(Rat(1, 2));
  CHECK(em.total_mass() == 1);
  for (int eta = 0; eta < 3; ++eta)
    CHECK(em.mu(std::vector<int>{eta}) == Rat(1, 3));
  // mu[[2 0^{n-1}]] = n/(3 4^{n-1})
  for (int n = 1; n <= 12; ++n) {
    std::vector<int> w{2};
    w.insert(w.end(), n - 1, 0);
    CHECK(em.mu(w) == Rat(n) / (Rat(3) * pow_rat(Rat(4), unsigned(n - 1))));
  }
  CHECK_THROWS_AS(em.mu(std::vector<int>{}), DomainError);
  CHECK_THROWS_AS(em.mu(std::vector<int>{4}), UsageError);
}

TEST_CASE("nonuniform zero-run ratio is p^2") {
  auto em = ErdosModel<Rat>::make(Rat(3, 10));
  Rat p2 = Rat(9, 100);
  std::vector<int> w{0};
  Rat prev = em.mu(w);
  for (int n = 1; n <= 10; ++n) {
    w.push_back(0);
    Rat cur = em.mu(w);
    CHECK(cur == prev * p2);
    prev = cur;
  }
  CHECK(em.total_mass() == 1);
}

TEST_CASE("erdpr1 sandwich on short words") {
  auto em = ErdosModel<Rat>::make(Rat(1, 2));
  std::vector<int> w;
  std::function<void()> rec = [&]() {
    if (!w.empty()) {
      Rat ratio = em.mu(w) / em.mu_star(w);
      int n = int(w.size());
      CHECK(Rat(8) / (Rat(3) * (n + 2)) <= ratio);
      CHECK(ratio <= Rat(8, 3));
      // Runs 0^n and 2^n attain the lower bound.
      bool pure = true;
      for (size_t i = 1; i < w.size(); ++i) pure = pure && w[i] == w[0];
      if (pure && (w[0] == 0 || w[0] == 2))
        CHECK(ratio == Rat(8) / (Rat(3) * (n + 2)));
      if (w[0] == 1) CHECK(ratio == Rat(4, 3));
    }
    if (w.size() >= 6) return;
    for (int j = 0; j < 3; ++j) {
      w.push_back(j);
      rec();
      w.pop_back();
    }
  };
  rec();
}

TEST_CASE("projector identity X M_{w_j} = P_j X") {
  for (int m = 2; m <= 5; ++m) {
    auto mx = MultinacciExact::make(m, Rat(2, 7));
    auto X = mx.x_projector();
    for (int j = 0; j <= m * (m - 1); ++j) {
      CHECK(X * mx.word_family.mats[j] == mx.model.P[j] * X);
    }
  }
}

TEST_CASE("head vector matches the closed-form R direction") {
  for (int m = 2; m <= 4; ++m) {
    auto mx = MultinacciExact::make(m, Rat(3, 8));
    // (V0, V2) is parallel to (1 - q^{m-1}, q^{m-1}) exactly.
    Rat qm = pow_rat(Rat(5, 8), unsigned(m - 1));
    CHECK(mx.head[0] * qm == mx.head[1] * (Rat(1) - qm));
    // All components of V nonnegative; V0 + V1 = 1.
    Rat v01 = mx.V[0] + mx.V[1];
    CHECK(v01 == 1);
  }
}

TEST_CASE("golden head vector matches oracle enclosures") {
  auto mx = MultinacciExact::make(2, Rat(1, 2));
  auto f = mx.field;
  std::vector<Rat> probs{Rat(1, 2), Rat(1, 2)};
  // V_k = mu([0,1) + i_k) for i = 0, 1, beta-1.
  struct Iv {
    RationalCombination a, b;
  };
  auto one = AlgebraicNumber::from_integer(f, 1);
  auto beta = AlgebraicNumber::beta(f);
  std::vector<Iv> ivs{
      {RationalCombination::of(f, Rat(0)), RationalCombination::of(one)},
      {RationalCombination::of(one),
       RationalCombination::of(f, Rat(2))},
      {RationalCombination::of(beta - one), RationalCombination::of(beta)}};
  for (size_t k = 0; k < ivs.size(); ++k) {
    auto enc = brute_force_enclosure(f, 2, probs, ivs[k].a, ivs[k].b, 20);
    CHECK(enc.contains(mx.V[k]));
  }
  // Exact values for the uniform golden case: 2/3, 1/3, 2/3.
  CHECK(mx.V[0] == Rat(2, 3));
  CHECK(mx.V[1] == Rat(1, 3));
  CHECK(mx.V[2] == Rat(2, 3));
}

TEST_CASE("m=3 unit-net measure against the oracle") {
  // The absolute normalization of the head vector is pinned by V0 + V1 = 1;
  // the definition-level oracle confirms it on basic intervals.
  auto mx = MultinacciExact::make(3, Rat(2, 5));
  auto net = multinacci_adapted_system(mx.field, 3);
  std::vector<Rat> probs{Rat(2, 5), Rat(3, 5)};
  for (std::vector<int> w : {std::vector<int>{0}, {3}, {6}, {1, 2}, {4, 0},
                             {6, 6}, {2, 5, 1}}) {
    auto iv = interval_of_word(net, w);
    auto enc =
        brute_force_enclosure(mx.field, 2, probs, iv.left, iv.left + iv.length, 20);
    CHECK(enc.contains(mx.mu_unit(w)));
  }
  // The depth-1 intervals tile [0,1): their masses sum to V0 = mu([0,1)).
  Rat sum(0);
  for (int j = 0; j <= 6; ++j) sum += mx.mu_unit(std::vector<int>{j});
  CHECK(sum == mx.V[0]);
}

TEST_CASE("mu versus mu_star sandwich") {
  auto mx = MultinacciExact::make(2, Rat(2, 5));
  Rat C = pow_rat(Rat(2, 5) * Rat(3, 5), 2);
  std::mt19937_64 rng(23);
  for (int t = 0; t < 200; ++t) {
    int k = int(rng() % 4);
    std::vector<int> w(k, 0);
    w.push_back(1 + int(rng() % 2));  // nonzero letter
    int extra = int(rng() % 6);
    for (int i = 0; i < extra; ++i) w.push_back(int(rng() % 3));
    auto cmp = compare_mu_mustar(mx, w);
    CHECK(cmp.leading_zeros == k);
    CHECK(cmp.in_bounds);
    CHECK(cmp.lower == pow_rat(C, unsigned(k + 1)));
    CHECK(cmp.ratio <= 2);
    if (k == 0) CHECK(cmp.ratio >= C);
  }
  CHECK_THROWS_AS(compare_mu_mustar(mx, std::vector<int>{0, 0, 0}),
                  DomainError);
}

TEST_CASE("self-similarity of the scaled model") {
  auto em = ErdosModel<Rat>::make(Rat(3, 10));
  Rat p(3, 10), q(7, 10);
  std::mt19937_64 rng(29);
  for (int t = 0; t < 50; ++t) {
    std::vector<int> w(rng() % 6);
    for (auto& c : w) c = int(rng() % 3);
    // Scaled heads: (mu~_0, mu~_2)(J) = P_w tail.
    std::vector<Rat> h = em.tail;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      h = times_col(em.P[*it], h);
    std::vector<int> w0{0}, w1{1}, w2{2};
    for (int c : w) {
      w0.push_back(c);
      w1.push_back(c);
      w2.push_back(c);
    }
    CHECK(em.mu(w0) == p * h[0]);
    CHECK(em.mu(w1) == p * q * (h[0] + h[1]));
    CHECK(em.mu(w2) == q * h[1]);
  }
}

TEST_CASE("oracle resolves the full support instantly") {
  auto f = golden_field();
  auto params = DigitParams::make(f, 2);
  auto a = RationalCombination::of(f, Rat(0));
  auto enc = brute_force_enclosure(f, 2, {Rat(1, 2), Rat(1, 2)}, a,
                                   params.alpha_mu, 4);
  CHECK(enc.lo == 1);
  CHECK(enc.hi == 1);
  CHECK(enc.nodes == 1);
}

TEST_CASE("oracle depth-3 sweep brackets matrix values") {
  auto f = golden_field();
  auto net = scaled_erdos_net(f);
  for (Rat p : {Rat(1, 2), Rat(3, 10)}) {
    auto em = ErdosModel<Rat>::make(p);
    std::vector<Rat> probs{p, Rat(1) - p};
    std::vector<int> word(3, 0);
    for (;;) {
      auto iv = interval_of_word(net, word);
      auto enc =
          brute_force_enclosure(f, 2, probs, iv.left, iv.left + iv.length, 16);
      CHECK(enc.contains(em.mu(word)));
      int pos = 2;
      while (pos >= 0 && word[pos] == 2) word[pos--] = 0;
      if (pos < 0) break;
      ++word[pos];
    }
  }
}

TEST_CASE("oracle input validation") {
  auto f = golden_field();
  auto a = RationalCombination::of(f, Rat(0));
  auto b = RationalCombination::of(f, Rat(1));
  CHECK_THROWS_AS(brute_force_enclosure(f, 2, {Rat(1, 2)}, a, b, 8),
                  UsageError);
  CHECK_THROWS_AS(
      brute_force_enclosure(f, 2, {Rat(1, 2), Rat(1, 3)}, a, b, 8),
      UsageError);
  CHECK_THROWS_AS(brute_force_enclosure(f, 2, {Rat(1, 2), Rat(1, 2)}, a, b,
                                        24, /*node_budget=*/10),
                  BudgetExceeded);
  auto g = NumberField::parse("x^2-5x-3@5.5");
  auto ag = RationalCombination::of(g, Rat(0));
  CHECK_THROWS_AS(
      brute_force_enclosure(f, 2, {Rat(1, 2), Rat(1, 2)}, ag, b, 8),
      FieldMismatch);
}

TEST_CASE("generic matrix-product measure") {
  auto mm = MultinacciModel<Rat>::make(2, Rat(2, 5));
  MMeasure<Rat> m;
  m.family.mats = mm.P;
  m.L = {Rat(1), Rat(1)};
  m.R = mm.R;
  std::mt19937_64 rng(31);
  for (int t = 0; t < 50; ++t) {
    std::vector<int> w(rng() % 7);
    for (auto& c : w) c = int(rng() % 3);
    CHECK(m.value(w) == mm.mu_star(w));
  }
}
