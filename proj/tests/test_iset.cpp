#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pvconv/iset.hpp"

using namespace pvconv;

namespace {

AlgebraicNumber an(const NumberField::Ptr& f, std::initializer_list<long> c) {
  std::vector<Int> v;
  for (long x : c) v.emplace_back(x);
  return AlgebraicNumber(f, std::move(v));
}

}  // namespace

TEST_CASE("digit params") {
  CHECK(DigitParams::make(golden_field(), 2).b == 2);
  CHECK(DigitParams::make(NumberField::parse("x^2-5x-3@5.5"), 6).b == 6);
  CHECK(DigitParams::make(NumberField::parse("x^3-3x^2+1@2.8"), 3).b == 3);
  CHECK_THROWS_AS(DigitParams::make(NumberField::parse("x^2-5x-3@5.5"), 4),
                  UsageError);
}

TEST_CASE("quadratic example: elements, edges, discovery order") {
  auto f = NumberField::parse("x^2-5x-3@5.5");
  auto [iset, edges] = build_iset(f, DigitParams::make(f, 6));
  REQUIRE(iset.size() == 3);
  // Discovery order matches the listing i_0 = 0, i_1 = 1, i_2 = beta - 5.
  CHECK(iset.elements[0] == an(f, {0}));
  CHECK(iset.elements[1] == an(f, {1}));
  CHECK(iset.elements[2] == an(f, {-5, 1}));
  // Exhaustive edge enumeration gives 19 labeled arrows: 6+5+1+3+4 over the
  // five nonzero positions of the closed matrix pattern.
  CHECK(edges.size() == 19);
  // The defining identity j = i + beta i_h - i_k holds exactly.
  auto beta = AlgebraicNumber::beta(f);
  for (const auto& e : edges) {
    auto lhs = AlgebraicNumber::from_integer(f, e.i) +
               beta * iset.elements[e.h] - iset.elements[e.k];
    CHECK(lhs == AlgebraicNumber::from_integer(f, e.j));
    CHECK(e.j >= 0);
    CHECK(e.j < 6);
  }
  // Completeness: every (h, i, k) whose digit lands in D appears once.
  int found = 0;
  for (int h = 0; h < 3; ++h)
    for (int i = 0; i < 6; ++i)
      for (int k = 0; k < 3; ++k) {
        auto digit = AlgebraicNumber::from_integer(f, i) +
                     beta * iset.elements[h] - iset.elements[k];
        for (int j = 0; j < 6; ++j)
          if (digit == AlgebraicNumber::from_integer(f, j)) ++found;
      }
  CHECK(found == int(edges.size()));
}

TEST_CASE("cubic discovery order matches the canonical listing") {
  auto f = NumberField::parse("x^3-3x^2+1@2.8");
  auto [iset, edges] = build_iset(f, DigitParams::make(f, 3));
  REQUIRE(iset.size() == 8);
  CHECK(iset.elements[0] == an(f, {0}));
  CHECK(iset.elements[1] == an(f, {1}));
  CHECK(iset.elements[2] == an(f, {-2, 1}));
  CHECK(iset.elements[3] == an(f, {-2, -2, 1}));
  CHECK(iset.elements[4] == an(f, {-3, -2, 1}));
  CHECK(iset.elements[5] == an(f, {0, -3, 1}));
  CHECK(iset.elements[6] == an(f, {1, -3, 1}));
  CHECK(iset.elements[7] == an(f, {-3, 1}));
}

TEST_CASE("multinacci counts") {
  for (int m = 2; m <= 6; ++m) {
    auto f = multinacci_field(m);
    auto [iset, edges] = build_iset(f, DigitParams::make(f, 2));
    CHECK(iset.size() == m + 1);
  }
}

TEST_CASE("integer base") {
  // I = {0, ..., a-1} with a-1 < (d-1)/(beta-1) <= a.
  struct Case {
    const char* desc;
    int d, a;
  };
  for (Case c : {Case{"x-3@3", 5, 2}, Case{"x-2@2", 4, 3}, Case{"x-2@2", 2, 1},
                 Case{"x-4@4", 7, 2}}) {
    auto f = NumberField::parse(c.desc);
    auto [iset, edges] = build_iset(f, DigitParams::make(f, c.d));
    REQUIRE(iset.size() == c.a);
    for (int k = 0; k < c.a; ++k)
      CHECK(iset.index_of(AlgebraicNumber::from_integer(f, k)) >= 0);
  }
}

TEST_CASE("closure under the relation") {
  auto f = golden_field();
  auto params = DigitParams::make(f, 2);
  auto [iset, edges] = build_iset(f, params);
  auto beta = AlgebraicNumber::beta(f);
  auto minus_one = AlgebraicNumber::from_integer(f, -1);
  for (const auto& e : iset.elements)
    for (int i = 0; i < params.b; ++i)
      for (int j = 0; j < params.d; ++j) {
        auto y = beta * e + AlgebraicNumber::from_integer(f, i - j);
        if (compare(y, minus_one) > 0 && compare(params.alpha_mu, y) > 0)
          CHECK(iset.index_of(y) >= 0);
      }
}

TEST_CASE("gap clears the garsia bound") {
  auto f = golden_field();
  auto [iset, edges] = build_iset(f, DigitParams::make(f, 2));
  CHECK(compare(min_gap(iset), f->garsia_bound(4)) >= 0);
}

TEST_CASE("dot export") {
  auto f = NumberField::parse("x^2-5x-3@5.5");
  auto [iset, edges] = build_iset(f, DigitParams::make(f, 6));
  auto dot = export_automaton(iset, edges);
  CHECK(dot.rfind("digraph", 0) == 0);
  size_t nodes = 0, arrows = 0, pos = 0;
  while ((pos = dot.find("[label=\"", pos)) != std::string::npos) {
    ++nodes;
    pos += 8;
  }
  pos = 0;
  while ((pos = dot.find(" -> ", pos)) != std::string::npos) {
    ++arrows;
    pos += 4;
  }
  CHECK(nodes - arrows == 3);  // node labels = total labels - edge labels
  CHECK(arrows == 19);
  // The state 0 always loops via (i, j) = (0, 0).
  CHECK(dot.find("n0 -> n0 [label=\"0/0\"]") != std::string::npos);
  // Deterministic rendering.
  CHECK(dot == export_automaton(iset, edges));
}

TEST_CASE("golden d=2 automaton has three nodes") {
  auto f = golden_field();
  auto [iset, edges] = build_iset(f, DigitParams::make(f, 2));
  CHECK(iset.size() == 3);
}

TEST_CASE("caps guard runaway construction") {
  auto f = NumberField::parse("x^3-3x^2+1@2.8");
  BuildCaps caps;
  caps.max_size = 2;
  CHECK_THROWS_AS(build_iset(f, DigitParams::make(f, 3), caps),
                  BudgetExceeded);
  BuildCaps caps2;
  caps2.max_iters = 1;
  CHECK_THROWS_AS(build_iset(f, DigitParams::make(f, 3), caps2),
                  BudgetExceeded);
}

TEST_CASE("idempotence: rebuilding changes nothing") {
  auto f = NumberField::parse("x^3-3x^2+1@2.8");
  auto params = DigitParams::make(f, 3);
  auto [a, ea] = build_iset(f, params);
  auto [b, eb] = build_iset(f, params);
  REQUIRE(a.size() == b.size());
  for (int k = 0; k < a.size(); ++k) CHECK(a.elements[k] == b.elements[k]);
  CHECK(ea.size() == eb.size());
}
