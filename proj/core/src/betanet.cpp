#include "pvconv/betanet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pvconv {

BetaExpansionOfOne beta_expansion_of_one(const NumberField::Ptr& field,
                                         int cap) {
  BetaExpansionOfOne out;
  auto beta = AlgebraicNumber::beta(field);
  AlgebraicNumber x = AlgebraicNumber::from_integer(field, 1);
  for (int step = 0; step < cap; ++step) {
    if (x.is_zero()) {
      out.finite_type = true;
      break;
    }
    AlgebraicNumber bx = beta * x;
    // eps = floor(beta * x); remainders live in [0, 1) so eps stays small.
    int eps = 0;
    while (compare(bx, Rat(eps + 1)) >= 0) ++eps;
    out.digits.push_back(eps);
    x = bx - AlgebraicNumber::from_integer(field, eps);
  }
  if (!out.finite_type) return out;  // finite_type undetermined past the cap

  // Admissibility: eps_i..eps_{T-1} (eps_T - 1) eps_1..eps_{i-1} <_lex eps.
  const auto& e = out.digits;
  int T = int(e.size());
  for (int i = 2; i <= T; ++i) {
    std::vector<int> rotated;
    for (int t = i; t <= T - 1; ++t) rotated.push_back(e[t - 1]);
    rotated.push_back(e[T - 1] - 1);
    for (int t = 1; t <= i - 1; ++t) rotated.push_back(e[t - 1]);
    if (!std::lexicographical_compare(rotated.begin(), rotated.end(),
                                      e.begin(), e.end())) {
      out.finite_type = false;
      break;
    }
  }
  return out;
}

AffineContraction AffineContraction::compose(
    const NumberField::Ptr& field, const AffineContraction& inner) const {
  // (this o inner)(x) = inner(x)/beta^pow + offset
  AffineContraction r;
  r.pow = pow + inner.pow;
  auto bp = beta_pow(field, unsigned(pow));
  r.offset = offset + RationalCombination(inner.offset.num,
                                          inner.offset.den * bp);
  return r;
}

RationalCombination AffineContraction::apply(
    const RationalCombination& x) const {
  auto field = x.field();
  auto bp = beta_pow(field, unsigned(pow));
  return offset + RationalCombination(x.num, x.den * bp);
}

AffineContraction word_contraction(const NumberField::Ptr& field,
                                   std::span<const int> bword) {
  AffineContraction acc;
  acc.pow = 0;
  acc.offset = RationalCombination::of(field, Rat(0));
  for (int digit : bword) {
    AffineContraction step;
    step.pow = 1;
    step.offset = RationalCombination(
        AlgebraicNumber::from_integer(field, digit),
        AlgebraicNumber::beta(field));
    acc = acc.compose(field, step);
  }
  return acc;
}

double AdaptedSystem::letter_ratio_log(int j) const {
  return -maps[j].pow * std::log(field->beta_approx());
}

namespace {

void verify_partition(const AdaptedSystem& sys) {
  // Images sorted by left endpoint must tile [lo, lo+len) with exact
  // endpoint matches.
  struct Img {
    RationalCombination lo, hi;
  };
  std::vector<Img> imgs;
  auto hi_base = sys.base_lo + sys.base_len;
  for (const auto& m : sys.maps)
    imgs.push_back({m.apply(sys.base_lo), m.apply(hi_base)});
  std::sort(imgs.begin(), imgs.end(), [](const Img& a, const Img& b) {
    return compare(a.lo, b.lo) < 0;
  });
  if (compare(imgs.front().lo, sys.base_lo) != 0)
    throw Error("adapted system: leftmost image does not start the base");
  for (size_t i = 0; i + 1 < imgs.size(); ++i)
    if (compare(imgs[i].hi, imgs[i + 1].lo) != 0)
      throw Error("adapted system: images leave a gap or overlap");
  if (compare(imgs.back().hi, hi_base) != 0)
    throw Error("adapted system: rightmost image does not reach the base end");
}

void verify_suffix_condition(const AdaptedSystem& sys) {
  auto zero = RationalCombination::of(sys.field, Rat(0));
  auto one = RationalCombination::of(sys.field, Rat(1));
  for (const auto& w : sys.words) {
    for (size_t cut = 0; cut < w.size(); ++cut) {
      std::span<const int> suffix(w.data() + cut, w.size() - cut);
      auto r = word_contraction(sys.field, suffix);
      if (compare(r.apply(zero), zero) < 0 || compare(r.apply(one), one) > 0)
        throw Error("adapted system: suffix leaves the unit interval");
    }
  }
}

AdaptedSystem from_words(const NumberField::Ptr& field,
                         std::vector<std::vector<int>> words) {
  AdaptedSystem sys;
  sys.field = field;
  sys.words = std::move(words);
  for (const auto& w : sys.words)
    sys.maps.push_back(word_contraction(field, w));
  sys.base_lo = RationalCombination::of(field, Rat(0));
  sys.base_len = RationalCombination::of(field, Rat(1));
  verify_partition(sys);
  verify_suffix_condition(sys);
  return sys;
}

}  // namespace

AdaptedSystem finite_type_adapted_system(const NumberField::Ptr& field) {
  if (field->degree() == 1) {
    // Integer beta: the base-beta digit net, one single-letter word per digit.
    long b = Int(-field->min_poly()[0]).get_si();
    std::vector<std::vector<int>> words;
    for (int i = 0; i < b; ++i) words.push_back({i});
    return from_words(field, std::move(words));
  }
  auto exp = beta_expansion_of_one(field);
  return finite_type_adapted_system(field, exp);
}

AdaptedSystem finite_type_adapted_system(const NumberField::Ptr& field,
                                         const BetaExpansionOfOne& expansion) {
  if (!expansion.finite_type)
    throw DomainError(
        "finite-type construction needs a terminating admissible expansion");
  const auto& eps = expansion.digits;
  if (eps.size() < 2)
    throw DomainError("finite-type construction requires T >= 2");
  std::vector<std::vector<int>> words;
  for (size_t k = 1; k <= eps.size(); ++k) {
    for (int e = 0; e < eps[k - 1]; ++e) {
      std::vector<int> w(eps.begin(), eps.begin() + (k - 1));
      w.push_back(e);
      words.push_back(std::move(w));
    }
  }
  return from_words(field, std::move(words));
}

std::vector<int> multinacci_word(int m, int j) {
  if (j < 0 || j > m * (m - 1))
    throw UsageError("multinacci word index out of range");
  if (j == 0) return std::vector<int>(m, 0);
  int x = (m - 1) - (j - 1) / (m - 1);
  int y = (j - 1) % (m - 1);
  std::vector<int> w(x, 0);
  w.insert(w.end(), y, 1);
  w.push_back(1);
  w.push_back(0);
  return w;
}

AdaptedSystem multinacci_adapted_system(const NumberField::Ptr& field, int m) {
  if (m < 2) throw UsageError("multinacci system needs m >= 2");
  std::vector<std::vector<int>> words;
  for (int j = 0; j <= m * (m - 1); ++j) words.push_back(multinacci_word(m, j));
  return from_words(field, std::move(words));
}

AdaptedSystem multinacci_adapted_system(int m) {
  return multinacci_adapted_system(multinacci_field(m), m);
}

AdaptedSystem scaled_erdos_net(const NumberField::Ptr& golden) {
  AdaptedSystem sys;
  sys.field = golden;
  auto beta = AlgebraicNumber::beta(golden);
  auto one = AlgebraicNumber::from_integer(golden, 1);
  sys.base_lo = RationalCombination::of(golden, Rat(0));
  sys.base_len = RationalCombination::of(AlgebraicNumber::beta(golden));
  AffineContraction s0{2, RationalCombination::of(golden, Rat(0))};
  AffineContraction s1{3, RationalCombination(one, beta)};
  AffineContraction s2{2, RationalCombination::of(one)};
  sys.maps = {s0, s1, s2};
  verify_partition(sys);
  return sys;
}

AdaptedSystem scaled_erdos_net() { return scaled_erdos_net(golden_field()); }

BasicInterval interval_of_word(const AdaptedSystem& system,
                               std::span<const int> jword) {
  AffineContraction acc;
  acc.pow = 0;
  acc.offset = RationalCombination::of(system.field, Rat(0));
  for (int letter : jword) {
    if (letter < 0 || letter >= system.alphabet())
      throw UsageError("word letter outside the net alphabet");
    acc = acc.compose(system.field, system.maps[letter]);
  }
  BasicInterval iv;
  iv.word.assign(jword.begin(), jword.end());
  iv.left = acc.apply(system.base_lo);
  auto bp = beta_pow(system.field, unsigned(acc.pow));
  iv.length = RationalCombination(system.base_len.num,
                                  system.base_len.den * bp);
  return iv;
}

}  // namespace pvconv
