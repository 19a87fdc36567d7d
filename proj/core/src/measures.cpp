#include "pvconv/measures.hpp"

#include <vector>

namespace pvconv {

namespace {

template <class T>
T pow_n(T base, int e) {
  T r(1);
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

template <class T>
void check_prob(const T& p) {
  if (!(p > T(0) && p < T(1)))
    throw UsageError("probability parameter must lie strictly in (0, 1)");
}

}  // namespace

template <class T>
MultinacciModel<T> MultinacciModel<T>::make(int m, T p) {
  if (m < 2) throw UsageError("multinacci model needs m >= 2");
  check_prob(p);
  MultinacciModel<T> out;
  out.m = m;
  out.p = p;
  out.q = T(1) - p;
  const T& q = out.q;
  out.alpha = pow_n(q, m - 1) / pow_n(p, m - 1);
  out.P.assign(m * (m - 1) + 1, Mat<T>(2, 2));

  // All entries are monomials in p, q; no divisions needed.
  Mat<T>& P0 = out.P[0];
  P0(0, 0) = pow_n(p, m);
  P0(1, 0) = P0(1, 1) = p * pow_n(q, m - 1);

  for (int j = 1; j < m; ++j) {
    Mat<T>& Pj = out.P[j];
    Pj(0, 0) = Pj(0, 1) = pow_n(p, m) * pow_n(q, j);
    Pj(1, 0) = Pj(1, 1) = p * pow_n(q, m - 1 + j);
  }

  Mat<T>& Pm = out.P[m];
  Pm(0, 0) = Pm(0, 1) = out.q * pow_n(p, m - 1);
  Pm(1, 1) = pow_n(q, m);

  for (int j = m + 1; j <= m * (m - 1); ++j) {
    int x = (m - 1) - (j - 1) / (m - 1);
    int y = (j - 1) % (m - 1);
    Mat<T>& Pj = out.P[j];
    Pj(0, 0) = Pj(0, 1) = pow_n(p, x + 1) * pow_n(q, y + 1);
  }

  out.R = {T(1) - pow_n(q, m - 1), pow_n(q, m - 1)};
  return out;
}

template struct MultinacciModel<Rat>;
template struct MultinacciModel<double>;

template <class T>
ErdosModel<T> ErdosModel<T>::make(T p) {
  check_prob(p);
  ErdosModel<T> out;
  out.p = p;
  out.q = T(1) - p;
  const T& q = out.q;

  out.P[0] = Mat<T>(2, 2);
  out.P[0](0, 0) = p * p;
  out.P[0](1, 0) = out.P[0](1, 1) = p * q;

  out.P[1] = Mat<T>(2, 2);
  out.P[1](0, 0) = out.P[1](0, 1) = p * p * q;
  out.P[1](1, 0) = out.P[1](1, 1) = p * q * q;

  out.P[2] = Mat<T>(2, 2);
  out.P[2](0, 0) = out.P[2](0, 1) = p * q;
  out.P[2](1, 1) = q * q;

  out.V[0] = {p, T(0)};
  out.V[1] = {p * q, p * q};
  out.V[2] = {T(0), q};

  T denom = T(1) - p * q;
  out.tail = {p / denom, q / denom};
  return out;
}

template struct ErdosModel<Rat>;
template struct ErdosModel<double>;

MultinacciExact MultinacciExact::make(int m, const Rat& p) {
  MultinacciExact mx;
  mx.model = MultinacciModel<Rat>::make(m, p);
  mx.field = multinacci_field(m);
  auto params = DigitParams::make(mx.field, 2);
  auto [iset, edges] = build_iset(mx.field, params);
  mx.iset = std::move(iset);
  mx.edges = std::move(edges);
  std::vector<Rat> probs{p, Rat(1) - p};
  mx.digit_family = build_matrices(mx.iset, mx.edges, probs, params.b);

  mx.word_family.provenance = "Mhat_j";
  for (int j = 0; j <= m * (m - 1); ++j) {
    auto w = multinacci_word(m, j);
    mx.word_family.mats.push_back(word_product(mx.digit_family, w));
  }

  // The support lies in [0, alpha_mu] with alpha_mu < 2, so the translates
  // by i_0 = 0 and i_1 = 1 carry the whole mass: V_0 + V_1 = 1 pins the
  // absolute normalization of the fixed vector.
  std::vector<Rat> L(mx.iset.size(), Rat(0));
  L[0] = L[1] = Rat(1);
  mx.V = fixed_vector_exact(mx.word_family.star(), L);
  mx.head = {mx.V[0], mx.V[2]};
  return mx;
}

Rat MultinacciExact::mu_unit(std::span<const int> w) const {
  std::vector<Rat> u{Rat(1), Rat(0)};
  for (int letter : w) {
    if (letter < 0 || letter >= model.alphabet())
      throw UsageError("word letter outside J");
    u = row_times(u, model.P[letter]);
  }
  return dot(u, head);
}

Mat<Rat> MultinacciExact::x_projector() const {
  Mat<Rat> X(2, iset.size());
  X(0, 0) = 1;
  X(1, 2) = 1;
  return X;
}

MuMuStarComparison compare_mu_mustar(const MultinacciExact& mx,
                                     std::span<const int> w) {
  MuMuStarComparison out;
  size_t k = 0;
  while (k < w.size() && w[k] == 0) ++k;
  if (k == w.size())
    throw DomainError(
        "mu/mu_star sandwich needs a word with a nonzero letter");
  out.leading_zeros = int(k);

  // Head-consistent evaluation keeps the ratio exact.
  std::vector<Rat> u0{Rat(1), Rat(0)}, u1{Rat(1), Rat(1)};
  for (int letter : w) {
    u0 = row_times(u0, mx.model.P[letter]);
    u1 = row_times(u1, mx.model.P[letter]);
  }
  Rat mu = dot(u0, mx.head);
  Rat mu_star = dot(u1, mx.head) / (mx.head[0] + mx.head[1]);
  if (sgn(mu_star) == 0) throw DomainError("mu_star vanishes on the word");
  out.ratio = mu / mu_star;

  Rat C = pow_rat(mx.model.p * mx.model.q, unsigned(mx.model.m));
  out.lower = pow_rat(C, unsigned(k + 1));
  out.upper = Rat(2);
  out.in_bounds = out.lower <= out.ratio && out.ratio <= out.upper;
  return out;
}

MeasureEnclosure brute_force_enclosure(const NumberField::Ptr& field, int d,
                                       const std::vector<Rat>& probs,
                                       const RationalCombination& a,
                                       const RationalCombination& b,
                                       int digits, std::size_t node_budget) {
  if (d < 2) throw UsageError("oracle needs d >= 2");
  if (int(probs.size()) != d)
    throw UsageError("oracle probability vector must have length d");
  Rat psum(0);
  for (const auto& pj : probs) {
    if (sgn(pj) < 0) throw UsageError("negative digit probability");
    psum += pj;
  }
  if (psum != 1) throw UsageError("digit probabilities must sum to 1");
  if (digits < 1) throw UsageError("oracle needs at least one digit");
  if (a.field() != field || b.field() != field)
    throw FieldMismatch("oracle endpoints must live in the oracle's field");

  auto beta = AlgebraicNumber::beta(field);
  auto bm1 = beta - AlgebraicNumber::from_integer(field, 1);
  auto dm1 = AlgebraicNumber::from_integer(field, d - 1);
  std::vector<AlgebraicNumber> bpow;
  bpow.reserve(digits + 1);
  bpow.push_back(AlgebraicNumber::from_integer(field, 1));
  for (int k = 1; k <= digits; ++k) bpow.push_back(bpow.back() * beta);

  // X_k = A beta^{-k}; attainable values fill [X_k, X_k + alpha_mu beta^{-k}].
  auto cmp_lower = [&](const AlgebraicNumber& A, int k,
                       const RationalCombination& c) {
    return sign(A * c.den - bpow[k] * c.num);
  };
  auto cmp_upper = [&](const AlgebraicNumber& A, int k,
                       const RationalCombination& c) {
    return sign((A * bm1 + dm1) * c.den - bpow[k] * c.num * bm1);
  };

  struct Node {
    AlgebraicNumber A;
    Rat mass;
    int k;
  };
  std::vector<Node> stack;
  stack.push_back({AlgebraicNumber::zero(field), Rat(1), 0});

  MeasureEnclosure out;
  out.digits_used = digits;
  Rat inside(0), straddle(0);
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    if (++out.nodes > node_budget)
      throw BudgetExceeded("oracle node budget exceeded");

    if (cmp_upper(node.A, node.k, a) < 0 || cmp_lower(node.A, node.k, b) > 0)
      continue;  // value interval entirely outside [a, b]
    if (cmp_lower(node.A, node.k, a) >= 0 &&
        cmp_upper(node.A, node.k, b) <= 0) {
      inside += node.mass;  // entirely inside
      continue;
    }
    if (node.k == digits) {
      straddle += node.mass;
      continue;
    }
    AlgebraicNumber shifted = node.A * beta;
    for (int digit = d - 1; digit >= 0; --digit) {
      if (sgn(probs[digit]) == 0) continue;
      stack.push_back({shifted + AlgebraicNumber::from_integer(field, digit),
                       node.mass * probs[digit], node.k + 1});
    }
  }
  out.lo = inside;
  out.hi = inside + straddle;
  return out;
}

}  // namespace pvconv
