#pragma once

#include <array>
#include <span>

#include "pvconv/betanet.hpp"
#include "pvconv/transmat.hpp"

namespace pvconv {

/// Generic matrix-product measure: value of a word is L . M_w . R.
template <class T>
struct MMeasure {
  MatrixFamily<T> family;
  std::vector<T> L, R;

  T value(std::span<const int> w) const {
    std::vector<T> u = L;
    for (int letter : w) {
      if (letter < 0 || letter >= family.size())
        throw UsageError("word letter outside the family alphabet");
      u = row_times(u, family.mats[letter]);
    }
    return dot(u, R);
  }
};

/// The 2x2 reduced family of the multinacci (beta, 2)-convolution:
/// mu_star of a word over J = {0..m(m-1)} is (1 1) P_w R.
template <class T>
struct MultinacciModel {
  int m = 0;
  T p, q, alpha;              // alpha = (q/p)^{m-1}
  std::vector<Mat<T>> P;      // indexed by J
  std::vector<T> R;           // (1 - q^{m-1}, q^{m-1})

  int alphabet() const { return m * (m - 1) + 1; }

  static MultinacciModel make(int m, T p);

  T mu_star(std::span<const int> w) const {
    std::vector<T> u{T(1), T(1)};
    for (int letter : w) {
      if (letter < 0 || letter >= alphabet())
        throw UsageError("word letter outside J");
      u = row_times(u, P[letter]);
    }
    return dot(u, R);
  }
};

/// Exact bundle for a multinacci base: the (m+1)-dimensional digit family,
/// the adapted-word family, the coordinate projector, and the absolute head
/// vector that evaluates mu itself on the unit-interval net.
struct MultinacciExact {
  MultinacciModel<Rat> model;
  NumberField::Ptr field;
  ISet iset;
  std::vector<RelationEdge> edges;
  MatrixFamily<Rat> digit_family;  // M_0, M_1
  MatrixFamily<Rat> word_family;   // Mhat_j = M_{w_j}, j in J
  std::vector<Rat> V;              // mu([0,1) + i_k), normalized V0 + V1 = 1
  std::vector<Rat> head;           // (V0, V2)

  static MultinacciExact make(int m, const Rat& p);

  /// mu of a basic interval of the unit net (first component of P_w (V0,V2)).
  Rat mu_unit(std::span<const int> w) const;
  Rat mu_star(std::span<const int> w) const { return model.mu_star(w); }

  /// The 2x(m+1) projector X selecting coordinates 0 and 2.
  Mat<Rat> x_projector() const;
};

struct MuMuStarComparison {
  Rat ratio;
  Rat lower;  // C^{k+1}, C = (pq)^m
  Rat upper;  // 2
  int leading_zeros = 0;
  bool in_bounds = false;
};

/// Ratio mu[w]/mu_star[w] for w = 0^k eta w' (eta != 0), with its proven
/// sandwich. Throws DomainError on all-zero words.
MuMuStarComparison compare_mu_mustar(const MultinacciExact& mx,
                                     std::span<const int> w);

/// The golden-base model on the scaled 3-fold net of [0, beta):
/// mu of eta.w is V_eta P_w (p,q)^T/(1-pq); mu_star of w is (1 1)P_w (p,q)^T.
template <class T>
struct ErdosModel {
  T p, q;
  std::array<Mat<T>, 3> P;
  std::array<std::vector<T>, 3> V;  // (p,0), (pq,pq), (0,q)
  std::vector<T> tail;              // (p,q)/(1-pq)

  static ErdosModel make(T p);

  T mu(std::span<const int> w) const {
    if (w.empty())
      throw DomainError("erdos mu needs a nonempty word; see total_mass()");
    std::vector<T> u = V[check_letter(w[0])];
    for (size_t i = 1; i < w.size(); ++i)
      u = row_times(u, P[check_letter(w[i])]);
    return dot(u, tail);
  }

  T mu_star(std::span<const int> w) const {
    std::vector<T> u{T(1), T(1)};
    for (int letter : w) u = row_times(u, P[check_letter(letter)]);
    std::vector<T> pq{p, q};
    return dot(u, pq);
  }

  T total_mass() const {
    T s(0);
    for (int eta = 0; eta < 3; ++eta) {
      std::array<int, 1> w{eta};
      s += mu(w);
    }
    return s;
  }

 private:
  static int check_letter(int j) {
    if (j < 0 || j > 2) throw UsageError("erdos word letter outside {0,1,2}");
    return j;
  }
};

/// Rigorous enclosure of mu([a, b]) by direct enumeration of digit prefixes.
/// Endpoints are treated as a closed interval; straddling prefixes widen
/// [lo, hi] and are never discarded.
struct MeasureEnclosure {
  Rat lo, hi;
  int digits_used = 0;
  std::size_t nodes = 0;

  bool contains(const Rat& v) const { return lo <= v && v <= hi; }
};

MeasureEnclosure brute_force_enclosure(const NumberField::Ptr& field, int d,
                                       const std::vector<Rat>& probs,
                                       const RationalCombination& a,
                                       const RationalCombination& b, int digits,
                                       std::size_t node_budget = 1u << 24);

}  // namespace pvconv
