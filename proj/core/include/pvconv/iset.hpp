#pragma once

#include <string>
#include <vector>

#include "pvconv/field.hpp"

namespace pvconv {

/// Digit data for a (beta, d)-Bernoulli convolution: the beta-digit alphabet
/// size b (b-1 < beta <= b), the convolution alphabet size d >= b, and the
/// support endpoint alpha_mu = (d-1)/(beta-1).
struct DigitParams {
  int b = 0;
  int d = 0;
  RationalCombination alpha_mu;

  static DigitParams make(const NumberField::Ptr& field, int d);
};

/// Labeled arrow of the digit relation: state h steps to state k reading
/// beta-digit i, with convolution digit j = i + beta*i_h - i_k.
struct RelationEdge {
  int h = 0, k = 0, i = 0, j = 0;
};

/// The finite translation set {i_0 = 0, i_1, ...} in discovery (BFS) order.
struct ISet {
  std::vector<AlgebraicNumber> elements;

  int size() const { return int(elements.size()); }
  /// Index of an element, or -1.
  int index_of(const AlgebraicNumber& x) const;
};

struct BuildCaps {
  int max_iters = 64;
  int max_size = 4096;
};

/// Fixed-point closure of {0} under y = beta*i_k + (i - j), -1 < y < alpha_mu.
/// Discovery is breadth-first with (k, i, j) lexicographic tie-breaking; the
/// returned edges enumerate every valid (h, i, k, j) exactly once.
/// Throws BudgetExceeded when a cap is hit before stabilization.
std::pair<ISet, std::vector<RelationEdge>> build_iset(
    const NumberField::Ptr& field, const DigitParams& params,
    const BuildCaps& caps = {});

/// Exact minimum of |i_h - i_k| over distinct pairs, as an element together
/// with its sign-normalized representative.
AlgebraicNumber min_gap(const ISet& iset);

/// Deterministic DOT rendering: one node per element (residue-polynomial
/// label), one "i/j"-labeled arrow per RelationEdge.
std::string export_automaton(const ISet& iset,
                             const std::vector<RelationEdge>& edges);

}  // namespace pvconv
