#include "pvconv/iset.hpp"

#include <sstream>

namespace pvconv {

DigitParams DigitParams::make(const NumberField::Ptr& field, int d) {
  DigitParams p;
  // b is the integer with b-1 < beta <= b.
  int b = 2;
  while (compare(AlgebraicNumber::beta(field), Rat(b)) > 0) ++b;
  p.b = b;
  p.d = d;
  if (d < b) throw UsageError("need b <= d for the digit alphabets");
  auto beta = AlgebraicNumber::beta(field);
  auto one = AlgebraicNumber::from_integer(field, 1);
  p.alpha_mu = RationalCombination(
      AlgebraicNumber::from_integer(field, d - 1), beta - one);
  return p;
}

int ISet::index_of(const AlgebraicNumber& x) const {
  for (size_t k = 0; k < elements.size(); ++k)
    if (elements[k] == x) return int(k);
  return -1;
}

namespace {

// j = i + beta*i_h - i_k lies in D iff the reduced residue polynomial is a
// constant in [0, d): representation exactness makes this a syntactic test.
int digit_of(const AlgebraicNumber& x, int d) {
  const auto& c = x.coeffs();
  for (size_t t = 1; t < c.size(); ++t)
    if (sgn(c[t]) != 0) return -1;
  if (sgn(c[0]) < 0 || c[0] >= d) return -1;
  return int(c[0].get_si());
}

}  // namespace

std::pair<ISet, std::vector<RelationEdge>> build_iset(
    const NumberField::Ptr& field, const DigitParams& params,
    const BuildCaps& caps) {
  ISet iset;
  iset.elements.push_back(AlgebraicNumber::zero(field));
  auto beta = AlgebraicNumber::beta(field);
  auto minus_one = AlgebraicNumber::from_integer(field, -1);

  // Level-by-level closure; stabilization = an iteration that adds nothing.
  size_t level_begin = 0;
  for (int iter = 0;; ++iter) {
    if (iter >= caps.max_iters)
      throw BudgetExceeded("iset iteration cap exceeded before stabilization");
    size_t level_end = iset.elements.size();
    if (level_begin == level_end) break;
    for (size_t h = level_begin; h < level_end; ++h) {
      AlgebraicNumber base = beta * iset.elements[h];
      for (int i = 0; i < params.b; ++i) {
        for (int j = 0; j < params.d; ++j) {
          AlgebraicNumber y =
              base + AlgebraicNumber::from_integer(field, i - j);
          if (compare(y, minus_one) <= 0) continue;
          if (compare(params.alpha_mu, y) <= 0) continue;
          if (iset.index_of(y) < 0) {
            if (iset.size() >= caps.max_size)
              throw BudgetExceeded(
                  "iset size cap exceeded (non-PV base or caps too small?)");
            iset.elements.push_back(y);
          }
        }
      }
    }
    level_begin = level_end;
  }

  // Second pass: every (h, i, k) whose digit j = i + beta*i_h - i_k lands in
  // D contributes exactly one edge.
  std::vector<RelationEdge> edges;
  for (int h = 0; h < iset.size(); ++h) {
    AlgebraicNumber base = beta * iset.elements[h];
    for (int i = 0; i < params.b; ++i) {
      AlgebraicNumber shifted = base + AlgebraicNumber::from_integer(field, i);
      for (int k = 0; k < iset.size(); ++k) {
        int j = digit_of(shifted - iset.elements[k], params.d);
        if (j >= 0) edges.push_back({h, k, i, j});
      }
    }
  }
  return {std::move(iset), std::move(edges)};
}

AlgebraicNumber min_gap(const ISet& iset) {
  if (iset.size() < 2) throw UsageError("min_gap needs at least two elements");
  AlgebraicNumber best = iset.elements[1] - iset.elements[0];
  if (sign(best) < 0) best = -best;
  for (int h = 0; h < iset.size(); ++h)
    for (int k = h + 1; k < iset.size(); ++k) {
      AlgebraicNumber g = iset.elements[h] - iset.elements[k];
      if (sign(g) < 0) g = -g;
      if (compare(g, best) < 0) best = g;
    }
  return best;
}

std::string export_automaton(const ISet& iset,
                             const std::vector<RelationEdge>& edges) {
  if (iset.size() == 0) throw UsageError("empty iset");
  std::ostringstream os;
  os << "digraph iset {\n";
  os << "  rankdir=LR;\n";
  for (int k = 0; k < iset.size(); ++k)
    os << "  n" << k << " [label=\"" << iset.elements[k].poly_string()
       << "\"];\n";
  for (const auto& e : edges)
    os << "  n" << e.h << " -> n" << e.k << " [label=\"" << e.i << "/" << e.j
       << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace pvconv
