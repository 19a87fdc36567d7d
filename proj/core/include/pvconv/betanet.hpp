#pragma once

#include <span>
#include <vector>

#include "pvconv/field.hpp"

namespace pvconv {

/// Greedy expansion 1 = eps_1/beta + ... + eps_T/beta^T with the remainder
/// tracked exactly in Z[beta]; finite_type is set when it reaches 0 and the
/// lexicographic admissibility conditions hold.
struct BetaExpansionOfOne {
  std::vector<int> digits;  // eps_1..eps_T
  bool finite_type = false;
};

BetaExpansionOfOne beta_expansion_of_one(const NumberField::Ptr& field,
                                         int cap = 1000);

/// Orientation-preserving affine contraction x -> x/beta^pow + offset.
struct AffineContraction {
  int pow = 0;
  RationalCombination offset;

  AffineContraction compose(const NumberField::Ptr& field,
                            const AffineContraction& inner) const;
  RationalCombination apply(const RationalCombination& x) const;
};

/// System of affine contractions whose images partition the base interval
/// [base_lo, base_lo + base_len); construction verifies the partition (and,
/// for word-built systems, the suffix condition R_w[0,1] within [0,1])
/// exactly in Q(beta).
struct AdaptedSystem {
  NumberField::Ptr field;
  std::vector<std::vector<int>> words;  // over {0..b-1}; empty for map-built
  std::vector<AffineContraction> maps;
  RationalCombination base_lo;
  RationalCombination base_len;

  int alphabet() const { return int(maps.size()); }
  double letter_ratio_log(int j) const;  // log beta^{-pow_j}
};

/// Basic interval [left, left + length) of a word over the net alphabet.
struct BasicInterval {
  std::vector<int> word;
  RationalCombination left;
  RationalCombination length;
};

/// The contraction R_w of a word over the beta-digits: scale beta^{-|w|},
/// offset sum digit_k / beta^{k+1}.
AffineContraction word_contraction(const NumberField::Ptr& field,
                                   std::span<const int> bword);

/// Generic finite-type construction (w_j = eps_1..eps_{k-1} eps); integer
/// beta routes to the plain base-beta digit net.
AdaptedSystem finite_type_adapted_system(const NumberField::Ptr& field);
AdaptedSystem finite_type_adapted_system(const NumberField::Ptr& field,
                                         const BetaExpansionOfOne& expansion);

/// The m(m-1)+1 word system 0^m, 0^x 1^y 1 0 with the division-with-remainder
/// labeling of the pairs (x, y).
AdaptedSystem multinacci_adapted_system(int m);
AdaptedSystem multinacci_adapted_system(const NumberField::Ptr& field, int m);

/// Multinacci word w_j over {0,1} for a given j in {0..m(m-1)}.
std::vector<int> multinacci_word(int m, int j);

/// The golden-ratio 3-map system on [0, beta):
/// x/beta^2, x/beta^3 + 1/beta, x/beta^2 + 1.
AdaptedSystem scaled_erdos_net();
AdaptedSystem scaled_erdos_net(const NumberField::Ptr& golden);

/// Exact basic interval of a word over the net alphabet.
BasicInterval interval_of_word(const AdaptedSystem& system,
                               std::span<const int> jword);

}  // namespace pvconv
