#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "pvconv/numeric.hpp"

namespace pvconv {

/// A real algebraic integer beta > 1 given by its monic minimal polynomial,
/// together with a rigorous rational bracket around beta and certified
/// enclosures of the moduli of its Galois conjugates.
///
/// Fields are immutable and shared; bracket refinement publishes narrower
/// snapshots without mutating anything a reader may already hold.
class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  using Ptr = std::shared_ptr<const NumberField>;

  /// `monic`: coefficients a_0..a_s of a_0 + a_1 x + ... + x^s (a_s = 1).
  /// `root_hint`: approximate location of the designated real root > 1.
  static Ptr make(std::vector<Int> monic, double root_hint);

  /// Parses a descriptor like "x^2-5x-3@5.5".
  static Ptr parse(const std::string& descriptor);

  int degree() const { return degree_; }
  const std::vector<Int>& min_poly() const { return coeffs_; }

  /// Current bracket around beta (initial width <= 1e-12), or a refined
  /// snapshot whose width is at most `max_width` when given.
  RatInterval beta_bracket() const;
  RatInterval beta_bracket(const Rat& max_width) const;
  double beta_approx() const;

  /// Enclosures of |beta_1|, ..., |beta_{s-1}|, the conjugate moduli.
  const std::vector<RatInterval>& conjugate_moduli() const {
    return conj_moduli_;
  }

  bool pv() const { return pv_; }

  /// True when irreducibility over Q was actually verified (degree <= 4);
  /// higher degrees are accepted as asserted by the caller.
  bool irreducibility_verified() const { return irreducible_verified_; }

  /// Certified lower bound on |A(beta)| over nonzero integer polynomials A
  /// with coefficients bounded by M in absolute value (rounded down).
  /// Throws NotPisot unless the field is PV.
  Rat garsia_bound(const Int& M) const;

  /// Canonical descriptor, e.g. "x^2-5x-3@5.5413".
  std::string descriptor() const;
  std::string poly_string() const;

  /// Exact sign of the minimal polynomial at a rational point.
  int sign_at(const Rat& x) const;

 private:
  NumberField() = default;

  std::vector<Int> coeffs_;  // a_0..a_s, a_s = 1
  int degree_ = 0;
  bool pv_ = false;
  bool irreducible_verified_ = false;
  std::vector<RatInterval> conj_moduli_;

  mutable std::mutex mu_;
  mutable std::shared_ptr<const RatInterval> bracket_;  // published snapshot

  friend class AlgebraicNumber;
};

/// An element of Z[beta], stored as the residue polynomial
/// c_0 + c_1 beta + ... + c_{s-1} beta^{s-1} with exact integer coefficients.
class AlgebraicNumber {
 public:
  AlgebraicNumber() = default;

  /// Reduces `coeffs` (any length) modulo the minimal polynomial.
  AlgebraicNumber(NumberField::Ptr field, std::vector<Int> coeffs);

  static AlgebraicNumber from_integer(NumberField::Ptr field, Int n);
  static AlgebraicNumber beta(NumberField::Ptr field);
  static AlgebraicNumber zero(NumberField::Ptr field);

  const NumberField::Ptr& field() const { return field_; }
  const std::vector<Int>& coeffs() const { return c_; }

  bool is_zero() const;
  /// Maximum absolute coefficient (the height used by Garsia's bound).
  Int height() const;

  AlgebraicNumber operator-() const;
  friend AlgebraicNumber operator+(const AlgebraicNumber&,
                                   const AlgebraicNumber&);
  friend AlgebraicNumber operator-(const AlgebraicNumber&,
                                   const AlgebraicNumber&);
  friend AlgebraicNumber operator*(const AlgebraicNumber&,
                                   const AlgebraicNumber&);
  AlgebraicNumber operator*(const Int& k) const;
  friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b);

  /// Interval evaluation of the residue polynomial over a beta bracket of
  /// width at most `beta_width` (field's current bracket when omitted).
  RatInterval enclosure() const;
  RatInterval enclosure(const Rat& beta_width) const;
  double approx() const;

  /// "b^2-3b+1"-style rendering of the residue polynomial.
  std::string poly_string(const char* var = "b") const;

 private:
  NumberField::Ptr field_;
  std::vector<Int> c_;  // size s, reduced
};

/// Exact sign: 0 iff the residue polynomial is zero, otherwise the enclosure
/// is refined until it excludes zero. Throws PrecisionExceeded past the cap.
int sign(const AlgebraicNumber& x);

/// sign(x - y); throws FieldMismatch across fields.
int compare(const AlgebraicNumber& x, const AlgebraicNumber& y);
int compare(const AlgebraicNumber& x, const Rat& r);

/// An element of Q(beta) as a quotient of two Z[beta] elements.
/// Construction normalizes the denominator to positive sign.
struct RationalCombination {
  AlgebraicNumber num, den;

  RationalCombination() = default;
  RationalCombination(AlgebraicNumber n, AlgebraicNumber d);
  static RationalCombination of(AlgebraicNumber n);  // denominator 1
  static RationalCombination of(NumberField::Ptr field, const Rat& r);

  const NumberField::Ptr& field() const { return num.field(); }
  bool is_zero() const { return num.is_zero(); }
  double approx() const;

  friend RationalCombination operator+(const RationalCombination&,
                                       const RationalCombination&);
  friend RationalCombination operator-(const RationalCombination&,
                                       const RationalCombination&);
  friend RationalCombination operator*(const RationalCombination&,
                                       const RationalCombination&);
  RationalCombination operator*(const AlgebraicNumber& a) const;
};

int sign(const RationalCombination& x);
int compare(const RationalCombination& x, const RationalCombination& y);
int compare(const RationalCombination& x, const AlgebraicNumber& y);

/// Canonical representative of num/den over the power basis 1..beta^{s-1}:
/// rational coefficients obtained by exact division in Q(beta).
std::vector<Rat> rational_coeffs(const RationalCombination& x);

/// "b^2-1/2*b+3"-style rendering of rational power-basis coefficients.
std::string poly_string(const std::vector<Rat>& coeffs, const char* var = "b");

/// beta^k reduced into Z[beta].
AlgebraicNumber beta_pow(const NumberField::Ptr& field, unsigned k);

/// The multinacci field of degree m >= 2: x^m = x^{m-1} + ... + x + 1.
NumberField::Ptr multinacci_field(int m);

/// The golden-ratio field x^2 - x - 1.
NumberField::Ptr golden_field();

}  // namespace pvconv
