#include "pvconv/field.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <map>
#include <sstream>

namespace pvconv {

// ---------------------------------------------------------------------------
// numeric.hpp helpers
// ---------------------------------------------------------------------------

Rat parse_rational(const std::string& s) {
  if (s.empty()) throw UsageError("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      Rat r(s);
      r.canonicalize();
      if (sgn(r.get_den()) == 0) throw UsageError("zero denominator: " + s);
      return r;
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) {
      Rat r(s);
      r.canonicalize();
      return r;
    }
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
      throw UsageError("bad rational literal: " + s);
    Rat r(Int(digits), pow_int(10, frac_len));
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw UsageError("bad rational literal: " + s);
  }
}

std::string to_string(const Rat& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

Rat sqrt_upper(const Rat& x, unsigned bits) {
  if (sgn(x) < 0) throw DomainError("sqrt of negative rational");
  if (sgn(x) == 0) return Rat(0);
  // sqrt(n/d) = sqrt(n*d)/d; scale by 4^bits for the requested precision.
  Int t = x.get_num() * x.get_den();
  Int scaled = t << (2 * bits);
  Int r = isqrt_floor(scaled) + 1;
  Rat out(r, x.get_den() << bits);
  out.canonicalize();
  return out;
}

Rat sqrt_lower(const Rat& x, unsigned bits) {
  if (sgn(x) < 0) throw DomainError("sqrt of negative rational");
  if (sgn(x) == 0) return Rat(0);
  Int t = x.get_num() * x.get_den();
  Int scaled = t << (2 * bits);
  Int r = isqrt_floor(scaled);
  Rat out(r, x.get_den() << bits);
  out.canonicalize();
  return out;
}

RatInterval operator+(const RatInterval& a, const RatInterval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

RatInterval operator-(const RatInterval& a, const RatInterval& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}

RatInterval operator*(const RatInterval& a, const RatInterval& b) {
  Rat c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
  return {std::min(std::min(c1, c2), std::min(c3, c4)),
          std::max(std::max(c1, c2), std::max(c3, c4))};
}

RatInterval operator*(const Rat& c, const RatInterval& a) {
  if (sgn(c) >= 0) return {c * a.lo, c * a.hi};
  return {c * a.hi, c * a.lo};
}

// ---------------------------------------------------------------------------
// polynomial helpers
// ---------------------------------------------------------------------------

namespace {

Rat eval_poly(const std::vector<Int>& a, const Rat& x) {
  Rat acc(0);
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + Rat(*it);
  return acc;
}

std::complex<double> eval_poly(const std::vector<Int>& a,
                               std::complex<double> z) {
  std::complex<double> acc(0.0, 0.0);
  for (auto it = a.rbegin(); it != a.rend(); ++it)
    acc = acc * z + std::complex<double>(it->get_d(), 0.0);
  return acc;
}

// Exact complex-rational Horner: returns (re, im) of P(x + iy).
std::pair<Rat, Rat> eval_poly_cq(const std::vector<Int>& a, const Rat& x,
                                 const Rat& y) {
  Rat re(0), im(0);
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    Rat nre = re * x - im * y + Rat(*it);
    Rat nim = re * y + im * x;
    re = nre;
    im = nim;
  }
  return {re, im};
}

std::vector<Int> derivative(const std::vector<Int>& a) {
  std::vector<Int> d;
  for (size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * Int(i));
  if (d.empty()) d.push_back(Int(0));
  return d;
}

// Reduce modulo the monic minimal polynomial a_0..a_s (a_s = 1) in place.
void reduce_mod(std::vector<Int>& c, const std::vector<Int>& a) {
  size_t s = a.size() - 1;
  while (c.size() > s) {
    Int t = std::move(c.back());
    c.pop_back();
    if (t != 0) {
      size_t off = c.size() - s;
      for (size_t i = 0; i < s; ++i) c[off + i] -= t * a[i];
    }
  }
  c.resize(s, Int(0));
}

std::vector<std::complex<double>> durand_kerner(const std::vector<Int>& a) {
  int s = int(a.size()) - 1;
  double radius = 1.0;
  for (int i = 0; i < s; ++i)
    radius = std::max(radius, 1.0 + std::abs(a[i].get_d()));
  std::vector<std::complex<double>> z(s);
  for (int k = 0; k < s; ++k) {
    double t = 2.0 * M_PI * k / s + 0.35;
    z[k] = 0.7 * radius * std::complex<double>(std::cos(t), std::sin(t));
  }
  for (int iter = 0; iter < 800; ++iter) {
    double step = 0.0;
    for (int k = 0; k < s; ++k) {
      std::complex<double> den(1.0, 0.0);
      for (int j = 0; j < s; ++j)
        if (j != k) den *= z[k] - z[j];
      if (den == std::complex<double>(0.0, 0.0)) {
        z[k] += std::complex<double>(1e-3, 1e-3);
        continue;
      }
      std::complex<double> d = eval_poly(a, z[k]) / den;
      z[k] -= d;
      step = std::max(step, std::abs(d));
    }
    if (step < 1e-15 * radius) break;
  }
  return z;
}

struct CertifiedRoot {
  Rat re, im, radius;
  Rat modulus_lo, modulus_hi;
};

// Disk of radius s*|P(z)/P'(z)| around z contains at least one root of P;
// disjointness over all s estimates then pins exactly one root per disk.
std::vector<CertifiedRoot> certify_roots(const std::vector<Int>& a) {
  int s = int(a.size()) - 1;
  auto deriv = derivative(a);
  auto zs = durand_kerner(a);
  std::vector<CertifiedRoot> roots;
  for (auto& z : zs) {
    CertifiedRoot cr;
    cr.re = Rat(z.real());
    cr.im = Rat(z.imag());
    auto [pr, pi] = eval_poly_cq(a, cr.re, cr.im);
    auto [dr, di] = eval_poly_cq(deriv, cr.re, cr.im);
    Rat n2 = pr * pr + pi * pi;
    Rat d2 = dr * dr + di * di;
    if (sgn(d2) == 0)
      throw Error("root certification failed: P' vanishes at an estimate");
    cr.radius = Rat(s) * sqrt_upper(n2 / d2, 80);
    Rat m2 = cr.re * cr.re + cr.im * cr.im;
    Rat mlo = sqrt_lower(m2, 80) - cr.radius;
    if (sgn(mlo) < 0) mlo = 0;
    cr.modulus_lo = mlo;
    cr.modulus_hi = sqrt_upper(m2, 80) + cr.radius;
    roots.push_back(std::move(cr));
  }
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j < roots.size(); ++j) {
      Rat dx = roots[i].re - roots[j].re;
      Rat dy = roots[i].im - roots[j].im;
      Rat rr = roots[i].radius + roots[j].radius;
      if (dx * dx + dy * dy <= rr * rr)
        throw Error(
            "root certification failed: enclosing disks overlap "
            "(clustered or repeated roots)");
    }
  return roots;
}

// Integer roots of a monic integer polynomial must divide a_0.
bool has_integer_root(const std::vector<Int>& a) {
  const Int& a0 = a[0];
  if (sgn(a0) == 0) return true;  // root 0
  Int bound(1);
  for (size_t i = 0; i + 1 < a.size(); ++i) {
    Int c = abs(a[i]);
    if (c > bound) bound = c;
  }
  bound += 1;
  Int abs0 = abs(a0);
  // Trial-divide |a_0|; give up on huge constants (callers at that scale
  // assert irreducibility themselves).
  if (abs0 > 1000000000) return false;
  for (Int d(1); d * d <= abs0; ++d) {
    if (abs0 % d != 0) continue;
    Int cands[2] = {d, Int(abs0 / d)};
    for (const Int& cand : cands) {
      if (cand > bound) continue;
      for (int sign_ : {1, -1}) {
        Rat v = eval_poly(a, Rat(Int(sign_ * cand)));
        if (sgn(v) == 0) return true;
      }
    }
  }
  return false;
}

// Monic integer quartic splitting into two monic integer quadratics.
bool quartic_splits(const std::vector<Int>& a) {
  // x^4 + a3 x^3 + a2 x^2 + a1 x + a0 = (x^2+px+q)(x^2+rx+s)
  const Int &a0 = a[0], &a1 = a[1], &a2 = a[2], &a3 = a[3];
  if (sgn(a0) == 0) return true;
  Int abs0 = abs(a0);
  if (abs0 > 1000000000) return false;
  std::vector<Int> divs;
  for (Int d(1); d * d <= abs0; ++d)
    if (abs0 % d == 0) {
      divs.push_back(d);
      divs.push_back(abs0 / d);
    }
  for (const Int& dq : divs)
    for (int sq : {1, -1}) {
      Int q = sq * dq;
      if (q == 0 || a0 % q != 0) continue;
      Int s = a0 / q;
      // p + r = a3, pr = a2 - q - s, ps + qr = a1
      Int pr = a2 - q - s;
      Int disc = a3 * a3 - 4 * pr;
      if (sgn(disc) < 0) continue;
      Int rt = isqrt_floor(disc);
      if (rt * rt != disc) continue;
      for (int pm : {1, -1}) {
        Int two_p = a3 + pm * rt;
        if (two_p % 2 != 0) continue;
        Int p = two_p / 2, r = a3 - p;
        if (p * s + q * r == a1) return true;
      }
    }
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// NumberField
// ---------------------------------------------------------------------------

int NumberField::sign_at(const Rat& x) const { return sgn(eval_poly(coeffs_, x)); }

NumberField::Ptr NumberField::make(std::vector<Int> monic, double root_hint) {
  if (monic.size() < 2) throw UsageError("polynomial must have degree >= 1");
  if (monic.back() != 1) throw UsageError("polynomial must be monic");
  auto f = std::shared_ptr<NumberField>(new NumberField());
  f->coeffs_ = std::move(monic);
  f->degree_ = int(f->coeffs_.size()) - 1;
  const int s = f->degree_;

  if (s == 1) {
    Int beta = -f->coeffs_[0];
    if (beta <= 1) throw Error("no real root > 1");
    f->irreducible_verified_ = true;
    f->pv_ = true;  // integer > 1: no conjugates
    f->bracket_ = std::make_shared<RatInterval>(Rat(beta));
    return f;
  }

  if (has_integer_root(f->coeffs_))
    throw UsageError("polynomial has a rational root (reducible)");
  if (s <= 3) {
    f->irreducible_verified_ = true;
  } else if (s == 4) {
    if (quartic_splits(f->coeffs_))
      throw UsageError("quartic splits into integer quadratics (reducible)");
    f->irreducible_verified_ = true;
  }
  // degree >= 5: irreducibility asserted by the caller, flag stays false

  auto roots = certify_roots(f->coeffs_);

  // Designate the certified real root > 1 nearest the hint.
  int best = -1;
  double best_dist = 0.0;
  std::vector<std::pair<Rat, Rat>> brackets(roots.size());
  for (size_t k = 0; k < roots.size(); ++k) {
    const auto& r = roots[k];
    if (abs(r.im) > r.radius) continue;  // disk misses the real axis
    Rat pad = r.radius + Rat(1, Int(1) << 40);
    Rat lo = r.re - pad, hi = r.re + pad;
    if (f->sign_at(lo) * f->sign_at(hi) >= 0) continue;
    if (hi <= 1) continue;
    brackets[k] = {lo, hi};
    double dist = std::abs(r.re.get_d() - root_hint);
    if (best < 0 || dist < best_dist) {
      best = int(k);
      best_dist = dist;
    }
  }
  if (best < 0) throw Error("no real root > 1 near the hint");

  RatInterval br(brackets[best].first, brackets[best].second);
  int sign_lo = f->sign_at(br.lo);
  Rat target(1, pow_int(10, 12));
  while (br.width() > target) {
    Rat mid = br.mid();
    int sm = f->sign_at(mid);
    if (sm == 0) {
      br = RatInterval(mid);
      break;
    }
    if (sm == sign_lo)
      br.lo = mid;
    else
      br.hi = mid;
  }
  if (!(br.lo > 1)) throw Error("designated root does not exceed 1");
  f->bracket_ = std::make_shared<RatInterval>(br);

  for (size_t k = 0; k < roots.size(); ++k) {
    if (int(k) == best) continue;
    f->conj_moduli_.emplace_back(roots[k].modulus_lo, roots[k].modulus_hi);
  }
  f->pv_ = true;
  for (const auto& m : f->conj_moduli_)
    if (!(m.hi < 1)) f->pv_ = false;
  return f;
}

RatInterval NumberField::beta_bracket() const {
  std::lock_guard<std::mutex> lock(mu_);
  return *bracket_;
}

RatInterval NumberField::beta_bracket(const Rat& max_width) const {
  RatInterval br = beta_bracket();
  if (br.width() <= max_width) return br;
  int sign_lo = sign_at(br.lo);
  while (br.width() > max_width) {
    Rat mid = br.mid();
    int sm = sign_at(mid);
    if (sm == 0) {
      br = RatInterval(mid);
      break;
    }
    if (sm == sign_lo)
      br.lo = mid;
    else
      br.hi = mid;
  }
  std::lock_guard<std::mutex> lock(mu_);
  if (br.width() < bracket_->width())
    bracket_ = std::make_shared<RatInterval>(br);
  return br;
}

double NumberField::beta_approx() const { return beta_bracket().mid_d(); }

Rat NumberField::garsia_bound(const Int& M) const {
  if (!pv_) throw NotPisot("Garsia bound requires a PV field");
  if (M < 1) throw UsageError("Garsia bound requires M >= 1");
  Rat prod(1);
  for (const auto& m : conj_moduli_) prod *= (1 - m.hi);
  Rat denom(pow_int(M, unsigned(degree_ - 1)));
  return prod / denom;
}

std::string NumberField::poly_string() const {
  std::ostringstream os;
  for (int k = degree_; k >= 0; --k) {
    Int c = coeffs_[k];
    if (sgn(c) == 0) continue;
    bool lead = os.tellp() == 0;
    if (sgn(c) > 0 && !lead) os << "+";
    if (k == 0) {
      os << c;
    } else {
      if (c == -1)
        os << "-";
      else if (c != 1)
        os << c;
      os << "x";
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

std::string NumberField::descriptor() const {
  std::ostringstream os;
  os << poly_string() << "@" << fmt_g(beta_approx());
  return os.str();
}

NumberField::Ptr NumberField::parse(const std::string& descriptor) {
  auto at = descriptor.find('@');
  if (at == std::string::npos)
    throw UsageError("field descriptor needs '@hint': " + descriptor);
  std::string poly = descriptor.substr(0, at);
  double hint = 0.0;
  try {
    hint = std::stod(descriptor.substr(at + 1));
  } catch (...) {
    throw UsageError("bad root hint in descriptor: " + descriptor);
  }

  std::map<int, Int> terms;
  size_t i = 0;
  const size_t n = poly.size();
  while (i < n) {
    int sig = 1;
    while (i < n && (poly[i] == '+' || poly[i] == '-' || poly[i] == ' ')) {
      if (poly[i] == '-') sig = -sig;
      ++i;
    }
    if (i >= n) break;
    std::string digits;
    while (i < n && std::isdigit(static_cast<unsigned char>(poly[i])))
      digits += poly[i++];
    if (i < n && poly[i] == '*') ++i;
    Int coef = digits.empty() ? Int(1) : Int(digits);
    int power = 0;
    if (i < n && (poly[i] == 'x' || poly[i] == 'X')) {
      ++i;
      power = 1;
      if (i < n && poly[i] == '^') {
        ++i;
        std::string p;
        while (i < n && std::isdigit(static_cast<unsigned char>(poly[i])))
          p += poly[i++];
        if (p.empty()) throw UsageError("bad exponent in: " + descriptor);
        power = std::stoi(p);
      }
    } else if (digits.empty()) {
      throw UsageError("could not parse polynomial: " + descriptor);
    }
    terms[power] += sig * coef;
  }
  if (terms.empty()) throw UsageError("empty polynomial: " + descriptor);
  int deg = terms.rbegin()->first;
  std::vector<Int> coeffs(deg + 1, Int(0));
  for (auto& [k, c] : terms) coeffs[k] = c;
  return make(std::move(coeffs), hint);
}

NumberField::Ptr multinacci_field(int m) {
  if (m < 2) throw UsageError("multinacci degree must be >= 2");
  std::vector<Int> a(m + 1, Int(-1));
  a[m] = 1;
  return NumberField::make(std::move(a), 1.95);
}

NumberField::Ptr golden_field() { return multinacci_field(2); }

// ---------------------------------------------------------------------------
// AlgebraicNumber
// ---------------------------------------------------------------------------

AlgebraicNumber::AlgebraicNumber(NumberField::Ptr field, std::vector<Int> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
  if (!field_) throw UsageError("AlgebraicNumber needs a field");
  reduce_mod(c_, field_->min_poly());
}

AlgebraicNumber AlgebraicNumber::from_integer(NumberField::Ptr field, Int n) {
  return AlgebraicNumber(std::move(field), {std::move(n)});
}

AlgebraicNumber AlgebraicNumber::beta(NumberField::Ptr field) {
  return AlgebraicNumber(std::move(field), {Int(0), Int(1)});
}

AlgebraicNumber AlgebraicNumber::zero(NumberField::Ptr field) {
  return AlgebraicNumber(std::move(field), {});
}

bool AlgebraicNumber::is_zero() const {
  for (const auto& c : c_)
    if (sgn(c) != 0) return false;
  return true;
}

Int AlgebraicNumber::height() const {
  Int h(0);
  for (const auto& c : c_) {
    Int a = abs(c);
    if (a > h) h = a;
  }
  return h;
}

static void check_same_field(const AlgebraicNumber& a,
                             const AlgebraicNumber& b) {
  if (a.field() != b.field())
    throw FieldMismatch("operands belong to different number fields");
}

AlgebraicNumber AlgebraicNumber::operator-() const {
  std::vector<Int> c(c_);
  for (auto& x : c) x = -x;
  return AlgebraicNumber(field_, std::move(c));
}

AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  check_same_field(a, b);
  std::vector<Int> c(a.c_);
  for (size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
  return AlgebraicNumber(a.field_, std::move(c));
}

AlgebraicNumber operator-(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  check_same_field(a, b);
  std::vector<Int> c(a.c_);
  for (size_t i = 0; i < c.size(); ++i) c[i] -= b.c_[i];
  return AlgebraicNumber(a.field_, std::move(c));
}

AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  check_same_field(a, b);
  size_t s = a.c_.size();
  std::vector<Int> c(2 * s - 1, Int(0));
  for (size_t i = 0; i < s; ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (size_t j = 0; j < s; ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return AlgebraicNumber(a.field_, std::move(c));
}

AlgebraicNumber AlgebraicNumber::operator*(const Int& k) const {
  std::vector<Int> c(c_);
  for (auto& x : c) x *= k;
  return AlgebraicNumber(field_, std::move(c));
}

bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  check_same_field(a, b);
  return a.c_ == b.c_;
}

RatInterval AlgebraicNumber::enclosure() const {
  return enclosure(field_->beta_bracket().width());
}

RatInterval AlgebraicNumber::enclosure(const Rat& beta_width) const {
  if (field_->degree() == 1) return RatInterval(Rat(c_[0]));
  RatInterval b = field_->beta_bracket(beta_width);
  RatInterval acc(Rat(c_.back()));
  for (auto it = c_.rbegin() + 1; it != c_.rend(); ++it)
    acc = acc * b + RatInterval(Rat(*it));
  return acc;
}

double AlgebraicNumber::approx() const { return enclosure().mid_d(); }

std::string AlgebraicNumber::poly_string(const char* var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  for (int k = int(c_.size()) - 1; k >= 0; --k) {
    const Int& c = c_[k];
    if (sgn(c) == 0) continue;
    bool lead = os.tellp() == 0;
    if (sgn(c) > 0 && !lead) os << "+";
    if (k == 0) {
      os << c;
    } else {
      if (c == -1)
        os << "-";
      else if (c != 1)
        os << c;
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

int sign(const AlgebraicNumber& x) {
  if (x.is_zero()) return 0;
  const auto& field = *x.field();
  if (field.degree() == 1) return sgn(x.coeffs()[0]);

  Rat width = field.beta_bracket().width();
  if (sgn(width) == 0) width = Rat(1, pow_int(10, 12));
  for (int round = 0; round < 220; ++round) {
    RatInterval e = x.enclosure(width);
    if (!e.contains_zero()) return sgn(e.lo) > 0 ? 1 : -1;
    width /= 16;
  }
  throw PrecisionExceeded(
      "sign refinement exceeded its precision cap (suspected non-PV input)");
}

int compare(const AlgebraicNumber& x, const AlgebraicNumber& y) {
  return sign(x - y);
}

int compare(const AlgebraicNumber& x, const Rat& r) {
  // x - r has denominator den(r); clear it.
  AlgebraicNumber scaled = x * r.get_den();
  AlgebraicNumber c =
      scaled - AlgebraicNumber::from_integer(x.field(), r.get_num());
  return sign(c);
}

AlgebraicNumber beta_pow(const NumberField::Ptr& field, unsigned k) {
  std::vector<Int> c(k + 1, Int(0));
  c[k] = 1;
  return AlgebraicNumber(field, std::move(c));
}

// ---------------------------------------------------------------------------
// RationalCombination
// ---------------------------------------------------------------------------

RationalCombination::RationalCombination(AlgebraicNumber n, AlgebraicNumber d)
    : num(std::move(n)), den(std::move(d)) {
  check_same_field(num, den);
  int s = sign(den);
  if (s == 0) throw DomainError("RationalCombination: zero denominator");
  if (s < 0) {
    num = -num;
    den = -den;
  }
}

RationalCombination RationalCombination::of(AlgebraicNumber n) {
  auto field = n.field();
  return RationalCombination(std::move(n),
                             AlgebraicNumber::from_integer(field, 1));
}

RationalCombination RationalCombination::of(NumberField::Ptr field,
                                            const Rat& r) {
  AlgebraicNumber num = AlgebraicNumber::from_integer(field, r.get_num());
  AlgebraicNumber den =
      AlgebraicNumber::from_integer(std::move(field), r.get_den());
  return RationalCombination(std::move(num), std::move(den));
}

double RationalCombination::approx() const {
  return num.approx() / den.approx();
}

RationalCombination operator+(const RationalCombination& a,
                              const RationalCombination& b) {
  return RationalCombination(a.num * b.den + b.num * a.den, a.den * b.den);
}

RationalCombination operator-(const RationalCombination& a,
                              const RationalCombination& b) {
  return RationalCombination(a.num * b.den - b.num * a.den, a.den * b.den);
}

RationalCombination operator*(const RationalCombination& a,
                              const RationalCombination& b) {
  return RationalCombination(a.num * b.num, a.den * b.den);
}

RationalCombination RationalCombination::operator*(
    const AlgebraicNumber& a) const {
  return RationalCombination(num * a, den);
}

std::vector<Rat> rational_coeffs(const RationalCombination& x) {
  const auto& field = x.field();
  const int s = field->degree();
  // Solve den * (sum_k c_k beta^k) = num as a rational linear system: the
  // k-th column holds the residue coefficients of den * beta^k.
  std::vector<std::vector<Rat>> m(s, std::vector<Rat>(s + 1, Rat(0)));
  for (int k = 0; k < s; ++k) {
    AlgebraicNumber col = x.den * beta_pow(field, unsigned(k));
    for (int i = 0; i < s; ++i) m[i][k] = Rat(col.coeffs()[i]);
  }
  for (int i = 0; i < s; ++i) m[i][s] = Rat(x.num.coeffs()[i]);

  for (int col = 0, row = 0; col < s && row < s; ++col, ++row) {
    int piv = -1;
    for (int r = row; r < s; ++r)
      if (sgn(m[r][col]) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw DomainError("singular division in Q(beta)");
    std::swap(m[piv], m[row]);
    Rat inv = m[row][col];
    for (int j = col; j <= s; ++j) m[row][j] /= inv;
    for (int r = 0; r < s; ++r) {
      if (r == row || sgn(m[r][col]) == 0) continue;
      Rat f = m[r][col];
      for (int j = col; j <= s; ++j) m[r][j] -= f * m[row][j];
    }
  }
  std::vector<Rat> out(s);
  for (int i = 0; i < s; ++i) out[i] = m[i][s];
  return out;
}

std::string poly_string(const std::vector<Rat>& coeffs, const char* var) {
  std::ostringstream os;
  for (int k = int(coeffs.size()) - 1; k >= 0; --k) {
    const Rat& c = coeffs[k];
    if (sgn(c) == 0) continue;
    bool lead = os.tellp() == 0;
    if (sgn(c) > 0 && !lead) os << "+";
    if (k == 0) {
      os << c;
    } else {
      if (c == -1)
        os << "-";
      else if (c != 1)
        os << c << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  if (os.tellp() == 0) return "0";
  return os.str();
}

int sign(const RationalCombination& x) { return sign(x.num); }

int compare(const RationalCombination& x, const RationalCombination& y) {
  return sign(x.num * y.den - y.num * x.den);
}

int compare(const RationalCombination& x, const AlgebraicNumber& y) {
  return sign(x.num - y * x.den);
}

}  // namespace pvconv
