#pragma once

#include <gmpxx.h>

#include <cstdio>
#include <string>
#include <utility>

#include "pvconv/error.hpp"

namespace pvconv {

using Int = mpz_class;
using Rat = mpq_class;

// Parses "7", "-3/4" or a plain decimal like "0.25" into an exact rational.
Rat parse_rational(const std::string& s);

std::string to_string(const Rat& x);

inline double to_double(const Rat& x) { return x.get_d(); }

// Fixed "%.12g" rendering used for every decimal the tool emits.
inline std::string fmt_g(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline Int pow_int(Int base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat pow_rat(const Rat& base, unsigned long e) {
  Rat r;
  mpz_pow_ui(r.get_num().get_mpz_t(), base.get_num().get_mpz_t(), e);
  mpz_pow_ui(r.get_den().get_mpz_t(), base.get_den().get_mpz_t(), e);
  return r;
}

// floor(sqrt(n)) for n >= 0.
inline Int isqrt_floor(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// Rational upper/lower bounds of sqrt(x), tight to about `bits` bits.
Rat sqrt_upper(const Rat& x, unsigned bits = 64);
Rat sqrt_lower(const Rat& x, unsigned bits = 64);

// Closed interval with exact rational endpoints.
struct RatInterval {
  Rat lo, hi;

  RatInterval() = default;
  RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw UsageError("RatInterval: lo > hi");
  }
  explicit RatInterval(const Rat& v) : lo(v), hi(v) {}

  Rat width() const { return hi - lo; }
  Rat mid() const { return (lo + hi) / 2; }
  bool contains(const Rat& v) const { return lo <= v && v <= hi; }
  bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
  bool intersects(const RatInterval& o) const {
    return !(hi < o.lo || o.hi < lo);
  }
  double mid_d() const { return to_double(mid()); }
};

RatInterval operator+(const RatInterval& a, const RatInterval& b);
RatInterval operator-(const RatInterval& a, const RatInterval& b);
RatInterval operator*(const RatInterval& a, const RatInterval& b);
RatInterval operator*(const Rat& c, const RatInterval& a);

}  // namespace pvconv
