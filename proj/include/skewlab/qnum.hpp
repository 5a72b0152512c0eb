#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "skewlab/errors.hpp"

namespace skewlab {

using BigInt = mpz_class;
using BigRat = mpq_class;

// closed rational hull; "open" endpoints are a caller-side convention
struct RatInterval {
  BigRat lo, hi;  // lo <= hi
  BigRat width() const { return hi - lo; }
  BigRat mid() const { return (lo + hi) / 2; }
};

BigRat rat_from_double(double x);  // exact
double rat_to_double(const BigRat& q);

// reduce to [0,1)
BigRat mod1(const BigRat& x);
// reduce to [-1/2, 1/2)
BigRat signed_mod1(const BigRat& x);
// distance to the nearest integer, in [0, 1/2]
BigRat circle_norm_exact(const BigRat& x);
double circle_norm(double theta);

// frac(n * c) computed exactly for a double c (c is a dyadic rational), in [0,1)
double frac_bigint_times_double(const BigInt& n, double c);
// same, reduced to [-1/2, 1/2)
double signed_frac_bigint_times_double(const BigInt& n, double c);

// ---- certified transcendental comparisons (MPFR behind the scenes) ----

// enclosure of pi at >= prec bits (endpoints are exact dyadic rationals)
RatInterval pi_enclosure(int prec_bits);
// enclosure of exp(x)
RatInterval exp_enclosure(const BigRat& x, int prec_bits);
// sign of (exp(x) - y) for rational x, y; exact (escalates precision; uses
// the fact that exp of a nonzero rational is irrational)
int cmp_exp(const BigRat& x, const BigRat& y);
// ceil(exp(x) / q) for x > 0, q >= 1, certified by interval refinement
BigInt ceil_exp_div(const BigRat& x, const BigInt& q);
// bits needed to write exp(x) down; guards construction budgets
double exp_bits_estimate(const BigRat& x);
// floor(exp(x)) for moderate x, certified
BigInt floor_exp(const BigRat& x);

// ---- alpha as a number ----
//
// Orbits never consume the rotation number as a bare double. It is carried
// either as an exact rational (explicit continued fractions hand over a
// high-order convergent, decimal literals are exact rationals already) or as
// a quadratic surd evaluated through MPFR at a stated precision.

struct Surd {
  // value = (a + b*sqrt(d)) / c, d > 0 not a perfect square, c != 0
  BigInt a, b, c, d;
};

class AlphaValue {
 public:
  AlphaValue();  // 0
  static AlphaValue rational(BigRat v);
  static AlphaValue surd(const Surd& s, int prec_bits = 192);

  bool is_rational() const { return rational_; }
  const BigRat& rational_value() const;
  const Surd& surd_value() const;
  int prec_bits() const { return prec_bits_; }

  double to_double() const;
  // frac(n * alpha) in [0,1)
  double frac_times(const BigInt& n) const;
  double frac_times(std::int64_t n) const;
  // reduced to [-1/2, 1/2)
  double signed_frac_times(const BigInt& n) const;
  double signed_frac_times(std::int64_t n) const;
  // exact variants (rational backing only)
  BigRat frac_times_exact(const BigInt& n) const;

  // enclosure with width <= 2^-prec
  RatInterval enclosure(int prec_bits) const;

  // integer scaling: value -> k * value (used to feed xi1*alpha into
  // exponential sums at full precision)
  AlphaValue scaled(std::int64_t k) const;

 private:
  bool rational_ = true;
  BigRat q_;
  Surd s_{};
  int prec_bits_ = 192;
};

// Streams frac(n * alpha) for n = start, start+1, ... with one exact
// addition per step (no per-step multiplication, no drift for rational
// backings; surd backings advance an MPFR accumulator at full precision).
class AlphaCursor {
 public:
  explicit AlphaCursor(const AlphaValue& alpha, const BigInt& start = BigInt(0));
  AlphaCursor(const AlphaCursor&) = delete;
  AlphaCursor& operator=(const AlphaCursor&) = delete;
  AlphaCursor(AlphaCursor&&) noexcept;
  ~AlphaCursor();

  double next();  // frac(n * alpha), then n += 1

 private:
  bool rational_ = true;
  BigInt num_, step_, den_;  // rational: cur = num/den, step = p mod q
  void* state_ = nullptr;    // surd: mpfr accumulators
};

// e(theta) = exp(2*pi*i*theta) for theta in [-1, 1)
std::complex<double> unit_circle(double theta);
// e(theta) - 1 computed stably from the signed reduction of theta
std::complex<double> unit_circle_m1(double signed_theta);

}  // namespace skewlab
