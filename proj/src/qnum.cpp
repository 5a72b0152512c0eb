#include "skewlab/qnum.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>

namespace skewlab {

BigRat rat_from_double(double x) {
  BigRat q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

double rat_to_double(const BigRat& q) { return mpq_get_d(q.get_mpq_t()); }

BigRat mod1(const BigRat& x) {
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return x - BigRat(fl);
}

BigRat signed_mod1(const BigRat& x) {
  BigRat f = mod1(x);
  if (f * 2 >= 1) f -= 1;
  return f;
}

BigRat circle_norm_exact(const BigRat& x) {
  BigRat s = signed_mod1(x);
  return s < 0 ? BigRat(-s) : s;
}

double circle_norm(double theta) {
  double r = std::fabs(theta - std::nearbyint(theta));
  return r > 0.5 ? 0.5 : r;  // guards the rounding edge at exactly 1/2
}

double frac_bigint_times_double(const BigInt& n, double c) {
  // c = m * 2^e exactly; frac(n*c) = ((n*m) mod 2^-e) * 2^e for e < 0
  if (c == 0.0 || n == 0) return 0.0;
  int e;
  double m = std::frexp(c, &e);  // c = m * 2^e, |m| in [0.5, 1)
  std::int64_t mi = std::llround(std::ldexp(m, 53));
  e -= 53;  // c = mi * 2^e exactly
  BigInt t = n * BigInt(mi);
  if (e >= 0) return 0.0;  // n*c is an integer
  BigInt mask = BigInt(1) << static_cast<unsigned>(-e);
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), t.get_mpz_t(), mask.get_mpz_t());
  BigRat frac = BigRat(r) / BigRat(mask);
  return rat_to_double(frac);
}

double signed_frac_bigint_times_double(const BigInt& n, double c) {
  double f = frac_bigint_times_double(n, c);
  return f >= 0.5 ? f - 1.0 : f;
}

namespace {

// exact dyadic rational from an mpfr value
BigRat mpfr_to_rat(mpfr_srcptr v) {
  if (mpfr_zero_p(v)) return BigRat(0);
  mpz_class z;
  mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), v);
  BigRat q(z);
  if (e >= 0)
    q *= BigRat(BigInt(1) << static_cast<unsigned>(e));
  else
    q /= BigRat(BigInt(1) << static_cast<unsigned>(-e));
  return q;
}

void rat_to_mpfr(mpfr_ptr out, const BigRat& q, mpfr_rnd_t rnd) {
  mpfr_set_q(out, q.get_mpq_t(), rnd);
}

}  // namespace

RatInterval pi_enclosure(int prec_bits) {
  mpfr_t lo, hi;
  mpfr_init2(lo, prec_bits);
  mpfr_init2(hi, prec_bits);
  mpfr_const_pi(lo, MPFR_RNDD);
  mpfr_const_pi(hi, MPFR_RNDU);
  RatInterval r{mpfr_to_rat(lo), mpfr_to_rat(hi)};
  mpfr_clear(lo);
  mpfr_clear(hi);
  return r;
}

RatInterval exp_enclosure(const BigRat& x, int prec_bits) {
  mpfr_t t, lo, hi;
  mpfr_init2(t, prec_bits + 32);
  mpfr_init2(lo, prec_bits);
  mpfr_init2(hi, prec_bits);
  rat_to_mpfr(t, x, MPFR_RNDD);
  mpfr_exp(lo, t, MPFR_RNDD);
  rat_to_mpfr(t, x, MPFR_RNDU);
  mpfr_exp(hi, t, MPFR_RNDU);
  RatInterval r{mpfr_to_rat(lo), mpfr_to_rat(hi)};
  mpfr_clear(t);
  mpfr_clear(lo);
  mpfr_clear(hi);
  return r;
}

int cmp_exp(const BigRat& x, const BigRat& y) {
  if (x == 0) {
    if (y < 1) return 1;
    if (y > 1) return -1;
    return 0;
  }
  if (y <= 0) return 1;
  for (int prec = 96;; prec *= 2) {
    RatInterval e = exp_enclosure(x, prec);
    if (e.lo > y) return 1;
    if (e.hi < y) return -1;
    if (prec > (1 << 22))
      throw PrecisionExhausted("cmp_exp: comparison did not resolve");
  }
}

double exp_bits_estimate(const BigRat& x) {
  return rat_to_double(x) * 1.4426950408889634;  // / ln 2
}

BigInt ceil_exp_div(const BigRat& x, const BigInt& q) {
  if (q < 1) throw UsageError("ceil_exp_div: q must be >= 1");
  double need = exp_bits_estimate(x);
  if (need > double(1 << 22))
    throw BudgetExceeded("ceil_exp_div: exp(" + x.get_str() +
                         ") exceeds the bit budget");
  int base = std::max(96, int(need) + 64);
  BigRat qr(q);
  for (int prec = base;; prec *= 2) {
    RatInterval e = exp_enclosure(x, prec);
    BigRat lo = e.lo / qr, hi = e.hi / qr;
    BigInt clo, chi;
    mpz_cdiv_q(clo.get_mpz_t(), lo.get_num().get_mpz_t(),
               lo.get_den().get_mpz_t());
    mpz_cdiv_q(chi.get_mpz_t(), hi.get_num().get_mpz_t(),
               hi.get_den().get_mpz_t());
    if (clo == chi) return clo;  // exp(x)/q irrational, so this terminates
    if (prec > (1 << 24))
      throw PrecisionExhausted("ceil_exp_div: did not resolve");
  }
}

BigInt floor_exp(const BigRat& x) {
  double need = exp_bits_estimate(x);
  if (need > double(1 << 22))
    throw BudgetExceeded("floor_exp: result exceeds the bit budget");
  int base = std::max(96, int(need) + 64);
  for (int prec = base;; prec *= 2) {
    RatInterval e = exp_enclosure(x, prec);
    BigInt flo, fhi;
    mpz_fdiv_q(flo.get_mpz_t(), e.lo.get_num().get_mpz_t(),
               e.lo.get_den().get_mpz_t());
    mpz_fdiv_q(fhi.get_mpz_t(), e.hi.get_num().get_mpz_t(),
               e.hi.get_den().get_mpz_t());
    if (flo == fhi) return flo;
    if (prec > (1 << 24)) throw PrecisionExhausted("floor_exp: did not resolve");
  }
}

// ---- AlphaValue ----

AlphaValue::AlphaValue() : rational_(true), q_(0) {}

AlphaValue AlphaValue::rational(BigRat v) {
  AlphaValue a;
  a.rational_ = true;
  a.q_ = std::move(v);
  return a;
}

AlphaValue AlphaValue::surd(const Surd& s, int prec_bits) {
  if (s.c == 0) throw UsageError("surd: zero denominator");
  if (s.d <= 0 || mpz_perfect_square_p(s.d.get_mpz_t()))
    throw UsageError("surd: d must be positive and not a perfect square");
  AlphaValue a;
  a.rational_ = false;
  a.s_ = s;
  a.prec_bits_ = prec_bits;
  return a;
}

const BigRat& AlphaValue::rational_value() const {
  if (!rational_) throw UsageError("AlphaValue: not rational");
  return q_;
}

const Surd& AlphaValue::surd_value() const {
  if (rational_) throw UsageError("AlphaValue: not a surd");
  return s_;
}

namespace {

// (a + b*sqrt(d))/c into out, current rounding direction
void surd_to_mpfr(mpfr_ptr out, const Surd& s, mpfr_rnd_t rnd) {
  // directed rounding through each step keeps the result on the right side;
  // flip direction when the denominator is negative
  bool neg_c = s.c < 0;
  mpfr_rnd_t inner = rnd;
  if (neg_c) inner = (rnd == MPFR_RNDD) ? MPFR_RNDU : MPFR_RNDD;
  mpfr_t sq;
  mpfr_init2(sq, mpfr_get_prec(out) + 8);
  mpfr_set_z(sq, s.d.get_mpz_t(), inner);
  mpfr_sqrt(sq, sq, (s.b >= 0) ? inner : ((inner == MPFR_RNDD) ? MPFR_RNDU : MPFR_RNDD));
  mpfr_mul_z(sq, sq, s.b.get_mpz_t(), inner);
  mpfr_add_z(sq, sq, s.a.get_mpz_t(), inner);
  mpfr_div_z(out, sq, s.c.get_mpz_t(), rnd);
  mpfr_clear(sq);
}

}  // namespace

RatInterval AlphaValue::enclosure(int prec_bits) const {
  if (rational_) return {q_, q_};
  mpfr_t lo, hi;
  mpfr_init2(lo, prec_bits);
  mpfr_init2(hi, prec_bits);
  surd_to_mpfr(lo, s_, MPFR_RNDD);
  surd_to_mpfr(hi, s_, MPFR_RNDU);
  RatInterval r{mpfr_to_rat(lo), mpfr_to_rat(hi)};
  mpfr_clear(lo);
  mpfr_clear(hi);
  return r;
}

double AlphaValue::to_double() const {
  if (rational_) return rat_to_double(q_);
  mpfr_t v;
  mpfr_init2(v, 64);
  surd_to_mpfr(v, s_, MPFR_RNDN);
  double d = mpfr_get_d(v, MPFR_RNDN);
  mpfr_clear(v);
  return d;
}

double AlphaValue::frac_times(const BigInt& n) const {
  if (rational_) {
    BigInt num = n * q_.get_num();
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), q_.get_den().get_mpz_t());
    return rat_to_double(BigRat(r) / BigRat(q_.get_den()));
  }
  std::size_t nbits = mpz_sizeinbase(n.get_mpz_t(), 2);
  int prec = int(nbits) + std::max(prec_bits_, 96);
  mpfr_t v, t;
  mpfr_init2(v, prec);
  mpfr_init2(t, prec);
  surd_to_mpfr(v, s_, MPFR_RNDN);
  mpfr_mul_z(t, v, n.get_mpz_t(), MPFR_RNDN);
  mpfr_frac(t, t, MPFR_RNDN);
  if (mpfr_sgn(t) < 0) mpfr_add_ui(t, t, 1, MPFR_RNDN);
  double d = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(v);
  mpfr_clear(t);
  if (d >= 1.0) d -= 1.0;
  if (d < 0.0) d += 1.0;
  return d;
}

double AlphaValue::frac_times(std::int64_t n) const {
  return frac_times(BigInt(static_cast<long>(n)));
}

double AlphaValue::signed_frac_times(const BigInt& n) const {
  double f = frac_times(n);
  return f >= 0.5 ? f - 1.0 : f;
}

double AlphaValue::signed_frac_times(std::int64_t n) const {
  return signed_frac_times(BigInt(static_cast<long>(n)));
}

BigRat AlphaValue::frac_times_exact(const BigInt& n) const {
  if (!rational_) throw UsageError("frac_times_exact: surd-backed value");
  return mod1(BigRat(n) * q_);
}

AlphaValue AlphaValue::scaled(std::int64_t k) const {
  if (rational_) return rational(q_ * BigInt(static_cast<long>(k)));
  Surd s = s_;
  s.a *= BigInt(static_cast<long>(k));
  s.b *= BigInt(static_cast<long>(k));
  return surd(s, prec_bits_);
}

namespace {
struct CursorMpfr {
  mpfr_t cur, step;
};
}  // namespace

AlphaCursor::AlphaCursor(const AlphaValue& alpha, const BigInt& start) {
  if (alpha.is_rational()) {
    rational_ = true;
    const BigRat& q = alpha.rational_value();
    den_ = q.get_den();
    mpz_fdiv_r(step_.get_mpz_t(), q.get_num().get_mpz_t(), den_.get_mpz_t());
    BigInt t = start * q.get_num();
    mpz_fdiv_r(num_.get_mpz_t(), t.get_mpz_t(), den_.get_mpz_t());
  } else {
    rational_ = false;
    auto* st = new CursorMpfr;
    int prec = std::max(alpha.prec_bits(), 192) + 64;
    mpfr_init2(st->cur, prec);
    mpfr_init2(st->step, prec);
    RatInterval e = alpha.enclosure(prec);
    mpfr_set_q(st->step, e.lo.get_mpq_t(), MPFR_RNDN);
    mpfr_mul_z(st->cur, st->step, start.get_mpz_t(), MPFR_RNDN);
    mpfr_frac(st->cur, st->cur, MPFR_RNDN);
    if (mpfr_sgn(st->cur) < 0) mpfr_add_ui(st->cur, st->cur, 1, MPFR_RNDN);
    state_ = st;
  }
}

AlphaCursor::AlphaCursor(AlphaCursor&& o) noexcept
    : rational_(o.rational_),
      num_(std::move(o.num_)),
      step_(std::move(o.step_)),
      den_(std::move(o.den_)),
      state_(o.state_) {
  o.state_ = nullptr;
}

AlphaCursor::~AlphaCursor() {
  if (state_) {
    auto* st = static_cast<CursorMpfr*>(state_);
    mpfr_clear(st->cur);
    mpfr_clear(st->step);
    delete st;
  }
}

double AlphaCursor::next() {
  if (rational_) {
    // num/den with num in [0, den)
    double v = den_ == 1 ? 0.0
                         : mpz_get_d(num_.get_mpz_t()) / mpz_get_d(den_.get_mpz_t());
    num_ += step_;
    if (num_ >= den_) num_ -= den_;
    if (v >= 1.0) v = std::nextafter(1.0, 0.0);
    return v;
  }
  auto* st = static_cast<CursorMpfr*>(state_);
  double v = mpfr_get_d(st->cur, MPFR_RNDN);
  mpfr_add(st->cur, st->cur, st->step, MPFR_RNDN);
  if (mpfr_cmp_ui(st->cur, 1) >= 0) mpfr_sub_ui(st->cur, st->cur, 1, MPFR_RNDN);
  if (v >= 1.0) v = std::nextafter(1.0, 0.0);
  if (v < 0.0) v = 0.0;
  return v;
}

std::complex<double> unit_circle(double theta) {
  constexpr double tau = 6.283185307179586476925286766559;
  return {std::cos(tau * theta), std::sin(tau * theta)};
}

std::complex<double> unit_circle_m1(double signed_theta) {
  constexpr double pi = 3.141592653589793238462643383279;
  double s = std::sin(pi * signed_theta);
  double c = std::cos(pi * signed_theta);
  return {-2.0 * s * s, 2.0 * s * c};
}

}  // namespace skewlab
