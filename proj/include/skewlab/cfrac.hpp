#pragma once

#include <string>
#include <vector>

#include "skewlab/qnum.hpp"

namespace skewlab::cfrac {

// quotients a_1..a_K with convergents p_k/q_k, k = 0..K, under the standard
// recurrence q_{k+1} = a_{k+1} q_k + q_{k-1}, (p_0,q_0) = (0,1),
// (p_{-1},q_{-1}) = (1,0)
struct ContinuedFraction {
  std::vector<BigInt> quotients;
  std::vector<BigInt> p, q;  // indexed 0..K

  int K() const { return int(quotients.size()); }
  const BigInt& pk(int k) const { return p.at(std::size_t(k)); }
  const BigInt& qk(int k) const { return q.at(std::size_t(k)); }
  BigRat convergent(int k) const {
    return BigRat(pk(k)) / BigRat(qk(k));
  }
  // hull of every irrational number sharing these K quotients:
  // between p_K/q_K and the mediant (p_K+p_{K-1})/(q_K+q_{K-1}); both
  // endpoints themselves are excluded
  RatInterval continuation_hull() const;
};

struct IrrationalSpec {
  enum class Kind { surd, decimal, explicit_cf, pi_minus_3 };
  Kind kind = Kind::explicit_cf;

  Surd surd_v{};                    // surd
  BigRat literal;                   // decimal: exact literal value
  int prec_bits = 192;              // decimal/pi: stated precision
  std::vector<BigInt> quotients;    // explicit_cf

  static IrrationalSpec golden();          // (sqrt5 - 1)/2
  static IrrationalSpec sqrt2_minus_1();
  static IrrationalSpec surd(const Surd& s);
  static IrrationalSpec pi_minus_3(int bits);
  static IrrationalSpec decimal(const std::string& digits, int bits);
  static IrrationalSpec explicit_cf(std::vector<BigInt> quotients);

  // canonical number handed to orbits: exact surd, the exact literal, or the
  // top convergent of an explicit quotient list
  AlphaValue value(int value_prec_bits = 192) const;
  // enclosure certified at the spec's precision; throws PrecisionExhausted
  // when the backing cannot be sharpened (fixed-precision literals)
  RatInterval enclosure(int want_bits) const;
  std::string describe() const;
};

ContinuedFraction expand_cf(const IrrationalSpec& spec, int K);

// exact Euclid on a rational in (0,1); terminates at the full expansion
// (test oracle for the recurrence and the convergent values)
ContinuedFraction expand_rational_exact(const BigRat& v, int max_terms);

// distance to the nearest integer (re-exported from the numeric kernel)
using skewlab::circle_norm;
using skewlab::circle_norm_exact;

struct QNormCheck {
  BigRat lower;       // 1/(q_{k+1}+q_k)
  BigRat upper;       // 1/q_{k+1}
  RatInterval value;  // enclosure of ||q_k alpha||
  bool strict = false;        // certified lower < value < upper
  bool out_of_domain = false; // rational alpha at its last convergent
};

// k >= 1 and k+1 <= K required
QNormCheck qnorm_check(const ContinuedFraction& cf, const IrrationalSpec& spec,
                       int k);

enum class GrowthRule {
  exponential,         // a_{k+1} = ceil(e^{tau q_k / 2} / q_k) + 1
  exponential_doubled  // twice the exponent; a_{k+1} = ceil(e^{tau q_k} / q_k) + 1
};

// Explicit quotient sequence with q_{k+1} > e^{tau q_k / 2} at every step.
// The requested K is capped once the next denominator would exceed max_bits.
std::pair<IrrationalSpec, ContinuedFraction> construct_liouville(
    double tau, int K, GrowthRule rule = GrowthRule::exponential,
    long max_bits = 1l << 20);

// certified test of q_{k+1} > e^{tau q_k / 2}
bool is_resonant_index(const ContinuedFraction& cf, double tau, int k);
// all k in [1, K-1] passing the test with q_k >= b1
std::vector<int> resonant_indices(const ContinuedFraction& cf, double tau,
                                  const BigInt& b1);

}  // namespace skewlab::cfrac
