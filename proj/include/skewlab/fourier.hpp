#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "skewlab/cfrac.hpp"
#include "skewlab/qnum.hpp"

namespace skewlab::fourier {

// Finite symmetric Fourier table hhat(m), |m| <= mmax, carrying an
// exponential decay certificate |hhat(m)| <= C e^{-tau |m|}. Real-valued on
// the circle, so hhat(-m) = conj(hhat(m)) is enforced bitwise.
class AnalyticCircleFunction {
 public:
  AnalyticCircleFunction() = default;

  static AnalyticCircleFunction from_coefficients(
      long mmax, double tau, std::vector<std::complex<double>> table);
  static AnalyticCircleFunction zero(double tau);
  static AnalyticCircleFunction constant(double c, double tau);
  static AnalyticCircleFunction cosine(double tau);  // hhat(+-1) = 1/2
  static AnalyticCircleFunction random(long mmax, double tau,
                                       std::uint64_t seed,
                                       double mean_level = 0.0);

  long mmax() const { return mmax_; }
  double tau() const { return tau_; }
  double decay_constant() const { return decay_c_; }
  // bound on the mass cut off beyond mmax: C e^{-tau(mmax+1)} / (1 - e^{-tau})
  double truncation_bound() const;

  std::complex<double> coeff(long m) const {
    if (m < -mmax_ || m > mmax_) return {0.0, 0.0};
    return c_[std::size_t(m + mmax_)];
  }
  // positive frequencies with a nonzero coefficient, ascending
  const std::vector<long>& support_pos() const { return support_pos_; }
  bool has_zero_mode() const { return c_.size() && coeff(0) != 0.0; }

  // full symmetric sum; asserts the imaginary residue stays below 1e-12
  double evaluate(double x) const;
  double l1_norm() const;

  AnalyticCircleFunction with_coeff_zeroed(long m) const;  // test helper

 private:
  long mmax_ = 0;
  double tau_ = 1.0;
  double decay_c_ = 0.0;
  std::vector<std::complex<double>> c_;  // index m + mmax
  std::vector<long> support_pos_;

  void rebuild_support();
};

// M_{b1,b2} intersected with [-mmax, mmax]: frequencies m with q_k | m,
// q_k <= |m| < b2 q_{k+1}, for resonant k with q_k >= b1
struct ResonantSet {
  std::vector<long> members;  // sorted, both signs
  double tau = 0.0;
  long b1 = 1, b2 = 1;
  long mmax = 0;

  bool contains(long m) const;
  bool empty() const { return members.empty(); }
};

ResonantSet resonant_set(const cfrac::ContinuedFraction& cf, double tau,
                         long b1, long b2, long mmax);

// exact coefficient partition: h1 on M u {0}, h2 on the complement
std::pair<AnalyticCircleFunction, AnalyticCircleFunction> split_resonant(
    const AnalyticCircleFunction& h, const ResonantSet& M);

struct CoboundaryOptions {
  double divisor_floor = 1e-30;  // reject |e(m alpha)-1| below this
};

// phi with phi(x+alpha) - phi(x) = h2(x), phihat(m) = h2hat(m)/(e(m alpha)-1);
// requires h2hat(0) = 0
AnalyticCircleFunction coboundary_phi(const AnalyticCircleFunction& h2,
                                      const AlphaValue& alpha,
                                      const CoboundaryOptions& opt = {});

// coefficients concentrated on the denominators q_k <= mmax:
// hhat(+-q_k) = e^{-tau q_k} u_k with |u_k| = 1 (u_k = 1 unless seeded)
AnalyticCircleFunction furstenberg_like(const cfrac::ContinuedFraction& cf,
                                        double tau, long mmax,
                                        std::uint64_t phase_seed = 0);

}  // namespace skewlab::fourier
