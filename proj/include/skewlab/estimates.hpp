#pragma once

#include <span>
#include <string>
#include <vector>

#include "skewlab/cfrac.hpp"
#include "skewlab/skew.hpp"

namespace skewlab::estimates {

struct DeviationReport {
  int k = 0;
  std::string q_k;          // decimal, may be very large
  double sup_deviation = 0; // sup_x |H(q_k, x) - q_k hhat(0)| over the grid
  double bound = 0;         // C e^{-tau q_k / 4}
  double constant = 0;      // the C used (or calibrated)
  long grid_size = 0;
  bool pass = false;
};

struct EstimateConfig {
  double tau = 1.0;
  double eta = 0.125;  // must satisfy 0 < eta < tau/4
  long S = 1;
  double delta = 0.1;
  long grid_per_coeff = 16;      // sup grids use grid_per_coeff * mmax points
  long a_cap = 10'000'000;       // hard cap on the a-range
  int active_p2 = 0;             // when a prime pair is in play, eta < tau/(8 p2)
  int threads = 0;

  void validate() const;
};

// sup over a uniform grid of |H(q_k, x) - q_k hhat(0)| via the closed form,
// compared against constant * e^{-tau q_k/4}. constant <= 0 calibrates: the
// report comes back with constant = sup / e^{-tau q_k/4} and pass = true.
// Preconditions: k resonant (NonResonantIndex), supp hhat inside M u {0}
// (SupportViolation).
DeviationReport cocycle_deviation(const skew::SkewProduct& T,
                                  const cfrac::ContinuedFraction& cf,
                                  const fourier::ResonantSet& M, int k,
                                  long grid_size = 0, double constant = -1.0,
                                  int threads = 0);

struct RotationResonanceReport {
  double max_norm = 0;   // max over 1 <= a <= A of ||a S q_k hhat(0)||
  BigInt a_range;        // the A actually used
  double delta = 0;
  bool below_delta = false;
};

// hhat0 is consumed as an exact dyadic rational, so a S q_k hhat0 is reduced
// mod 1 without precision loss even for very large q_k
RotationResonanceReport rotation_resonance(double hhat0,
                                           const EstimateConfig& cfg,
                                           const cfrac::ContinuedFraction& cf,
                                           int k);

struct AlmostPeriodReport {
  double x_part = 0;  // ||a S q_k alpha||
  double y_part = 0;  // max over samples of ||H(a S q_k, x)||
  double total = 0;   // max of the two
  std::string step;   // a S q_k
  bool below_delta = false;
};

AlmostPeriodReport almost_period_deviation(
    const skew::SkewProduct& T, const EstimateConfig& cfg,
    const cfrac::ContinuedFraction& cf, int k, const BigInt& a,
    std::span<const skew::TorusPoint> samples);

// the two sides of the telescoping bound
// ||H(aSq_k, x)|| <= sum_{l<aS} |H(q_k, x + l q_k alpha) - q_k hhat(0)|
//                    + ||a S q_k hhat(0)||
struct ChainCheck {
  double lhs = 0, rhs = 0;
  bool holds = false;
};
ChainCheck almost_period_chain(const skew::SkewProduct& T,
                               const cfrac::ContinuedFraction& cf, int k,
                               long a, long S, double x);

// e^{-M} M + (log X)^{-1/50} + ((log log l)/(log l))^2, hypotheses X >= l >= 10
double mrt_bound(double M_value, double X, double l);

}  // namespace skewlab::estimates
