#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "skewlab/fourier.hpp"
#include "skewlab/qnum.hpp"

namespace skewlab::skew {

struct TorusPoint {
  double x = 0.0, y = 0.0;  // both reduced to [0,1)
};

struct Observable {
  std::int64_t xi1 = 0, xi2 = 0;  // f(x,y) = e(xi1 x + xi2 y)
};

inline double reduce01(double v) {
  v -= std::floor(v);
  return (v >= 1.0) ? 0.0 : v;
}

// max metric on the torus
double torus_distance(const TorusPoint& a, const TorusPoint& b);

std::complex<double> observe(const Observable& f, const TorusPoint& p);

// T(x,y) = (x + alpha, y + h(x)); immutable, shareable across threads
class SkewProduct {
 public:
  SkewProduct(AlphaValue alpha, fourier::AnalyticCircleFunction h,
              double divisor_floor = 1e-30);

  const AlphaValue& alpha() const { return alpha_; }
  const fourier::AnalyticCircleFunction& h() const { return h_; }
  double divisor_floor() const { return floor_; }

 private:
  AlphaValue alpha_;
  fourier::AnalyticCircleFunction h_;
  double floor_;
};

// T^n(p0) for n = 0..N-1, x computed nonincrementally (exact stepping of the
// rational/high-precision backing), y by compensated accumulation, reduced
// only on emission
void orbit_stream(const SkewProduct& T, TorusPoint p0, std::int64_t N,
                  const std::function<void(std::int64_t, TorusPoint)>& sink);
std::vector<TorusPoint> orbit(const SkewProduct& T, TorusPoint p0,
                              std::int64_t N);

// H(n, x) = sum_{l<n} h(x + l alpha), as an unreduced real
double cocycle_direct(const SkewProduct& T, std::int64_t n, double x);

// closed form n hhat(0) + sum_{m != 0} hhat(m) (e(nm alpha)-1)/(e(m alpha)-1) e(mx)
double cocycle_fourier(const SkewProduct& T, std::int64_t n, double x);
// the m != 0 part alone (H(n,x) - n hhat(0)); safe for astronomically large n
double cocycle_fourier_deviation(const SkewProduct& T, const BigInt& n,
                                 double x);
// frac(H(n,x)), combining an exact frac(n hhat(0)) with the deviation part
double cocycle_fourier_mod1(const SkewProduct& T, const BigInt& n, double x);

// |H(n1 n2, x) - sum_{l<n1} H(n2, x + l n2 alpha)|, both sides by literal sums
double cocycle_compose_check(const SkewProduct& T, std::int64_t n1,
                             std::int64_t n2, double x);
// max residual over every ordered factor pair of every n <= nmax, sharing one
// evaluation table (reordering noise only)
double compose_residual_max(const SkewProduct& T, double x, std::int64_t nmax);

// fiber map psi(x) = s (H(p1, x0 + p1 x) - H(p2, x0 + p2 x)) realized through
// its coefficient table; support inside p1 supp hhat u p2 supp hhat
SkewProduct derived_system(const SkewProduct& T, int p1, int p2, double x0,
                           int s);

// max over 0 <= k <= n of the torus distance between the iterate of the
// derived system at (0,0) and (k alpha, H(p1 k, x0) - H(p2 k, x0))
double derived_orbit_check(const SkewProduct& T, int p1, int p2, double x0,
                           std::int64_t n);

// max over 0 <= k <= n of the torus distance between T^k(p0) and the
// conjugated orbit Phi^{-1}(T1^k(Phi(p0))), Phi(x,y) = (x, y - phi(x))
double conjugation_check(const SkewProduct& T, const fourier::ResonantSet& M,
                         TorusPoint p0, std::int64_t n);

}  // namespace skewlab::skew
