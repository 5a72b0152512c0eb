#include "skewlab/estimates.hpp"

#include <cmath>

#include "skewlab/kahan.hpp"
#include "skewlab/parallel.hpp"

namespace skewlab::estimates {

void EstimateConfig::validate() const {
  if (!(tau > 0)) throw UsageError("EstimateConfig: tau must be > 0");
  if (!(eta > 0 && eta < tau / 4))
    throw UsageError("EstimateConfig: eta must lie in (0, tau/4)");
  if (active_p2 > 0 && !(eta < tau / (8.0 * active_p2)))
    throw UsageError("EstimateConfig: eta must lie below tau/(8 p2)");
  if (S < 1) throw UsageError("EstimateConfig: S must be >= 1");
  if (!(delta > 0)) throw UsageError("EstimateConfig: delta must be > 0");
  if (grid_per_coeff < 1) throw UsageError("EstimateConfig: grid density");
}

namespace {

// e^{-tau q/4} through MPFR once q is too large for double exponents
double decay_quarter(double tau, const BigInt& qk) {
  double qd = mpz_get_d(qk.get_mpz_t());
  double e = -tau * qd / 4.0;
  if (e < -700.0) return 0.0;
  return std::exp(e);
}

double sup_deviation_grid(const skew::SkewProduct& T, const BigInt& qk,
                          long grid, int threads) {
  long nblocks = std::min<long>(64, grid);
  std::vector<double> best(std::size_t(nblocks), 0.0);
  parallel_blocks(nblocks, threads, [&](std::int64_t b) {
    long lo = long(b) * grid / nblocks, hi = (long(b) + 1) * grid / nblocks;
    double w = 0.0;
    for (long i = lo; i < hi; ++i) {
      double x = double(i) / double(grid);
      w = std::max(w, std::abs(skew::cocycle_fourier_deviation(T, qk, x)));
    }
    best[std::size_t(b)] = w;
  });
  return tree_reduce(best, 0.0, [](double a, double b) { return std::max(a, b); });
}

}  // namespace

DeviationReport cocycle_deviation(const skew::SkewProduct& T,
                                  const cfrac::ContinuedFraction& cf,
                                  const fourier::ResonantSet& M, int k,
                                  long grid_size, double constant,
                                  int threads) {
  if (!cfrac::is_resonant_index(cf, M.tau, k))
    throw NonResonantIndex("cocycle_deviation: index " + std::to_string(k) +
                           " fails q_{k+1} > e^{tau q_k / 2}");
  for (long m : T.h().support_pos())
    if (!M.contains(m))
      throw SupportViolation("cocycle_deviation: hhat has mass at m=" +
                             std::to_string(m) + " outside M u {0}");
  DeviationReport r;
  r.k = k;
  const BigInt& qk = cf.qk(k);
  r.q_k = qk.get_str();
  r.grid_size = grid_size > 0
                    ? grid_size
                    : std::max<long>(256, T.h().mmax() * 16);
  r.sup_deviation = sup_deviation_grid(T, qk, r.grid_size, threads);
  double decay = decay_quarter(M.tau, qk);
  if (constant > 0) {
    r.constant = constant;
    r.bound = constant * decay;
    r.pass = r.sup_deviation <= r.bound;
  } else {
    r.constant = decay > 0 ? r.sup_deviation / decay : 0.0;
    r.bound = r.sup_deviation;
    r.pass = true;  // calibration run
  }
  return r;
}

RotationResonanceReport rotation_resonance(double hhat0,
                                           const EstimateConfig& cfg,
                                           const cfrac::ContinuedFraction& cf,
                                           int k) {
  cfg.validate();
  if (!cfrac::is_resonant_index(cf, cfg.tau, k))
    throw NonResonantIndex("rotation_resonance: index " + std::to_string(k) +
                           " fails q_{k+1} > e^{tau q_k / 2}");
  const BigInt& qk = cf.qk(k);
  // A = min(floor(e^{eta q_k}), cap)
  BigInt A(cfg.a_cap);
  BigRat x = rat_from_double(cfg.eta) * qk;
  if (exp_bits_estimate(x) < 60.0) {
    BigInt fe = floor_exp(x);
    if (fe < A) A = fe;
  }
  if (A < 1) A = 1;
  RotationResonanceReport rep;
  rep.a_range = A;
  rep.delta = cfg.delta;
  BigInt step = BigInt(cfg.S) * qk;
  BigInt n = 0;
  for (BigInt a = 1; a <= A; ++a) {
    n += step;
    double nrm = std::abs(signed_frac_bigint_times_double(n, hhat0));
    rep.max_norm = std::max(rep.max_norm, nrm);
  }
  rep.below_delta = rep.max_norm < cfg.delta;
  return rep;
}

AlmostPeriodReport almost_period_deviation(
    const skew::SkewProduct& T, const EstimateConfig& cfg,
    const cfrac::ContinuedFraction& cf, int k, const BigInt& a,
    std::span<const skew::TorusPoint> samples) {
  cfg.validate();
  if (a < 0) throw UsageError("almost_period_deviation: a must be >= 0");
  AlmostPeriodReport rep;
  BigInt n = a * BigInt(cfg.S) * cf.qk(k);
  rep.step = n.get_str();
  if (a == 0) {
    rep.below_delta = true;
    return rep;  // identity map
  }
  // the a-range must respect a <= e^{eta q_k}
  BigRat bound = rat_from_double(cfg.eta) * cf.qk(k);
  if (cmp_exp(bound, BigRat(a)) < 0)
    throw BudgetExceeded("almost_period_deviation: a exceeds e^{eta q_k}");
  rep.x_part = std::abs(T.alpha().signed_frac_times(n));
  for (const auto& p : samples) {
    double f = skew::cocycle_fourier_mod1(T, n, p.x);
    rep.y_part = std::max(rep.y_part, std::min(f, 1.0 - f));
  }
  rep.total = std::max(rep.x_part, rep.y_part);
  rep.below_delta = rep.total < cfg.delta;
  return rep;
}

ChainCheck almost_period_chain(const skew::SkewProduct& T,
                               const cfrac::ContinuedFraction& cf, int k,
                               long a, long S, double x) {
  ChainCheck c;
  const BigInt& qk = cf.qk(k);
  BigInt n = BigInt(a) * BigInt(S) * qk;
  double f = skew::cocycle_fourier_mod1(T, n, x);
  c.lhs = std::min(f, 1.0 - f);
  KahanD rhs;
  for (long l = 0; l < a * S; ++l) {
    double xl = x + T.alpha().frac_times(BigInt(l) * qk);
    if (xl >= 1.0) xl -= 1.0;
    rhs.add(std::abs(skew::cocycle_fourier_deviation(T, qk, xl)));
  }
  double hh0 = T.h().coeff(0).real();
  rhs.add(std::abs(signed_frac_bigint_times_double(n, hh0)));
  c.rhs = rhs.value();
  c.holds = c.lhs <= c.rhs + 1e-12;
  return c;
}

double mrt_bound(double M_value, double X, double l) {
  if (!(l >= 10.0))
    throw UsageError("mrt_bound: hypothesis requires l >= 10");
  if (!(X >= l)) throw UsageError("mrt_bound: hypothesis requires X >= l");
  if (M_value < 0) throw UsageError("mrt_bound: M must be >= 0");
  double first = std::exp(-M_value) * M_value;
  double second = std::pow(std::log(X), -0.02);
  double lll = std::log(std::log(l)) / std::log(l);
  return first + second + lll * lll;
}

}  // namespace skewlab::estimates
