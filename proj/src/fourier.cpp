#include "skewlab/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "skewlab/kahan.hpp"
#include "skewlab/rng.hpp"

namespace skewlab::fourier {

void AnalyticCircleFunction::rebuild_support() {
  support_pos_.clear();
  for (long m = 1; m <= mmax_; ++m)
    if (coeff(m) != std::complex<double>(0.0, 0.0)) support_pos_.push_back(m);
  double c = std::abs(coeff(0));
  for (long m : support_pos_)
    c = std::max(c, std::abs(coeff(m)) * std::exp(tau_ * double(m)));
  decay_c_ = c;
}

AnalyticCircleFunction AnalyticCircleFunction::from_coefficients(
    long mmax, double tau, std::vector<std::complex<double>> table) {
  if (mmax < 0) throw UsageError("from_coefficients: mmax must be >= 0");
  if (!(tau > 0)) throw UsageError("from_coefficients: tau must be > 0");
  if (long(table.size()) != 2 * mmax + 1)
    throw UsageError("from_coefficients: table must hold 2*mmax+1 entries");
  AnalyticCircleFunction h;
  h.mmax_ = mmax;
  h.tau_ = tau;
  // reality: mirror pairs must conjugate; tolerate input noise up to 1e-15,
  // then pin the mirror bitwise
  for (long m = 1; m <= mmax; ++m) {
    auto a = table[std::size_t(m + mmax)];
    auto b = table[std::size_t(-m + mmax)];
    if (std::abs(b - std::conj(a)) > 1e-15 * (1.0 + std::abs(a)))
      throw InvariantViolation("coefficients violate hhat(-m) = conj(hhat(m))");
    table[std::size_t(-m + mmax)] = std::conj(a);
  }
  if (std::abs(table[std::size_t(mmax)].imag()) > 1e-15)
    throw InvariantViolation("hhat(0) must be real");
  table[std::size_t(mmax)].imag(0.0);
  h.c_ = std::move(table);
  h.rebuild_support();
  return h;
}

AnalyticCircleFunction AnalyticCircleFunction::zero(double tau) {
  return from_coefficients(0, tau, {std::complex<double>(0.0, 0.0)});
}

AnalyticCircleFunction AnalyticCircleFunction::constant(double c, double tau) {
  return from_coefficients(0, tau, {std::complex<double>(c, 0.0)});
}

AnalyticCircleFunction AnalyticCircleFunction::cosine(double tau) {
  std::vector<std::complex<double>> t(3, {0.0, 0.0});
  t[0] = t[2] = {0.5, 0.0};
  return from_coefficients(1, tau, std::move(t));
}

AnalyticCircleFunction AnalyticCircleFunction::random(long mmax, double tau,
                                                      std::uint64_t seed,
                                                      double mean_level) {
  SplitMix64 rng(seed);
  std::vector<std::complex<double>> t(std::size_t(2 * mmax + 1), {0.0, 0.0});
  t[std::size_t(mmax)] = {mean_level, 0.0};
  for (long m = 1; m <= mmax; ++m) {
    double amp = std::exp(-tau * double(m)) * rng.uniform(0.25, 1.0);
    std::complex<double> z = amp * rng.unit_phase();
    t[std::size_t(m + mmax)] = z;
    t[std::size_t(-m + mmax)] = std::conj(z);
  }
  return from_coefficients(mmax, tau, std::move(t));
}

double AnalyticCircleFunction::truncation_bound() const {
  double e = std::exp(-tau_);
  return decay_c_ * std::pow(e, double(mmax_ + 1)) / (1.0 - e);
}

double AnalyticCircleFunction::evaluate(double x) const {
  // w = e(m x) walks m = -mmax .. mmax by one multiplication per step
  std::complex<double> z = unit_circle(x);
  std::complex<double> w = std::conj(std::pow(z, mmax_));
  KahanC acc;
  for (long m = -mmax_; m <= mmax_; ++m) {
    acc.add(c_[std::size_t(m + mmax_)] * w);
    w *= z;
  }
  std::complex<double> v = acc.value();
  if (std::abs(v.imag()) > 1e-12)
    throw InvariantViolation("evaluate: imaginary residue exceeds 1e-12");
  return v.real();
}

double AnalyticCircleFunction::l1_norm() const {
  KahanD acc;
  for (const auto& z : c_) acc.add(std::abs(z));
  return acc.value();
}

AnalyticCircleFunction AnalyticCircleFunction::with_coeff_zeroed(long m) const {
  auto t = c_;
  if (m >= -mmax_ && m <= mmax_) {
    t[std::size_t(m + mmax_)] = {0.0, 0.0};
    if (m != 0) t[std::size_t(-m + mmax_)] = {0.0, 0.0};
  }
  return from_coefficients(mmax_, tau_, std::move(t));
}

bool ResonantSet::contains(long m) const {
  return std::binary_search(members.begin(), members.end(), m);
}

ResonantSet resonant_set(const cfrac::ContinuedFraction& cf, double tau,
                         long b1, long b2, long mmax) {
  if (b1 < 1 || b2 < 1) throw UsageError("resonant_set: b1, b2 must be >= 1");
  ResonantSet M;
  M.tau = tau;
  M.b1 = b1;
  M.b2 = b2;
  M.mmax = mmax;
  std::set<long> mem;
  for (int k : cfrac::resonant_indices(cf, tau, BigInt(b1))) {
    const BigInt& qk = cf.qk(k);
    if (qk > mmax) continue;
    long q = long(mpz_get_si(qk.get_mpz_t()));
    BigInt hi = BigInt(b2) * cf.qk(k + 1);  // members m satisfy m < b2 q_{k+1}
    for (long m = q; m <= mmax; m += q) {
      if (BigInt(m) >= hi) break;
      mem.insert(m);
      mem.insert(-m);
    }
  }
  M.members.assign(mem.begin(), mem.end());
  return M;
}

std::pair<AnalyticCircleFunction, AnalyticCircleFunction> split_resonant(
    const AnalyticCircleFunction& h, const ResonantSet& M) {
  long mmax = h.mmax();
  std::vector<std::complex<double>> t1(std::size_t(2 * mmax + 1), {0.0, 0.0});
  std::vector<std::complex<double>> t2 = t1;
  for (long m = -mmax; m <= mmax; ++m) {
    std::complex<double> c = h.coeff(m);
    if (m == 0 || M.contains(m))
      t1[std::size_t(m + mmax)] = c;
    else
      t2[std::size_t(m + mmax)] = c;
  }
  return {AnalyticCircleFunction::from_coefficients(mmax, h.tau(), std::move(t1)),
          AnalyticCircleFunction::from_coefficients(mmax, h.tau(), std::move(t2))};
}

AnalyticCircleFunction coboundary_phi(const AnalyticCircleFunction& h2,
                                      const AlphaValue& alpha,
                                      const CoboundaryOptions& opt) {
  if (h2.coeff(0) != std::complex<double>(0.0, 0.0))
    throw InvariantViolation("coboundary_phi: hhat2(0) must vanish");
  long mmax = h2.mmax();
  std::vector<std::complex<double>> t(std::size_t(2 * mmax + 1), {0.0, 0.0});
  for (long m : h2.support_pos()) {
    double sth = alpha.signed_frac_times(std::int64_t(m));
    std::complex<double> den = unit_circle_m1(sth);
    if (std::abs(den) < opt.divisor_floor)
      throw NearResonance("coboundary_phi: |e(m alpha)-1| below floor at m=" +
                              std::to_string(m),
                          m);
    std::complex<double> v = h2.coeff(m) / den;
    t[std::size_t(m + mmax)] = v;
    t[std::size_t(-m + mmax)] = std::conj(v);
  }
  return AnalyticCircleFunction::from_coefficients(mmax, h2.tau(), std::move(t));
}

AnalyticCircleFunction furstenberg_like(const cfrac::ContinuedFraction& cf,
                                        double tau, long mmax,
                                        std::uint64_t phase_seed) {
  if (!(tau > 0)) throw UsageError("furstenberg_like: tau must be > 0");
  SplitMix64 rng(phase_seed);
  std::vector<std::complex<double>> t(std::size_t(2 * mmax + 1), {0.0, 0.0});
  for (int k = 1; k <= cf.K(); ++k) {
    const BigInt& qk = cf.qk(k);
    if (qk > mmax) break;
    long m = long(mpz_get_si(qk.get_mpz_t()));
    std::complex<double> u =
        phase_seed ? rng.unit_phase() : std::complex<double>(1.0, 0.0);
    std::complex<double> z = std::exp(-tau * double(m)) * u;
    t[std::size_t(m + mmax)] = z;
    t[std::size_t(-m + mmax)] = std::conj(z);
  }
  return AnalyticCircleFunction::from_coefficients(mmax, tau, std::move(t));
}

}  // namespace skewlab::fourier
