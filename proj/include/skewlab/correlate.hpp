#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "skewlab/arith.hpp"
#include "skewlab/skew.hpp"

namespace skewlab::correlate {

struct PeriodicObservable {
  std::uint32_t period = 1;
  std::vector<std::complex<double>> values;  // |values| <= 1

  static PeriodicObservable from_values(std::uint32_t Q,
                                        std::vector<std::complex<double>> v);
  std::complex<double> at(std::uint64_t n) const {
    return values[n % period];
  }
};

struct Checkpoint {
  std::uint64_t n = 0;
  std::complex<double> value;
};

struct CorrelationSeries {
  std::vector<Checkpoint> checkpoints;  // strictly increasing n, |value| <= 1
  std::string meta;
};

// (1/N) sum_{n<=N} mu(n) e(n beta)
std::complex<double> davenport_sum(const AlphaValue& beta, std::uint64_t N,
                                   const arith::MobiusTable& mu);
CorrelationSeries davenport_series(const AlphaValue& beta,
                                   const std::vector<std::uint64_t>& checkpoints,
                                   const arith::MobiusTable& mu);

// running averages (1/N) sum_{n<=N} mu(n) f(T^n p0); when xi2 = 0 the result
// is cross-checked against e(xi1 x0) davenport(xi1 alpha, N) at every
// checkpoint (they agree as an algebraic identity)
CorrelationSeries mobius_orbit_average(
    const skew::SkewProduct& T, const skew::Observable& f, skew::TorusPoint p0,
    const std::vector<std::uint64_t>& checkpoints,
    const arith::MobiusTable& mu);

struct BszResult {
  std::complex<double> direct;   // (1/N) sum f(T^{p1 n} p0) conj(f(T^{p2 n} p0))
  std::complex<double> derived;  // same average through the derived system
  double route_gap = 0;
};
BszResult bsz_correlation(const skew::SkewProduct& T, const skew::Observable& f,
                          skew::TorusPoint p0, int p1, int p2, std::uint64_t N);

struct BlockDecomposeReport {
  std::complex<double> full_avg;        // E_{n<N} mu(n) G(n)
  std::complex<double> window_avg_g;    // E_L E_{n in [L, L+ASq_k)} mu(n) G(n)
  std::complex<double> window_avg_fl;   // same with G replaced by F_L
  double boundary_residual = 0;         // |full - window_g|
  double boundary_bound = 0;            // 2 (A S q_k + N0) / N
  double substitution_residual = 0;     // |window_fl - window_g|
  std::uint64_t period = 0;             // S q_k
  bool pass_boundary = false;
};
BlockDecomposeReport block_decompose(const skew::SkewProduct& T,
                                     const skew::Observable& f,
                                     skew::TorusPoint p0,
                                     const arith::MobiusTable& mu,
                                     std::uint64_t N, std::uint64_t N0,
                                     std::uint64_t q_k, long A, long S);

// F_L(n) = f(T^l p0) for the unique l = L + ((n - L) mod period)
PeriodicObservable sample_periodic_window(const skew::SkewProduct& T,
                                          const skew::Observable& f,
                                          skew::TorusPoint p0, std::uint64_t L,
                                          std::uint32_t period);

// coefficients of r -> F(r d) 1_{gcd(r,d)=1} on the unit group mod Q/d under
// the uniform probability inner product, in the basis group.chars
// (representatives r in [0, Q/d))
std::vector<std::complex<double>> char_coefficients(
    const PeriodicObservable& F, std::uint64_t d,
    const arith::CharacterGroup& group);

struct DirichletReport {
  std::complex<double> lhs_sum;   // sum_{L<=n<L+AQ} mu(n) F(n)
  std::complex<double> rhs_sum;   // regrouped by d = (n, Q)
  double identity_residual = 0;
  double lhs_avg_sq = 0;          // |E mu F|^2
  double rhs_pair_avg = 0;        // E over (d, chi primitive mod Q/d) |E mu chi|^2
  double constant = 0;            // (pi^2/6) Q
  std::uint64_t n_pairs = 0;
  double parseval_max = 0;        // max over d of sum_chi |w|^2
  double reconstruction_residual = 0;
  bool pass_identity = false;
  bool pass_inequality = false;
  bool pass_parseval = false;
};
DirichletReport dirichlet_decompose(const PeriodicObservable& F,
                                    std::uint64_t L, long A,
                                    const arith::MobiusTable& mu);

struct ShortIntervalResult {
  double lhs = 0;            // E_{X<=L<2X} |E_{L<=n<L+l} nu(n)|^2
  bool exact = false;        // integer-exact path (nu = mu)
  BigInt exact_numerator;    // lhs = exact_numerator / (X l^2) when exact
  std::uint64_t stride = 1;  // L-sampling stride (1 = every L)
};
// nu = mu: sliding integer window, exact numerator
ShortIntervalResult short_interval_avg_mu(const arith::MobiusTable& mu,
                                          std::uint64_t X, std::uint64_t l,
                                          std::uint64_t stride = 1);
// general |nu| <= 1 path
ShortIntervalResult short_interval_avg(
    const std::function<std::complex<double>(std::uint64_t)>& nu,
    std::uint64_t X, std::uint64_t l, std::uint64_t stride = 1);

// unnormalized sum_{n<=X} mu(n) chi(n) at log-spaced checkpoints
CorrelationSeries mu_chi_sum(const arith::DirichletCharacter& chi,
                             std::uint64_t X, const arith::MobiusTable& mu);

// shared cache for dual groups (modulus -> CharacterGroup)
const arith::CharacterGroup& character_group_cached(std::uint32_t Q);

}  // namespace skewlab::correlate
