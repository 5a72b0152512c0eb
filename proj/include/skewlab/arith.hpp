#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "skewlab/errors.hpp"
#include "skewlab/qnum.hpp"

namespace skewlab::arith {

// mu(n) for 1 <= n <= limit. Immutable after construction.
struct MobiusTable {
  std::uint64_t limit = 0;
  std::vector<std::int8_t> values;  // index n, values[0] unused

  std::int8_t mu(std::uint64_t n) const {
    if (n == 0 || n > limit) throw UsageError("MobiusTable: index out of range");
    return values[n];
  }
  // Mertens partial sum, for small-scale oracles
  long mertens(std::uint64_t N) const;
};

// linear sieve in memory for N <= linear_limit, segmented above
MobiusTable mobius_sieve(std::uint64_t N);
MobiusTable mobius_sieve_segmented(std::uint64_t N, std::uint64_t segment_len,
                                   int threads = 0);
// streamed variant, O(segment) memory: f(lo, values) with values[i] = mu(lo+i)
void mobius_stream(std::uint64_t N, std::uint64_t segment_len,
                   const std::function<void(std::uint64_t,
                                            const std::vector<std::int8_t>&)>& f);

std::vector<std::uint32_t> primes_up_to(std::uint32_t N);

// trial division; primes strictly increasing, product of p^e == n
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t Q);
std::uint64_t euler_phi(std::uint64_t n);
// count of primitive characters mod c (by the standard multiplicative formula)
std::uint64_t primitive_character_count(std::uint64_t c);

// ---- Dirichlet characters ----
//
// Values are exact roots of unity stored as angle numerators over a common
// denominator (the group exponent), so multiplicativity and factor-through
// tests are integer-exact; complex values are cached for the analytic side.

struct DirichletCharacter {
  std::uint32_t modulus = 1;
  std::uint32_t conductor = 1;
  bool primitive = true;
  bool principal = true;
  std::uint32_t angle_den = 1;          // common denominator L
  std::vector<std::int32_t> angle_num;  // [0..Q-1]; -1 when gcd(n,Q) > 1
  std::vector<std::complex<double>> val;

  std::complex<double> operator()(std::uint64_t n) const {
    return val[n % modulus];
  }
  bool is_unit(std::uint64_t n) const {
    return angle_num[n % modulus] >= 0;
  }
};

struct CrtFactor {
  std::uint32_t prime = 0;
  int exponent = 0;
  std::uint32_t prime_power = 1;
  // generators of the unit group of Z/prime_power with their orders;
  // odd prime powers are cyclic (one generator), 2^e splits as {-1} x <5>
  std::vector<std::uint32_t> generators;
  std::vector<std::uint32_t> orders;
};

struct CharacterGroup {
  std::uint32_t modulus = 1;
  std::vector<CrtFactor> factors;
  std::vector<DirichletCharacter> chars;  // phi(Q) entries, chars[0] principal

  std::uint64_t phi() const { return chars.size(); }
};

CharacterGroup character_group(std::uint32_t Q);

// smallest c | Q such that the character factors through (Z/cZ)^x
std::uint32_t conductor(const DirichletCharacter& chi);

// ---- pretentiousness functionals ----

// multiplicative function sampled at primes, |value| <= 1
using MultFn = std::function<std::complex<double>(std::uint64_t)>;

struct PretentiousConfig {
  std::uint64_t prime_limit = 0;  // X; the t-search bound equals X
  double grid_step = 1e-2;
  int refine_iters = 30;
  bool even_in_t = false;  // set when nu is real-valued: D(t) = D(-t)
  int threads = 0;
};

// D(nu, nu', X) = sqrt( sum_{p<=X} (1 - Re nu(p) conj(nu'(p))) / p )
double pretentious_distance(const MultFn& nu, const MultFn& nup,
                            std::uint64_t X);
// same with nu'(p) = p^{it}
double pretentious_distance_t(const MultFn& nu, double t, std::uint64_t X);

struct MSearchResult {
  double value = 0.0;   // upper approximation of inf_{|t|<=X} D(nu, n^{it}, X)^2
  double t_at = 0.0;    // where the minimum was taken
  std::uint64_t grid_points = 0;
};

MSearchResult m_nonpretentious(const MultFn& nu, std::uint64_t X,
                               const PretentiousConfig& cfg);

// ready-made samplers
MultFn fn_one();
MultFn fn_mobius(const MobiusTable& t);
MultFn fn_mu_chi(const MobiusTable& t, const DirichletCharacter& chi);
MultFn fn_archimedean(double t);  // p -> p^{it}

}  // namespace skewlab::arith
