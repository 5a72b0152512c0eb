#include "skewlab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "skewlab/parallel.hpp"

namespace skewlab::arith {

namespace {
// Above this the linear sieve's working set stops fitting comfortably and the
// segmented path takes over.
constexpr std::uint64_t kLinearLimit = 100'000'000ull;
constexpr std::uint64_t kDefaultSegment = 1ull << 20;
}  // namespace

long MobiusTable::mertens(std::uint64_t N) const {
  if (N > limit) throw UsageError("mertens: N exceeds table limit");
  long s = 0;
  for (std::uint64_t n = 1; n <= N; ++n) s += values[n];
  return s;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t N) {
  std::vector<std::uint8_t> comp(N + 1, 0);
  std::vector<std::uint32_t> ps;
  for (std::uint32_t i = 2; i <= N; ++i) {
    if (!comp[i]) {
      ps.push_back(i);
      for (std::uint64_t j = std::uint64_t(i) * i; j <= N; j += i)
        comp[j] = 1;
    }
  }
  return ps;
}

namespace {

MobiusTable mobius_linear(std::uint64_t N) {
  MobiusTable t;
  t.limit = N;
  t.values.assign(N + 1, 0);
  if (N >= 1) t.values[1] = 1;
  std::vector<std::uint8_t> comp(N + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= N; ++i) {
    if (!comp[i]) {
      primes.push_back(std::uint32_t(i));
      t.values[i] = -1;
    }
    for (std::uint32_t p : primes) {
      std::uint64_t ip = i * p;
      if (ip > N) break;
      comp[ip] = 1;
      if (i % p == 0) {
        t.values[ip] = 0;
        break;
      }
      t.values[ip] = -t.values[i];
    }
  }
  return t;
}

// mu over [lo, lo+len) using the base primes (all primes <= sqrt(hi))
void mobius_segment(std::uint64_t lo, std::uint64_t len,
                    const std::vector<std::uint32_t>& base,
                    std::vector<std::int8_t>& out,
                    std::vector<std::uint64_t>& rem) {
  out.assign(len, 1);
  rem.resize(len);
  for (std::uint64_t i = 0; i < len; ++i) rem[i] = lo + i;
  if (lo == 0) {
    out[0] = 0;  // mu(0) is not defined; slot kept zero
    rem[0] = 1;
  }
  for (std::uint32_t p : base) {
    std::uint64_t p2 = std::uint64_t(p) * p;
    if (p2 > lo + len - 1 && std::uint64_t(p) > lo + len - 1) break;
    std::uint64_t start = (lo + p - 1) / p * p;
    for (std::uint64_t n = start; n < lo + len; n += p) {
      std::uint64_t i = n - lo;
      out[i] = -out[i];
      rem[i] /= p;
    }
    if (p2 <= lo + len - 1) {
      std::uint64_t start2 = (lo + p2 - 1) / p2 * p2;
      for (std::uint64_t n = start2; n < lo + len; n += p2) out[n - lo] = 0;
    }
  }
  // a single prime factor above sqrt(hi) may remain
  for (std::uint64_t i = 0; i < len; ++i)
    if (rem[i] > 1) out[i] = -out[i];
  if (lo == 0 && len > 1) out[1] = 1;
}

}  // namespace

MobiusTable mobius_sieve(std::uint64_t N) {
  if (N == 0) throw UsageError("mobius_sieve: N must be >= 1");
  if (N <= kLinearLimit) return mobius_linear(N);
  return mobius_sieve_segmented(N, kDefaultSegment);
}

MobiusTable mobius_sieve_segmented(std::uint64_t N, std::uint64_t segment_len,
                                   int threads) {
  if (N == 0) throw UsageError("mobius_sieve: N must be >= 1");
  if (segment_len == 0) segment_len = kDefaultSegment;
  MobiusTable t;
  t.limit = N;
  t.values.assign(N + 1, 0);
  auto base = primes_up_to(std::uint32_t(std::sqrt(double(N))) + 1);
  std::int64_t nblocks = std::int64_t((N + segment_len) / segment_len);
  parallel_blocks(nblocks, threads, [&](std::int64_t b) {
    std::uint64_t lo = std::uint64_t(b) * segment_len;
    std::uint64_t hi = std::min(lo + segment_len, N + 1);
    if (hi <= lo) return;
    std::vector<std::int8_t> seg;
    std::vector<std::uint64_t> rem;
    mobius_segment(lo, hi - lo, base, seg, rem);
    std::copy(seg.begin(), seg.end(), t.values.begin() + long(lo));
  });
  if (N >= 1) t.values[1] = 1;
  return t;
}

void mobius_stream(std::uint64_t N, std::uint64_t segment_len,
                   const std::function<void(std::uint64_t,
                                            const std::vector<std::int8_t>&)>& f) {
  if (N == 0) throw UsageError("mobius_stream: N must be >= 1");
  if (segment_len == 0) segment_len = kDefaultSegment;
  auto base = primes_up_to(std::uint32_t(std::sqrt(double(N))) + 1);
  std::vector<std::int8_t> seg;
  std::vector<std::uint64_t> rem;
  for (std::uint64_t lo = 1; lo <= N; lo += segment_len) {
    std::uint64_t hi = std::min(lo + segment_len, N + 1);
    mobius_segment(lo, hi - lo, base, seg, rem);
    seg.resize(hi - lo);
    f(lo, seg);
  }
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  if (n == 0) throw UsageError("factorize: n must be >= 1");
  std::vector<std::pair<std::uint64_t, int>> out;
  auto strip = [&](std::uint64_t p) {
    if (n % p) return;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  };
  strip(2);
  strip(3);
  for (std::uint64_t f = 5; f * f <= n; f += 6) {
    strip(f);
    strip(f + 2);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t Q) {
  if (Q == 0) throw UsageError("divisors: Q must be >= 1");
  std::vector<std::uint64_t> out{1};
  for (auto [p, e] : factorize(Q)) {
    std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t r = n;
  for (auto [p, e] : factorize(n)) r -= r / p;
  return r;
}

std::uint64_t primitive_character_count(std::uint64_t c) {
  // multiplicative: p^1 -> p-2, p^e -> p^(e-2)(p-1)^2 for e >= 2; value at 1 is 1
  std::uint64_t r = 1;
  for (auto [p, e] : factorize(c)) {
    if (e == 1)
      r *= p - 2;  // phi(p) - phi(1); covers p = 2 giving 0
    else {
      std::uint64_t pe2 = 1;
      for (int i = 0; i < e - 2; ++i) pe2 *= p;
      r *= pe2 * (p - 1) * (p - 1);
    }
  }
  return r;
}

MultFn fn_one() {
  return [](std::uint64_t) { return std::complex<double>(1.0, 0.0); };
}

MultFn fn_mobius(const MobiusTable& t) {
  return [&t](std::uint64_t p) {
    return std::complex<double>(double(t.mu(p)), 0.0);
  };
}

MultFn fn_mu_chi(const MobiusTable& t, const DirichletCharacter& chi) {
  return [&t, &chi](std::uint64_t p) {
    return double(t.mu(p)) * chi(p);
  };
}

MultFn fn_archimedean(double t) {
  return [t](std::uint64_t p) {
    double a = t * std::log(double(p));
    return std::complex<double>(std::cos(a), std::sin(a));
  };
}

}  // namespace skewlab::arith
