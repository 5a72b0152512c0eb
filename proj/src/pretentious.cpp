#include <cmath>
#include <cstring>

#include "skewlab/arith.hpp"
#include "skewlab/kahan.hpp"
#include "skewlab/parallel.hpp"

// The t-search for the closest Archimedean twist scans a uniform grid over
// [-X, X] (or [0, X] when the distance is even in t) and then runs a
// golden-section refinement around the best grid point. Grid values use a
// per-prime rotation recurrence; every candidate that can become the returned
// minimum is re-evaluated by the direct per-prime sum, so the result is a
// genuine distance value at some |t| <= X and hence an upper bound for the
// infimum.

namespace skewlab::arith {

namespace {

struct PrimeData {
  std::vector<double> logp;
  std::vector<double> wr, wi;  // nu(p)/p
  double s0 = 0.0;             // sum 1/p (over p <= X)
};

PrimeData collect(const MultFn& nu, std::uint64_t X) {
  PrimeData d;
  auto ps = primes_up_to(std::uint32_t(X));
  d.logp.reserve(ps.size());
  d.wr.reserve(ps.size());
  d.wi.reserve(ps.size());
  KahanD s0;
  for (std::uint32_t p : ps) {
    std::complex<double> v = nu(p);
    if (std::abs(v) > 1.0 + 1e-12)
      throw InvariantViolation("pretentious: |nu(p)| exceeds 1");
    double ip = 1.0 / double(p);
    d.logp.push_back(std::log(double(p)));
    d.wr.push_back(v.real() * ip);
    d.wi.push_back(v.imag() * ip);
    s0.add(ip);
  }
  d.s0 = s0.value();
  return d;
}

// g(t) = sum_p Re(nu(p) p^{-it}) / p, evaluated directly
double g_direct(const PrimeData& d, double t) {
  KahanD acc;
  for (std::size_t i = 0; i < d.logp.size(); ++i) {
    double a = t * d.logp[i];
    acc.add(d.wr[i] * std::cos(a) + d.wi[i] * std::sin(a));
  }
  return acc.value();
}

struct Candidate {
  double g = -1e300;
  double t = 0.0;
};

// best grid point of a chunk via the rotation recurrence (lane-parallel over
// primes so the compiler can vectorize the independent updates)
Candidate scan_chunk(const PrimeData& d, double t0, double dt,
                     std::int64_t count) {
  constexpr std::size_t LANES = 8;
  std::size_t n = d.logp.size();
  std::vector<double> acc(std::size_t(count), 0.0);
  std::vector<double> c(n), s(n), rc(n), rs(n);
  for (std::size_t i = 0; i < n; ++i) {
    double a0 = t0 * d.logp[i];
    c[i] = std::cos(a0);
    s[i] = std::sin(a0);
    double ad = dt * d.logp[i];
    rc[i] = std::cos(ad);
    rs[i] = std::sin(ad);
  }
  std::size_t nfull = n - n % LANES;
  for (std::int64_t j = 0; j < count; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < nfull; i += LANES) {
      double part = 0.0;
      for (std::size_t l = 0; l < LANES; ++l) {
        std::size_t k = i + l;
        part += d.wr[k] * c[k] + d.wi[k] * s[k];
        double cn = c[k] * rc[k] - s[k] * rs[k];
        double sn = s[k] * rc[k] + c[k] * rs[k];
        c[k] = cn;
        s[k] = sn;
      }
      sum += part;
    }
    for (std::size_t k = nfull; k < n; ++k) {
      sum += d.wr[k] * c[k] + d.wi[k] * s[k];
      double cn = c[k] * rc[k] - s[k] * rs[k];
      double sn = s[k] * rc[k] + c[k] * rs[k];
      c[k] = cn;
      s[k] = sn;
    }
    acc[std::size_t(j)] = sum;
  }
  Candidate best;
  for (std::int64_t j = 0; j < count; ++j) {
    if (acc[std::size_t(j)] > best.g) {
      best.g = acc[std::size_t(j)];
      best.t = t0 + double(j) * dt;
    }
  }
  return best;
}

}  // namespace

double pretentious_distance(const MultFn& nu, const MultFn& nup,
                            std::uint64_t X) {
  if (X < 2) return 0.0;  // empty prime sum
  auto ps = primes_up_to(std::uint32_t(X));
  KahanD acc;
  for (std::uint32_t p : ps) {
    std::complex<double> a = nu(p), b = nup(p);
    if (std::abs(a) > 1.0 + 1e-12 || std::abs(b) > 1.0 + 1e-12)
      throw InvariantViolation("pretentious_distance: |nu(p)| exceeds 1");
    acc.add((1.0 - (a * std::conj(b)).real()) / double(p));
  }
  double v = acc.value();
  return std::sqrt(v > 0 ? v : 0.0);
}

double pretentious_distance_t(const MultFn& nu, double t, std::uint64_t X) {
  return pretentious_distance(nu, fn_archimedean(t), X);
}

MSearchResult m_nonpretentious(const MultFn& nu, std::uint64_t X,
                               const PretentiousConfig& cfg) {
  if (cfg.grid_step <= 0) throw UsageError("m_nonpretentious: empty grid");
  MSearchResult res;
  if (X < 2) return res;
  PrimeData d = collect(nu, X);

  double tlo = cfg.even_in_t ? 0.0 : -double(X);
  double thi = double(X);
  std::int64_t npts = std::int64_t(std::floor((thi - tlo) / cfg.grid_step)) + 1;
  res.grid_points = std::uint64_t(npts) * (cfg.even_in_t ? 2 : 1);

  // fixed chunking, independent of thread count
  std::int64_t chunk = 1 << 15;
  std::int64_t nchunks = (npts + chunk - 1) / chunk;
  std::vector<Candidate> per(std::size_t(nchunks));
  parallel_blocks(nchunks, cfg.threads, [&](std::int64_t b) {
    std::int64_t j0 = b * chunk;
    std::int64_t cnt = std::min(chunk, npts - j0);
    per[std::size_t(b)] =
        scan_chunk(d, tlo + double(j0) * cfg.grid_step, cfg.grid_step, cnt);
  });
  Candidate best = tree_reduce(per, Candidate{}, [](Candidate a, Candidate b) {
    return (b.g > a.g) ? b : a;
  });

  // authoritative value at the located point
  double gbest = g_direct(d, best.t);
  double tbest = best.t;

  // golden-section refinement of the one-dimensional maximum of g
  double a = std::max(tlo, best.t - cfg.grid_step);
  double b = std::min(thi, best.t + cfg.grid_step);
  const double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
  double f1 = g_direct(d, x1), f2 = g_direct(d, x2);
  for (int it = 0; it < cfg.refine_iters; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = g_direct(d, x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = g_direct(d, x1);
    }
    double fx = std::max(f1, f2);
    double tx = (f1 > f2) ? x1 : x2;
    if (fx > gbest) {
      gbest = fx;
      tbest = tx;
    }
  }

  double m = d.s0 - gbest;
  res.value = m > 0 ? m : 0.0;
  res.t_at = tbest;
  return res;
}

}  // namespace skewlab::arith
