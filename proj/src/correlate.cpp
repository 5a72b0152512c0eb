#include "skewlab/correlate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "skewlab/kahan.hpp"

namespace skewlab::correlate {

PeriodicObservable PeriodicObservable::from_values(
    std::uint32_t Q, std::vector<std::complex<double>> v) {
  if (Q == 0 || v.size() != Q)
    throw UsageError("PeriodicObservable: need exactly Q values");
  for (const auto& z : v)
    if (std::abs(z) > 1.0 + 1e-9)
      throw InvariantViolation("PeriodicObservable: |F| must be <= 1");
  PeriodicObservable F;
  F.period = Q;
  F.values = std::move(v);
  return F;
}

std::complex<double> davenport_sum(const AlphaValue& beta, std::uint64_t N,
                                   const arith::MobiusTable& mu) {
  if (N == 0) throw UsageError("davenport_sum: N must be >= 1");
  if (N > mu.limit) throw UsageError("davenport_sum: N exceeds sieve limit");
  AlphaCursor cur(beta, BigInt(1));
  KahanC acc;
  for (std::uint64_t n = 1; n <= N; ++n) {
    double th = cur.next();
    int m = mu.values[n];
    if (m) acc.add(double(m) * unit_circle(th));
  }
  return acc.value() / double(N);
}

CorrelationSeries davenport_series(const AlphaValue& beta,
                                   const std::vector<std::uint64_t>& checkpoints,
                                   const arith::MobiusTable& mu) {
  CorrelationSeries out;
  if (checkpoints.empty()) return out;
  std::uint64_t maxN = *std::max_element(checkpoints.begin(), checkpoints.end());
  if (maxN > mu.limit) throw UsageError("davenport_series: exceeds sieve limit");
  std::vector<std::uint64_t> cps = checkpoints;
  std::sort(cps.begin(), cps.end());
  AlphaCursor cur(beta, BigInt(1));
  KahanC acc;
  std::size_t ci = 0;
  for (std::uint64_t n = 1; n <= maxN; ++n) {
    double th = cur.next();
    int m = mu.values[n];
    if (m) acc.add(double(m) * unit_circle(th));
    while (ci < cps.size() && cps[ci] == n) {
      out.checkpoints.push_back({n, acc.value() / double(n)});
      ++ci;
    }
  }
  return out;
}

CorrelationSeries mobius_orbit_average(
    const skew::SkewProduct& T, const skew::Observable& f, skew::TorusPoint p0,
    const std::vector<std::uint64_t>& checkpoints,
    const arith::MobiusTable& mu) {
  CorrelationSeries out;
  if (checkpoints.empty()) return out;
  std::vector<std::uint64_t> cps = checkpoints;
  std::sort(cps.begin(), cps.end());
  std::uint64_t maxN = cps.back();
  if (maxN > mu.limit)
    throw UsageError("mobius_orbit_average: exceeds sieve limit");

  KahanC acc;
  std::size_t ci = 0;
  skew::orbit_stream(T, p0, std::int64_t(maxN) + 1,
                     [&](std::int64_t n, skew::TorusPoint p) {
                       if (n == 0) return;  // sum starts at T^1
                       int m = mu.values[std::uint64_t(n)];
                       if (m) acc.add(double(m) * observe(f, p));
                       while (ci < cps.size() &&
                              cps[ci] == std::uint64_t(n)) {
                         out.checkpoints.push_back(
                             {std::uint64_t(n), acc.value() / double(n)});
                         ++ci;
                       }
                     });

  if (f.xi2 == 0) {
    // pure rotation channel: must reproduce e(xi1 x0) davenport(xi1 alpha, .)
    AlphaValue beta = T.alpha().scaled(f.xi1);
    CorrelationSeries dav = davenport_series(beta, cps, mu);
    double a0 = double(f.xi1) * p0.x;
    std::complex<double> phase = unit_circle(a0 - std::floor(a0));
    for (std::size_t i = 0; i < out.checkpoints.size(); ++i) {
      std::complex<double> want = phase * dav.checkpoints[i].value;
      if (std::abs(want - out.checkpoints[i].value) > 1e-10)
        throw InvariantViolation(
            "mobius_orbit_average: xi2=0 channel disagrees with the "
            "exponential-sum route");
    }
  }
  return out;
}

BszResult bsz_correlation(const skew::SkewProduct& T, const skew::Observable& f,
                          skew::TorusPoint p0, int p1, int p2,
                          std::uint64_t N) {
  if (p1 == p2) throw UsageError("bsz_correlation: p1 and p2 must differ");
  if (N == 0) throw UsageError("bsz_correlation: N must be >= 1");
  int pmax = std::max(p1, p2);
  std::int64_t steps = std::int64_t(N) * pmax + 1;
  std::vector<std::complex<double>> f1(N + 1), f2(N + 1);
  skew::orbit_stream(T, p0, steps, [&](std::int64_t n, skew::TorusPoint p) {
    if (n == 0) return;
    if (n % p1 == 0 && std::uint64_t(n / p1) <= N)
      f1[std::size_t(n / p1)] = observe(f, p);
    if (n % p2 == 0 && std::uint64_t(n / p2) <= N)
      f2[std::size_t(n / p2)] = observe(f, p);
  });
  KahanC acc;
  for (std::uint64_t n = 1; n <= N; ++n) acc.add(f1[n] * std::conj(f2[n]));
  BszResult r;
  r.direct = acc.value() / double(N);

  // derived route: the product collapses to ftil(Ttil^n(0,0)) with
  // ftil(x,y) = f((p1-p2) x, y)
  skew::SkewProduct Td = skew::derived_system(T, p1, p2, p0.x, 1);
  skew::Observable ftil{f.xi1 * (std::int64_t(p1) - p2), f.xi2};
  KahanC accd;
  skew::orbit_stream(Td, {0.0, 0.0}, std::int64_t(N) + 1,
                     [&](std::int64_t n, skew::TorusPoint p) {
                       if (n == 0) return;
                       accd.add(observe(ftil, p));
                     });
  r.derived = accd.value() / double(N);
  r.route_gap = std::abs(r.direct - r.derived);
  return r;
}

PeriodicObservable sample_periodic_window(const skew::SkewProduct& T,
                                          const skew::Observable& f,
                                          skew::TorusPoint p0, std::uint64_t L,
                                          std::uint32_t period) {
  std::vector<std::complex<double>> vals(period);
  skew::orbit_stream(T, p0, std::int64_t(L + period),
                     [&](std::int64_t n, skew::TorusPoint p) {
                       if (std::uint64_t(n) < L) return;
                       vals[std::size_t(std::uint64_t(n) % period)] =
                           observe(f, p);
                     });
  return PeriodicObservable::from_values(period, std::move(vals));
}

BlockDecomposeReport block_decompose(const skew::SkewProduct& T,
                                     const skew::Observable& f,
                                     skew::TorusPoint p0,
                                     const arith::MobiusTable& mu,
                                     std::uint64_t N, std::uint64_t N0,
                                     std::uint64_t q_k, long A, long S) {
  if (!(N0 < N / 2)) throw UsageError("block_decompose: need N0 < N/2");
  std::uint64_t P = q_k * std::uint64_t(S);
  std::uint64_t K = P * std::uint64_t(A);
  if (K >= N) throw UsageError("block_decompose: A S q_k must stay below N");
  std::uint64_t top = N + K;  // windows reach up to N-1+K-1
  if (top > mu.limit) throw UsageError("block_decompose: exceeds sieve limit");

  // orbit values G(n) = f(T^n p0) for n < top, mu-weighted prefix sums
  std::vector<std::complex<double>> G(top);
  skew::orbit_stream(T, p0, std::int64_t(top),
                     [&](std::int64_t n, skew::TorusPoint p) {
                       G[std::size_t(n)] = observe(f, p);
                     });
  auto mu_at = [&](std::uint64_t n) -> double {
    return n == 0 ? 0.0 : double(mu.values[n]);
  };

  // prefU[j] = sum_{n<j} mu(n) G(n)
  std::vector<std::complex<double>> prefU(top + 1);
  {
    KahanC acc;
    prefU[0] = {0.0, 0.0};
    for (std::uint64_t n = 0; n < top; ++n) {
      acc.add(mu_at(n) * G[n]);
      prefU[n + 1] = acc.value();
    }
  }
  // V(n) = sum_{a<A} mu(n + aP), slid along each residue class mod P
  std::vector<double> V(top, 0.0);
  for (std::uint64_t r = 0; r < P; ++r) {
    double w = 0.0;
    // window starting at n needs mu up to n + (A-1)P < top + ... guard below
    std::uint64_t n0 = r;
    for (long a = 0; a < A; ++a) {
      std::uint64_t idx = n0 + std::uint64_t(a) * P;
      if (idx < top) w += mu_at(idx);
    }
    for (std::uint64_t n = n0; n < N; n += P) {
      V[n] = w;
      std::uint64_t in = n + K;
      w -= mu_at(n);
      if (in < top) w += mu_at(in);
    }
  }
  // prefW[j] = sum_{n<j} G(n) V(n)
  std::vector<std::complex<double>> prefW(N + P + 1);
  {
    KahanC acc;
    prefW[0] = {0.0, 0.0};
    for (std::uint64_t n = 0; n < N + P; ++n) {
      acc.add((n < N ? V[n] : 0.0) * G[n]);
      prefW[n + 1] = acc.value();
    }
  }

  BlockDecomposeReport rep;
  rep.period = P;
  rep.full_avg = prefU[N] / double(N);

  KahanC wg, wf;
  for (std::uint64_t L = N0; L < N; ++L) {
    wg.add((prefU[L + K] - prefU[L]) / double(K));
    // E_{n=L}^{L+K-1} mu(n) F_L(n) = (1/K) sum_{j<P} G(L+j) V(L+j)
    std::complex<double> s{0.0, 0.0};
    if (L + P <= N + P) s = prefW[L + P] - prefW[L];
    wf.add(s / double(K));
  }
  double denom = double(N - N0);
  rep.window_avg_g = wg.value() / denom;
  rep.window_avg_fl = wf.value() / denom;
  rep.boundary_residual = std::abs(rep.full_avg - rep.window_avg_g);
  rep.boundary_bound = 2.0 * (double(K) + double(N0)) / double(N);
  rep.substitution_residual = std::abs(rep.window_avg_fl - rep.window_avg_g);
  rep.pass_boundary = rep.boundary_residual <= rep.boundary_bound;
  return rep;
}

const arith::CharacterGroup& character_group_cached(std::uint32_t Q) {
  static std::mutex mtx;
  static std::map<std::uint32_t, std::unique_ptr<arith::CharacterGroup>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(Q);
  if (it == cache.end()) {
    auto g = std::make_unique<arith::CharacterGroup>(arith::character_group(Q));
    it = cache.emplace(Q, std::move(g)).first;
  }
  return *it->second;
}

std::vector<std::complex<double>> char_coefficients(
    const PeriodicObservable& F, std::uint64_t d,
    const arith::CharacterGroup& group) {
  std::uint64_t Q = F.period;
  if (d == 0 || Q % d != 0)
    throw UsageError("char_coefficients: d must divide the period");
  std::uint64_t Qd = Q / d;
  if (group.modulus != Qd)
    throw UsageError("char_coefficients: group modulus must be Q/d");
  std::uint64_t phi = group.phi();
  std::vector<std::complex<double>> w(phi, {0.0, 0.0});
  std::vector<KahanC> acc(phi);
  for (std::uint64_t r = 0; r < Qd; ++r) {
    if (std::gcd(r, Qd) != 1 && Qd != 1) continue;
    std::complex<double> g =
        (std::gcd(r, d) == 1 || d == 1) ? F.at(r * d) : std::complex<double>{};
    if (g == std::complex<double>(0.0, 0.0)) continue;
    for (std::uint64_t c = 0; c < phi; ++c)
      acc[c].add(g * std::conj(group.chars[c](r)));
  }
  for (std::uint64_t c = 0; c < phi; ++c)
    w[c] = acc[c].value() / double(phi);
  return w;
}

DirichletReport dirichlet_decompose(const PeriodicObservable& F,
                                    std::uint64_t L, long A,
                                    const arith::MobiusTable& mu) {
  if (A < 1) throw UsageError("dirichlet_decompose: A must be >= 1");
  std::uint64_t Q = F.period;
  std::uint64_t hi = L + std::uint64_t(A) * Q;
  if (hi > mu.limit + 1)
    throw UsageError("dirichlet_decompose: range exceeds sieve limit");

  DirichletReport rep;
  // left side of the regrouping identity
  {
    KahanC acc;
    for (std::uint64_t n = std::max<std::uint64_t>(L, 1); n < hi; ++n) {
      int m = mu.values[n];
      if (m) acc.add(double(m) * F.at(n));
    }
    rep.lhs_sum = acc.value();
  }
  // right side: group n by d = (n, Q); n = r d with (r, Q/d) = (r, d) = 1
  {
    KahanC acc;
    for (std::uint64_t d : arith::divisors(Q)) {
      int mud = mu.values[d];
      if (!mud) continue;
      std::uint64_t Qd = Q / d;
      std::uint64_t rlo = (L + d - 1) / d;          // ceil(L/d)
      std::uint64_t rhi = (hi + d - 1) / d;          // ceil(hi/d)
      for (std::uint64_t r = std::max<std::uint64_t>(rlo, 1); r < rhi; ++r) {
        if (std::gcd(r, Qd) != 1 || std::gcd(r, d) != 1) continue;
        int mur = (r <= mu.limit) ? mu.values[r] : 0;
        if (!mur) continue;
        acc.add(double(mud) * double(mur) * F.at(r * d));
      }
    }
    rep.rhs_sum = acc.value();
  }
  rep.identity_residual = std::abs(rep.lhs_sum - rep.rhs_sum);
  rep.pass_identity = rep.identity_residual <= 1e-10;

  double AQ = double(A) * double(Q);
  rep.lhs_avg_sq = std::norm(rep.lhs_sum / AQ);

  // pair average over (d, chi primitive mod Q/d) of |E mu(r) chi(r)|^2
  {
    KahanD pair_sum;
    std::uint64_t n_pairs = 0;
    double parseval_max = 0.0, recon_max = 0.0;
    for (std::uint64_t d : arith::divisors(Q)) {
      std::uint64_t Qd = Q / d;
      const arith::CharacterGroup& g = character_group_cached(std::uint32_t(Qd));
      std::uint64_t rlo = (L + d - 1) / d;
      std::uint64_t count = std::uint64_t(A) * Qd;  // integer points in [L/d, L/d + AQ/d)
      // per-character sums over the r-window
      std::vector<KahanC> sums(g.chars.size());
      for (std::uint64_t j = 0; j < count; ++j) {
        std::uint64_t r = rlo + j;
        // note: the window is [ceil(L/d), ceil(L/d)+A Qd) == integer points of
        // [L/d, L/d + A Qd)
        if (r < 1 || r > mu.limit) continue;
        int mur = mu.values[r];
        if (!mur) continue;
        for (std::size_t c = 0; c < g.chars.size(); ++c) {
          if (!g.chars[c].is_unit(r)) continue;
          sums[c].add(double(mur) * g.chars[c](r));
        }
      }
      for (std::size_t c = 0; c < g.chars.size(); ++c) {
        if (!g.chars[c].primitive) continue;
        ++n_pairs;
        std::complex<double> E = sums[c].value() / double(count);
        pair_sum.add(std::norm(E));
      }
      // Parseval and reconstruction for the all-characters decomposition
      auto w = char_coefficients(F, d, g);
      KahanD ps;
      for (const auto& z : w) ps.add(std::norm(z));
      parseval_max = std::max(parseval_max, ps.value());
      for (std::uint64_t r = 0; r < Qd; ++r) {
        if (std::gcd(r, Qd) != 1 && Qd != 1) continue;
        std::complex<double> rec{0.0, 0.0};
        for (std::size_t c = 0; c < g.chars.size(); ++c)
          rec += w[c] * g.chars[c](r);
        std::complex<double> gd = (std::gcd(r, d) == 1 || d == 1)
                                      ? F.at(r * d)
                                      : std::complex<double>{};
        recon_max = std::max(recon_max, std::abs(rec - gd));
      }
    }
    rep.n_pairs = n_pairs;
    rep.rhs_pair_avg = n_pairs ? pair_sum.value() / double(n_pairs) : 0.0;
    rep.parseval_max = parseval_max;
    rep.reconstruction_residual = recon_max;
  }
  rep.constant = (9.8696044010893586188 / 6.0) * double(Q);  // (pi^2/6) Q
  rep.pass_inequality =
      rep.lhs_avg_sq <= rep.constant * rep.rhs_pair_avg + 1e-12;
  rep.pass_parseval = rep.parseval_max <= 1.0 + 1e-12;
  return rep;
}

namespace {

template <class Window>
ShortIntervalResult short_interval_impl(std::uint64_t X, std::uint64_t l,
                                        std::uint64_t stride, Window&& win) {
  if (!(X >= l && l >= 10))
    throw UsageError("short_interval_avg: hypothesis requires X >= l >= 10");
  if (stride == 0) stride = 1;
  return win(X, l, stride);
}

}  // namespace

ShortIntervalResult short_interval_avg_mu(const arith::MobiusTable& mu,
                                          std::uint64_t X, std::uint64_t l,
                                          std::uint64_t stride) {
  return short_interval_impl(
      X, l, stride, [&](std::uint64_t X_, std::uint64_t l_, std::uint64_t st) {
        if (2 * X_ + l_ > mu.limit + 1)
          throw UsageError("short_interval_avg: exceeds sieve limit");
        ShortIntervalResult res;
        res.exact = true;
        res.stride = st;
        long w = 0;
        for (std::uint64_t n = X_; n < X_ + l_; ++n) w += mu.values[n];
        BigInt num = 0;
        std::uint64_t count = 0;
        long cur = w;
        for (std::uint64_t L = X_; L < 2 * X_; ++L) {
          if ((L - X_) % st == 0) {
            num += BigInt(cur) * cur;
            ++count;
          }
          cur += mu.values[L + l_] - mu.values[L];
        }
        res.exact_numerator = num;
        BigRat lhs = BigRat(num) / (BigRat(count) * BigRat(long(l_)) *
                                    BigRat(long(l_)));
        res.lhs = rat_to_double(lhs);
        return res;
      });
}

ShortIntervalResult short_interval_avg(
    const std::function<std::complex<double>(std::uint64_t)>& nu,
    std::uint64_t X, std::uint64_t l, std::uint64_t stride) {
  return short_interval_impl(
      X, l, stride, [&](std::uint64_t X_, std::uint64_t l_, std::uint64_t st) {
        ShortIntervalResult res;
        res.stride = st;
        // windows are recomputed block-fresh every ~4096 slides so the
        // complex window never accumulates drift
        KahanC win;
        for (std::uint64_t n = X_; n < X_ + l_; ++n) win.add(nu(n));
        KahanD acc;
        std::uint64_t count = 0;
        std::uint64_t since_rebuild = 0;
        for (std::uint64_t L = X_; L < 2 * X_; ++L) {
          if ((L - X_) % st == 0) {
            acc.add(std::norm(win.value() / double(l_)));
            ++count;
          }
          if (++since_rebuild == 4096) {
            since_rebuild = 0;
            KahanC w2;
            for (std::uint64_t n = L + 1; n < L + 1 + l_; ++n) w2.add(nu(n));
            win = w2;
          } else {
            win.add(nu(L + l_));
            win.add(-nu(L));
          }
        }
        res.lhs = acc.value() / double(count);
        return res;
      });
}

CorrelationSeries mu_chi_sum(const arith::DirichletCharacter& chi,
                             std::uint64_t X, const arith::MobiusTable& mu) {
  if (X > mu.limit) throw UsageError("mu_chi_sum: X exceeds sieve limit");
  CorrelationSeries out;
  KahanC acc;
  std::uint64_t next_cp = 1;
  for (std::uint64_t n = 1; n <= X; ++n) {
    int m = mu.values[n];
    if (m && chi.is_unit(n)) acc.add(double(m) * chi(n));
    if (n == next_cp || n == X) {
      out.checkpoints.push_back({n, acc.value()});
      while (next_cp <= n) next_cp *= 10;
    }
  }
  return out;
}

}  // namespace skewlab::correlate
