#include "skewlab/skew.hpp"

#include <cmath>

#include "skewlab/kahan.hpp"

namespace skewlab::skew {

double torus_distance(const TorusPoint& a, const TorusPoint& b) {
  return std::max(circle_norm(a.x - b.x), circle_norm(a.y - b.y));
}

std::complex<double> observe(const Observable& f, const TorusPoint& p) {
  double arg = double(f.xi1) * p.x + double(f.xi2) * p.y;
  return unit_circle(arg - std::floor(arg));
}

SkewProduct::SkewProduct(AlphaValue alpha, fourier::AnalyticCircleFunction h,
                         double divisor_floor)
    : alpha_(std::move(alpha)), h_(std::move(h)), floor_(divisor_floor) {}

void orbit_stream(const SkewProduct& T, TorusPoint p0, std::int64_t N,
                  const std::function<void(std::int64_t, TorusPoint)>& sink) {
  if (N < 1) throw UsageError("orbit: N must be >= 1");
  AlphaCursor cur(T.alpha());
  KahanD y;
  y.add(p0.y);
  for (std::int64_t n = 0; n < N; ++n) {
    double xf = cur.next();  // frac(n alpha)
    double x = p0.x + xf;
    if (x >= 1.0) x -= 1.0;
    TorusPoint p{x, reduce01(y.value())};
    sink(n, p);
    y.add(T.h().evaluate(x));
  }
}

std::vector<TorusPoint> orbit(const SkewProduct& T, TorusPoint p0,
                              std::int64_t N) {
  std::vector<TorusPoint> out;
  out.reserve(std::size_t(N));
  orbit_stream(T, p0, N,
               [&](std::int64_t, TorusPoint p) { out.push_back(p); });
  return out;
}

double cocycle_direct(const SkewProduct& T, std::int64_t n, double x) {
  if (n < 0) throw UsageError("cocycle_direct: n must be >= 0");
  AlphaCursor cur(T.alpha());
  KahanD acc;
  for (std::int64_t l = 0; l < n; ++l) {
    double xl = x + cur.next();
    if (xl >= 1.0) xl -= 1.0;
    acc.add(T.h().evaluate(xl));
  }
  return acc.value();
}

namespace {

// sum over m != 0 of hhat(m) * ratio_m * e(m x), using conjugate symmetry;
// ratio_m = (e(n m alpha) - 1) / (e(m alpha) - 1)
double fourier_tail(const SkewProduct& T, const BigInt& n, double x) {
  const auto& h = T.h();
  KahanD acc;
  for (long m : h.support_pos()) {
    double dth = T.alpha().signed_frac_times(std::int64_t(m));
    std::complex<double> den = unit_circle_m1(dth);
    if (std::abs(den) < T.divisor_floor())
      throw NearResonance("cocycle_fourier: |e(m alpha)-1| below floor at m=" +
                              std::to_string(m),
                          m);
    double nth = T.alpha().signed_frac_times(BigInt(n * m));
    std::complex<double> num = unit_circle_m1(nth);
    double mx = double(m) * x;
    std::complex<double> term =
        h.coeff(m) * (num / den) * unit_circle(mx - std::floor(mx));
    acc.add(2.0 * term.real());
  }
  return acc.value();
}

}  // namespace

double cocycle_fourier(const SkewProduct& T, std::int64_t n, double x) {
  if (n < 0) throw UsageError("cocycle_fourier: n must be >= 0");
  double zero_mode = double(n) * T.h().coeff(0).real();
  return zero_mode + fourier_tail(T, BigInt(long(n)), x);
}

double cocycle_fourier_deviation(const SkewProduct& T, const BigInt& n,
                                 double x) {
  return fourier_tail(T, n, x);
}

double cocycle_fourier_mod1(const SkewProduct& T, const BigInt& n, double x) {
  double zf = frac_bigint_times_double(n, T.h().coeff(0).real());
  return reduce01(zf + fourier_tail(T, n, x));
}

double cocycle_compose_check(const SkewProduct& T, std::int64_t n1,
                             std::int64_t n2, double x) {
  if (n1 < 1 || n2 < 1)
    throw UsageError("cocycle_compose_check: n1, n2 must be >= 1");
  double lhs = cocycle_direct(T, n1 * n2, x);
  AlphaCursor cur(T.alpha());  // walks l * alpha; sample every n2 steps
  KahanD rhs;
  for (std::int64_t l = 0; l < n1; ++l) {
    double base = 0.0;
    for (std::int64_t j = 0; j < n2; ++j) {
      double v = cur.next();
      if (j == 0) base = v;
    }
    double xl = x + base;
    if (xl >= 1.0) xl -= 1.0;
    rhs.add(cocycle_direct(T, n2, xl));
  }
  return std::abs(lhs - rhs.value());
}

double compose_residual_max(const SkewProduct& T, double x,
                            std::int64_t nmax) {
  // one shared table of h(x + j alpha); residuals then measure reordering only
  std::vector<double> hv(std::size_t(nmax));
  {
    AlphaCursor cur(T.alpha());
    for (std::int64_t j = 0; j < nmax; ++j) {
      double xj = x + cur.next();
      if (xj >= 1.0) xj -= 1.0;
      hv[std::size_t(j)] = T.h().evaluate(xj);
    }
  }
  // RHS groups the shared table into n1 blocks of n2
  auto rhs_grouped = [&](std::int64_t n1, std::int64_t n2) {
    KahanD outer;
    std::size_t idx = 0;
    for (std::int64_t l = 0; l < n1; ++l) {
      KahanD block;
      for (std::int64_t j = 0; j < n2; ++j) block.add(hv[idx++]);
      outer.add(block.value());
    }
    return outer.value();
  };
  double worst = 0.0;
  KahanD running;  // sequential prefix, same order as cocycle_direct
  for (std::int64_t n = 1; n <= nmax; ++n) {
    running.add(hv[std::size_t(n - 1)]);
    double lhs = running.value();
    for (std::int64_t d = 2; d * d <= n; ++d) {
      if (n % d) continue;
      std::int64_t e = n / d;
      worst = std::max(worst, std::abs(lhs - rhs_grouped(d, e)));
      if (e != d && e != 1)
        worst = std::max(worst, std::abs(lhs - rhs_grouped(e, d)));
    }
  }
  return worst;
}

SkewProduct derived_system(const SkewProduct& T, int p1, int p2, double x0,
                           int s) {
  auto is_prime = [](int p) {
    if (p < 2) return false;
    for (int f = 2; f * f <= p; ++f)
      if (p % f == 0) return false;
    return true;
  };
  if (p1 == p2) throw UsageError("derived_system: p1 and p2 must differ");
  if (!is_prime(p1) || !is_prime(p2))
    throw UsageError("derived_system: p1, p2 must be prime");
  if (s < 1) throw UsageError("derived_system: s must be >= 1");

  const auto& h = T.h();
  long mh = h.mmax();
  long mpsi = std::max(p1, p2) * mh;
  std::vector<std::complex<double>> t(std::size_t(2 * mpsi + 1), {0.0, 0.0});

  // psihat(m) = s ( hhat(m/p1) e((m/p1) x0) G_{p1}(m/p1)
  //               - hhat(m/p2) e((m/p2) x0) G_{p2}(m/p2) ),
  // G_p(mu) = sum_{l<p} e(l mu alpha), with hhat(theta) = 0 off the integers
  auto branch = [&](int p, long m) -> std::complex<double> {
    if (m % p) return {0.0, 0.0};
    long mu = m / p;
    std::complex<double> c = h.coeff(mu);
    if (c == std::complex<double>(0.0, 0.0)) return c;
    KahanC geom;
    for (int l = 0; l < p; ++l)
      geom.add(unit_circle(T.alpha().frac_times(std::int64_t(l) * mu)));
    double ph = double(mu) * x0;
    return c * unit_circle(ph - std::floor(ph)) * geom.value();
  };
  for (long m = 1; m <= mpsi; ++m) {
    std::complex<double> v =
        double(s) * (branch(p1, m) - branch(p2, m));
    t[std::size_t(m + mpsi)] = v;
    t[std::size_t(-m + mpsi)] = std::conj(v);
  }
  // the m = 0 entry reduces symbolically to s (p1 - p2) hhat(0)
  t[std::size_t(mpsi)] = {double(s) * double(p1 - p2) * h.coeff(0).real(), 0.0};

  double tau_psi = h.tau() / double(std::max(p1, p2));
  return SkewProduct(
      T.alpha(),
      fourier::AnalyticCircleFunction::from_coefficients(mpsi, tau_psi,
                                                         std::move(t)),
      T.divisor_floor());
}

double derived_orbit_check(const SkewProduct& T, int p1, int p2, double x0,
                           std::int64_t n) {
  SkewProduct Td = derived_system(T, p1, p2, x0, 1);
  // direct route: H(p1 k, x0) - H(p2 k, x0) accumulated stepwise
  AlphaCursor curA(T.alpha()), curB(T.alpha());
  KahanD HA, HB;
  double worst = 0.0;
  AlphaCursor curX(Td.alpha());
  KahanD ytil;
  for (std::int64_t k = 0; k <= n; ++k) {
    double xt = curX.next();  // x-coordinate of both routes, identical path
    TorusPoint derived{xt, reduce01(ytil.value())};
    TorusPoint direct{xt, reduce01(HA.value() - HB.value())};
    worst = std::max(worst, torus_distance(derived, direct));
    if (k == n) break;
    // advance the derived orbit
    double xarg = 0.0 + xt;
    ytil.add(Td.h().evaluate(xarg >= 1.0 ? xarg - 1.0 : xarg));
    // advance H(p1 (k+1), x0) and H(p2 (k+1), x0)
    for (int l = 0; l < p1; ++l) {
      double xl = x0 + curA.next();
      if (xl >= 1.0) xl -= 1.0;
      HA.add(T.h().evaluate(xl));
    }
    for (int l = 0; l < p2; ++l) {
      double xl = x0 + curB.next();
      if (xl >= 1.0) xl -= 1.0;
      HB.add(T.h().evaluate(xl));
    }
  }
  return worst;
}

double conjugation_check(const SkewProduct& T, const fourier::ResonantSet& M,
                         TorusPoint p0, std::int64_t n) {
  auto [h1, h2] = fourier::split_resonant(T.h(), M);
  fourier::AnalyticCircleFunction phi =
      fourier::coboundary_phi(h2, T.alpha(), {T.divisor_floor()});
  SkewProduct T1(T.alpha(), h1, T.divisor_floor());

  AlphaCursor cx(T.alpha());
  KahanD y, y1;
  y.add(p0.y);
  y1.add(p0.y);
  y1.add(-phi.evaluate(p0.x));  // Phi(p0)
  double worst = 0.0;
  for (std::int64_t k = 0; k <= n; ++k) {
    double xf = cx.next();
    double x = p0.x + xf;
    if (x >= 1.0) x -= 1.0;
    TorusPoint direct{x, reduce01(y.value())};
    TorusPoint conj{x, reduce01(y1.value() + phi.evaluate(x))};
    worst = std::max(worst, torus_distance(direct, conj));
    if (k == n) break;
    y.add(T.h().evaluate(x));
    y1.add(h1.evaluate(x));
  }
  return worst;
}

}  // namespace skewlab::skew
