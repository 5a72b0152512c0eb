#include "skewlab/cfrac.hpp"

#include <algorithm>
#include <cmath>

namespace skewlab::cfrac {

namespace {

void push_quotient(ContinuedFraction& cf, const BigInt& a) {
  if (a < 1) throw InvariantViolation("continued fraction: quotient < 1");
  std::size_t k = cf.quotients.size();
  BigInt pm1 = (k == 0) ? BigInt(1) : cf.p[k - 1];
  BigInt qm1 = (k == 0) ? BigInt(0) : cf.q[k - 1];
  cf.quotients.push_back(a);
  cf.p.push_back(a * cf.p[k] + pm1);
  cf.q.push_back(a * cf.q[k] + qm1);
}

ContinuedFraction fresh() {
  ContinuedFraction cf;
  cf.p = {BigInt(0)};
  cf.q = {BigInt(1)};
  return cf;
}

// Exact expansion of a quadratic surd through the integer recurrence on
// x_k = (P + sqrt(D))/Q with the invariant Q | D - P^2:
//   a = floor(x_k),  P' = a Q - P,  Q' = (D - P'^2)/Q.
ContinuedFraction expand_surd(const Surd& s, int K) {
  if (s.b == 0 || s.c == 0)
    throw UsageError("expand_cf: degenerate surd");
  if (s.d <= 0 || mpz_perfect_square_p(s.d.get_mpz_t()))
    throw UsageError("expand_cf: d must be positive and not a square");
  BigInt P = s.a * s.c;
  BigInt D = s.b * s.b * s.c * s.c * s.d;
  BigInt Q = s.c * s.c;
  if (s.b < 0) {  // (P - sqrt D)/Q = (-P + sqrt D)/(-Q)
    P = -P;
    Q = -Q;
  }
  BigInt delta;
  mpz_sqrt(delta.get_mpz_t(), D.get_mpz_t());

  auto floor_x = [&](const BigInt& Pv, const BigInt& Qv) {
    // sqrt(D) lies strictly between delta and delta+1
    BigInt r;
    if (Qv > 0) {
      BigInt M = Pv + delta;
      mpz_fdiv_q(r.get_mpz_t(), M.get_mpz_t(), Qv.get_mpz_t());
    } else {
      BigInt M = -(Pv + delta) - 1;
      BigInt Q2 = -Qv;
      mpz_fdiv_q(r.get_mpz_t(), M.get_mpz_t(), Q2.get_mpz_t());
    }
    return r;
  };

  if (floor_x(P, Q) != 0)
    throw UsageError("expand_cf: surd value must lie in (0,1)");

  // advance once with a_0 = 0: x <- 1/x
  P = -P;
  Q = (D - P * P) / Q;

  ContinuedFraction cf = fresh();
  for (int k = 0; k < K; ++k) {
    BigInt a = floor_x(P, Q);
    push_quotient(cf, a);
    P = a * Q - P;
    Q = (D - P * P) / Q;
  }
  return cf;
}

// interval Euclid over an exact rational enclosure; every emitted quotient is
// certified to agree across the whole enclosure
ContinuedFraction expand_interval(RatInterval x, int K,
                                  const std::string& what) {
  if (!(x.lo > 0 && x.hi < 1))
    throw UsageError("expand_cf: value must lie in (0,1)");
  ContinuedFraction cf = fresh();
  for (int k = 0; k < K; ++k) {
    BigRat ilo = 1 / x.hi, ihi = 1 / x.lo;
    BigInt flo, fhi;
    mpz_fdiv_q(flo.get_mpz_t(), ilo.get_num().get_mpz_t(),
               ilo.get_den().get_mpz_t());
    mpz_fdiv_q(fhi.get_mpz_t(), ihi.get_num().get_mpz_t(),
               ihi.get_den().get_mpz_t());
    if (flo != fhi)
      throw PrecisionExhausted("expand_cf: quotient " + std::to_string(k + 1) +
                               " of " + what +
                               " is ambiguous at the stated precision");
    push_quotient(cf, flo);
    BigRat nlo = ilo - BigRat(flo);
    BigRat nhi = ihi - BigRat(flo);
    if (nlo <= 0)
      throw PrecisionExhausted("expand_cf: continuation of " + what +
                               " is ambiguous at the stated precision");
    x = {nlo, nhi};
  }
  return cf;
}

}  // namespace

ContinuedFraction expand_rational_exact(const BigRat& v, int max_terms) {
  if (!(v > 0 && v < 1))
    throw UsageError("expand_rational_exact: value must lie in (0,1)");
  ContinuedFraction cf = fresh();
  BigInt num = v.get_num(), den = v.get_den();
  for (int k = 0; k < max_terms && num != 0; ++k) {
    BigInt a, r;
    mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), den.get_mpz_t(),
                num.get_mpz_t());
    push_quotient(cf, a);
    den = num;
    num = r;
  }
  return cf;
}

RatInterval ContinuedFraction::continuation_hull() const {
  int k = K();
  if (k < 1) throw UsageError("continuation_hull: empty expansion");
  BigRat a = convergent(k);
  BigRat b = BigRat(p[std::size_t(k)] + p[std::size_t(k) - 1]) /
             BigRat(q[std::size_t(k)] + q[std::size_t(k) - 1]);
  return (a <= b) ? RatInterval{a, b} : RatInterval{b, a};
}

IrrationalSpec IrrationalSpec::golden() {
  IrrationalSpec s;
  s.kind = Kind::surd;
  s.surd_v = Surd{BigInt(-1), BigInt(1), BigInt(2), BigInt(5)};
  return s;
}

IrrationalSpec IrrationalSpec::sqrt2_minus_1() {
  IrrationalSpec s;
  s.kind = Kind::surd;
  s.surd_v = Surd{BigInt(-1), BigInt(1), BigInt(1), BigInt(2)};
  return s;
}

IrrationalSpec IrrationalSpec::surd(const Surd& su) {
  IrrationalSpec s;
  s.kind = Kind::surd;
  s.surd_v = su;
  return s;
}

IrrationalSpec IrrationalSpec::pi_minus_3(int bits) {
  IrrationalSpec s;
  s.kind = Kind::pi_minus_3;
  s.prec_bits = bits;
  return s;
}

IrrationalSpec IrrationalSpec::decimal(const std::string& digits, int bits) {
  IrrationalSpec s;
  s.kind = Kind::decimal;
  s.prec_bits = bits;
  std::string t = digits;
  auto dot = t.find('.');
  std::string frac;
  if (dot != std::string::npos) {
    frac = t.substr(dot + 1);
    t = t.substr(0, dot);
  }
  if (t.empty()) t = "0";
  BigInt ip(t);
  BigInt fp(frac.empty() ? std::string("0") : frac);
  BigInt scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  s.literal = BigRat(ip) + BigRat(fp) / BigRat(scale);
  s.literal.canonicalize();
  return s;
}

IrrationalSpec IrrationalSpec::explicit_cf(std::vector<BigInt> quotients) {
  IrrationalSpec s;
  s.kind = Kind::explicit_cf;
  s.quotients = std::move(quotients);
  if (s.quotients.empty())
    throw UsageError("explicit_cf: need at least one quotient");
  for (const BigInt& a : s.quotients)
    if (a < 1) throw UsageError("explicit_cf: quotients must be >= 1");
  return s;
}

AlphaValue IrrationalSpec::value(int value_prec_bits) const {
  switch (kind) {
    case Kind::surd:
      return AlphaValue::surd(surd_v, value_prec_bits);
    case Kind::decimal:
      return AlphaValue::rational(literal);
    case Kind::explicit_cf: {
      ContinuedFraction cf = expand_cf(*this, int(quotients.size()));
      return AlphaValue::rational(cf.convergent(cf.K()));
    }
    case Kind::pi_minus_3: {
      RatInterval pi = pi_enclosure(std::max(value_prec_bits, prec_bits));
      return AlphaValue::rational(pi.lo - 3);
    }
  }
  throw UsageError("IrrationalSpec: bad kind");
}

RatInterval IrrationalSpec::enclosure(int want_bits) const {
  switch (kind) {
    case Kind::surd: {
      AlphaValue a = AlphaValue::surd(surd_v, want_bits);
      return a.enclosure(want_bits);
    }
    case Kind::decimal: {
      if (want_bits > prec_bits)
        throw PrecisionExhausted(
            "decimal literal holds only " + std::to_string(prec_bits) +
            " bits; " + std::to_string(want_bits) + " requested");
      BigRat eps = BigRat(1) / BigRat(BigInt(1) << unsigned(prec_bits));
      return {literal - eps, literal + eps};
    }
    case Kind::explicit_cf: {
      ContinuedFraction cf = expand_cf(*this, int(quotients.size()));
      return cf.continuation_hull();
    }
    case Kind::pi_minus_3: {
      int bits = std::max(want_bits, prec_bits);
      if (bits > (1 << 20)) throw PrecisionExhausted("pi enclosure budget");
      RatInterval pi = pi_enclosure(bits);
      return {pi.lo - 3, pi.hi - 3};
    }
  }
  throw UsageError("IrrationalSpec: bad kind");
}

std::string IrrationalSpec::describe() const {
  switch (kind) {
    case Kind::surd:
      return "(" + surd_v.a.get_str() + "+" + surd_v.b.get_str() + "*sqrt(" +
             surd_v.d.get_str() + "))/" + surd_v.c.get_str();
    case Kind::decimal:
      return "decimal@" + std::to_string(prec_bits) + "bits";
    case Kind::explicit_cf:
      return "cf[" + std::to_string(quotients.size()) + " quotients]";
    case Kind::pi_minus_3:
      return "pi-3@" + std::to_string(prec_bits) + "bits";
  }
  return "?";
}

ContinuedFraction expand_cf(const IrrationalSpec& spec, int K) {
  if (K < 1) throw UsageError("expand_cf: K must be >= 1");
  switch (spec.kind) {
    case IrrationalSpec::Kind::surd:
      return expand_surd(spec.surd_v, K);
    case IrrationalSpec::Kind::decimal: {
      BigRat eps = BigRat(1) / BigRat(BigInt(1) << unsigned(spec.prec_bits));
      return expand_interval({spec.literal - eps, spec.literal + eps}, K,
                             "decimal literal");
    }
    case IrrationalSpec::Kind::explicit_cf: {
      if (K > int(spec.quotients.size()))
        throw PrecisionExhausted("expand_cf: explicit quotient list has only " +
                                 std::to_string(spec.quotients.size()) +
                                 " terms");
      ContinuedFraction cf = fresh();
      for (int k = 0; k < K; ++k)
        push_quotient(cf, spec.quotients[std::size_t(k)]);
      return cf;
    }
    case IrrationalSpec::Kind::pi_minus_3: {
      RatInterval pi = pi_enclosure(spec.prec_bits);
      return expand_interval({pi.lo - 3, pi.hi - 3}, K, "pi-3");
    }
  }
  throw UsageError("expand_cf: bad kind");
}

QNormCheck qnorm_check(const ContinuedFraction& cf, const IrrationalSpec& spec,
                       int k) {
  if (k < 1 || k + 1 > cf.K())
    throw UsageError("qnorm_check: need 1 <= k <= K-1");
  QNormCheck out;
  const BigInt& qk = cf.qk(k);
  const BigInt& qk1 = cf.qk(k + 1);
  const BigInt& pk = cf.pk(k);
  out.lower = BigRat(1) / BigRat(qk1 + qk);
  out.upper = BigRat(1) / BigRat(qk1);

  bool open_endpoints = false;
  RatInterval alpha;
  if (spec.kind == IrrationalSpec::Kind::explicit_cf) {
    ContinuedFraction full = expand_cf(spec, int(spec.quotients.size()));
    if (k == full.K()) {
      out.value = {BigRat(0), BigRat(0)};
      out.out_of_domain = true;  // q_K alpha is an integer
      return out;
    }
    alpha = full.continuation_hull();
    open_endpoints = true;
  } else {
    int bits = std::max(96, k * 8);
    for (;;) {
      alpha = spec.enclosure(bits);  // throws once a fixed backing is exhausted
      BigRat w = BigRat(qk) * alpha.width();
      // enough separation to decide the strict comparisons
      if (w * 4 < out.upper - out.lower || bits >= (1 << 18)) break;
      bits *= 2;
    }
  }

  // ||q_k alpha|| = |q_k alpha - p_k| on the whole enclosure; linear in alpha
  BigRat flo = BigRat(qk) * alpha.lo - pk;
  BigRat fhi = BigRat(qk) * alpha.hi - pk;
  if (flo > fhi) std::swap(flo, fhi);
  BigRat vlo, vhi;
  if (flo >= 0) {
    vlo = flo;
    vhi = fhi;
  } else if (fhi <= 0) {
    vlo = -fhi;
    vhi = -flo;
  } else {
    vlo = 0;
    vhi = std::max(BigRat(-flo), fhi);
  }
  out.value = {vlo, vhi};
  if (open_endpoints) {
    // hull endpoints are excluded numbers: equality there still certifies
    out.strict = (vlo >= out.lower) && (vhi <= out.upper);
  } else {
    out.strict = (vlo > out.lower) && (vhi < out.upper);
  }
  return out;
}

namespace {

BigInt quotient_from_rule(double tau, GrowthRule rule, const BigInt& qk,
                          long max_bits) {
  BigRat t = rat_from_double(tau);
  BigRat x = (rule == GrowthRule::exponential) ? BigRat(t * qk / 2)
                                               : BigRat(t * qk);
  if (exp_bits_estimate(x) > double(max_bits))
    throw BudgetExceeded("liouville growth exceeds bit budget");
  return ceil_exp_div(x, qk) + 1;
}

}  // namespace

std::pair<IrrationalSpec, ContinuedFraction> construct_liouville(
    double tau, int K, GrowthRule rule, long max_bits) {
  if (!(tau > 0)) throw UsageError("construct_liouville: tau must be > 0");
  if (K < 2) throw UsageError("construct_liouville: K must be >= 2");
  ContinuedFraction cf = fresh();
  push_quotient(cf, BigInt(1));  // q_1 = 1
  for (int k = 1; k < K; ++k) {
    BigInt a;
    try {
      a = quotient_from_rule(tau, rule, cf.qk(k), max_bits);
    } catch (const BudgetExceeded&) {
      break;  // cap K so q_K fits the configured memory
    }
    push_quotient(cf, a);
  }
  IrrationalSpec spec = IrrationalSpec::explicit_cf(cf.quotients);
  return {spec, cf};
}

bool is_resonant_index(const ContinuedFraction& cf, double tau, int k) {
  if (k < 1 || k + 1 > cf.K()) return false;
  const BigInt& qk = cf.qk(k);
  const BigInt& qk1 = cf.qk(k + 1);
  // two-sided bit screen before any certified comparison
  double qkd = mpz_get_d(qk.get_mpz_t());
  double exp_bits = tau * qkd / 2 * 1.4426950408889634;
  double ub_bits = double(mpz_sizeinbase(qk1.get_mpz_t(), 2));
  if (exp_bits > ub_bits + 2) return false;
  if (exp_bits < ub_bits - 3) return true;
  BigRat x = rat_from_double(tau) * qk / 2;
  return cmp_exp(x, BigRat(qk1)) < 0;  // e^{tau q_k/2} < q_{k+1}
}

std::vector<int> resonant_indices(const ContinuedFraction& cf, double tau,
                                  const BigInt& b1) {
  std::vector<int> out;
  for (int k = 1; k + 1 <= cf.K(); ++k)
    if (cf.qk(k) >= b1 && is_resonant_index(cf, tau, k)) out.push_back(k);
  return out;
}

}  // namespace skewlab::cfrac
