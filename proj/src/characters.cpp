#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "skewlab/arith.hpp"

// Character tables are built from the CRT decomposition of (Z/QZ)^x:
// one cyclic generator per odd prime power, and the {-1} x <5> pair for
// 2^e with e >= 3. Every character value is a root of unity e(a / L) with
// L the group exponent; the integer angle a is what gets stored, so
// orthogonality sums are the only place floating arithmetic enters.

namespace skewlab::arith {

namespace {

std::uint32_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return std::uint32_t(r);
}

std::uint32_t multiplicative_order(std::uint64_t g, std::uint64_t m,
                                   std::uint64_t group_order) {
  std::uint32_t ord = std::uint32_t(group_order);
  for (auto [p, e] : factorize(group_order)) {
    (void)e;
    while (ord % p == 0 && pow_mod(g, ord / p, m) == 1) ord /= std::uint32_t(p);
  }
  return ord;
}

// primitive root mod p^e for odd p
std::uint32_t primitive_root_odd(std::uint32_t p, int e) {
  std::uint64_t pe = 1;
  for (int i = 0; i < e; ++i) pe *= p;
  std::uint64_t phi_p = p - 1;
  auto fac = factorize(phi_p);
  std::uint32_t g = 0;
  for (std::uint32_t cand = 2; cand < p; ++cand) {
    bool ok = true;
    for (auto [q, ign] : fac) {
      (void)ign;
      if (pow_mod(cand, phi_p / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      g = cand;
      break;
    }
  }
  if (e == 1) return g;
  // lift: g works mod p^e unless g^(p-1) = 1 mod p^2
  if (pow_mod(g, p - 1, std::uint64_t(p) * p) == 1) g += p;
  (void)pe;
  return g;
}

struct FactorTables {
  CrtFactor f;
  // dlog[r] = exponent vector of residue r (index into generator powers);
  // only meaningful for units of prime_power
  std::vector<std::array<std::uint32_t, 2>> dlog;
};

FactorTables build_factor(std::uint32_t p, int e) {
  FactorTables ft;
  CrtFactor& f = ft.f;
  f.prime = p;
  f.exponent = e;
  f.prime_power = 1;
  for (int i = 0; i < e; ++i) f.prime_power *= p;
  std::uint32_t pe = f.prime_power;
  ft.dlog.assign(pe, {0, 0});
  if (p == 2) {
    if (e == 1) {
      // trivial unit group
      return ft;
    }
    if (e == 2) {
      f.generators = {3};
      f.orders = {2};
      ft.dlog[1] = {0, 0};
      ft.dlog[3] = {1, 0};
      return ft;
    }
    f.generators = {pe - 1, 5};  // -1 and 5
    f.orders = {2, pe / 4};
    std::uint64_t v = 1;
    for (std::uint32_t j = 0; j < pe / 4; ++j) {
      ft.dlog[v] = {0, j};
      ft.dlog[pe - std::uint32_t(v)] = {1, j};
      v = v * 5 % pe;
    }
    return ft;
  }
  std::uint32_t g = primitive_root_odd(p, e);
  std::uint32_t phi = pe / p * (p - 1);
  f.generators = {g};
  f.orders = {phi};
  std::uint64_t v = 1;
  for (std::uint32_t j = 0; j < phi; ++j) {
    ft.dlog[v] = {j, 0};
    v = v * g % pe;
  }
  return ft;
}

}  // namespace

CharacterGroup character_group(std::uint32_t Q) {
  if (Q == 0) throw UsageError("character_group: modulus must be >= 1");
  if (Q > 5000)
    throw BudgetExceeded("character_group: full dual-group tables are desk "
                         "scale only (Q <= 5000)");
  CharacterGroup G;
  G.modulus = Q;

  std::vector<FactorTables> fts;
  for (auto [p, e] : factorize(Q)) fts.push_back(build_factor(std::uint32_t(p), e));
  for (auto& ft : fts) G.factors.push_back(ft.f);

  // flattened list of (generator order) cyclic components across factors
  std::vector<std::uint32_t> orders;
  for (auto& ft : fts)
    for (std::uint32_t o : ft.f.orders) orders.push_back(o);

  std::uint64_t phi = 1;
  for (std::uint32_t o : orders) phi *= o;

  std::uint32_t L = 1;
  for (std::uint32_t o : orders) L = std::uint32_t(std::lcm(L, o));
  if (L == 0) L = 1;

  // per-residue exponent vectors (concatenated across factors)
  std::size_t ncomp = orders.size();
  std::vector<std::vector<std::uint32_t>> expv(Q);
  std::vector<bool> unit(Q, true);
  for (std::uint32_t n = 0; n < Q; ++n) {
    if (std::gcd<std::uint64_t>(n, Q) != 1) {
      unit[n] = false;
      continue;
    }
    std::vector<std::uint32_t> v;
    v.reserve(ncomp);
    for (auto& ft : fts) {
      std::uint32_t r = n % ft.f.prime_power;
      auto d = ft.dlog[r];
      for (std::size_t c = 0; c < ft.f.orders.size(); ++c) v.push_back(d[c]);
    }
    expv[n] = std::move(v);
  }
  if (Q == 1) {
    unit[0] = true;  // every integer is 0 mod 1 and coprime to 1
    expv[0] = {};
  }

  // mixed-radix enumeration of the dual group
  std::vector<std::uint32_t> idx(ncomp, 0);
  constexpr double tau = 6.283185307179586476925286766559;
  G.chars.reserve(phi);
  for (std::uint64_t c = 0; c < phi; ++c) {
    DirichletCharacter chi;
    chi.modulus = Q;
    chi.angle_den = L;
    chi.angle_num.assign(Q, -1);
    chi.val.assign(Q, {0.0, 0.0});
    bool principal = true;
    for (std::size_t i = 0; i < ncomp; ++i) principal &= (idx[i] == 0);
    chi.principal = principal;
    for (std::uint32_t n = 0; n < Q; ++n) {
      if (!unit[n]) continue;
      std::uint64_t a = 0;
      for (std::size_t i = 0; i < ncomp; ++i)
        a += std::uint64_t(idx[i]) * expv[n][i] % orders[i] * (L / orders[i]);
      a %= L;
      chi.angle_num[n] = std::int32_t(a);
      double th = tau * double(a) / double(L);
      chi.val[n] = {std::cos(th), std::sin(th)};
    }
    chi.conductor = conductor(chi);
    chi.primitive = (chi.conductor == Q);
    G.chars.push_back(std::move(chi));
    // increment mixed-radix index
    for (std::size_t i = 0; i < ncomp; ++i) {
      if (++idx[i] < orders[i]) break;
      idx[i] = 0;
    }
  }
  // keep the principal character first
  auto it = std::find_if(G.chars.begin(), G.chars.end(),
                         [](const DirichletCharacter& c) { return c.principal; });
  if (it != G.chars.begin() && it != G.chars.end())
    std::iter_swap(G.chars.begin(), it);
  return G;
}

std::uint32_t conductor(const DirichletCharacter& chi) {
  std::uint32_t Q = chi.modulus;
  for (std::uint64_t c : divisors(Q)) {
    // chi factors through c iff chi is trivial on units n == 1 (mod c)
    bool ok = true;
    for (std::uint64_t n = 1; n < Q && ok; n += c) {
      if (chi.angle_num[n] < 0) continue;  // not a unit mod Q
      if (chi.angle_num[n] != 0) ok = false;
    }
    if (Q == 1) ok = true;
    if (ok) return std::uint32_t(c);
  }
  return Q;
}

}  // namespace skewlab::arith
