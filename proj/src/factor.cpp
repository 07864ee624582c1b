#include "qfs/factor.hpp"

#include <algorithm>
#include <array>
#include <optional>

#include "qfs/errors.hpp"

namespace qfs {
namespace {

constexpr int kDegreeCap = 16;

// ---------- integer polynomials (lowest coefficient first) ----------

using ZPoly = std::vector<Integer>;

void ztrim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int zdeg(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1, Integer(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

// Exact division by a monic divisor; returns nullopt if the remainder is
// nonzero.
std::optional<ZPoly> zdiv_exact_monic(ZPoly f, const ZPoly& g) {
  int dg = zdeg(g);
  if (dg < 0 || g.back() != 1) throw InternalError("zdiv_exact_monic: bad divisor");
  if (zdeg(f) < dg) return f.empty() ? std::optional<ZPoly>(ZPoly{}) : std::nullopt;
  ZPoly q(f.size() - dg, Integer(0));
  while (zdeg(f) >= dg) {
    int k = zdeg(f) - dg;
    Integer c = f.back();
    q[k] = c;
    for (int i = 0; i <= dg; ++i) f[k + i] -= c * g[i];
    ztrim(f);
  }
  if (!f.empty()) return std::nullopt;
  return q;
}

Integer zmod(const Integer& x, const Integer& m) {
  Integer r = x % m;
  if (r < 0) r += m;
  return r;
}

ZPoly zp_reduce(ZPoly f, const Integer& m) {
  for (auto& c : f) c = zmod(c, m);
  ztrim(f);
  return f;
}

// Representative with coefficients in (-m/2, m/2].
ZPoly zp_sym(ZPoly f, const Integer& m) {
  for (auto& c : f) {
    c = zmod(c, m);
    if (2 * c > m) c -= m;
  }
  ztrim(f);
  return f;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b, const Integer& m) {
  return zp_reduce(zmul(a, b), m);
}

ZPoly zp_add(ZPoly a, const ZPoly& b, const Integer& m) {
  if (a.size() < b.size()) a.resize(b.size(), Integer(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] = zmod(a[i] + b[i], m);
  ztrim(a);
  return a;
}

ZPoly zp_sub(ZPoly a, const ZPoly& b, const Integer& m) {
  if (a.size() < b.size()) a.resize(b.size(), Integer(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] = zmod(a[i] - b[i], m);
  for (auto& c : a) c = zmod(c, m);
  ztrim(a);
  return a;
}

// Divisor must be monic (leading coefficient literally 1).
std::pair<ZPoly, ZPoly> zp_divrem_monic(ZPoly f, const ZPoly& g, const Integer& m) {
  int dg = zdeg(g);
  if (dg < 0 || g.back() != 1) throw InternalError("zp_divrem_monic: divisor not monic");
  f = zp_reduce(std::move(f), m);
  if (zdeg(f) < dg) return {ZPoly{}, f};
  ZPoly q(f.size() - dg, Integer(0));
  while (zdeg(f) >= dg) {
    int k = zdeg(f) - dg;
    Integer c = f.back();
    q[k] = c;
    for (int i = 0; i <= dg; ++i) f[k + i] = zmod(f[k + i] - c * g[i], m);
    ztrim(f);
  }
  return {q, f};
}

// ---------- polynomials over a small prime field (long coefficients) ----------

using PPoly = std::vector<long>;

void ptrim(PPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int pdeg(const PPoly& f) { return static_cast<int>(f.size()) - 1; }

long pinv(long a, long p) {
  long t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    long qt = r / nr;
    t -= qt * nt;
    std::swap(t, nt);
    r -= qt * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw InternalError("pinv: not invertible");
  return ((t % p) + p) % p;
}

PPoly pmul(const PPoly& a, const PPoly& b, long p) {
  if (a.empty() || b.empty()) return {};
  PPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  ptrim(c);
  return c;
}

std::pair<PPoly, PPoly> pdivrem(PPoly f, const PPoly& g, long p) {
  int dg = pdeg(g);
  if (dg < 0) throw InternalError("pdivrem: zero divisor");
  long lcinv = pinv(g.back(), p);
  if (pdeg(f) < dg) return {PPoly{}, f};
  PPoly q(f.size() - dg, 0);
  while (pdeg(f) >= dg) {
    int k = pdeg(f) - dg;
    long c = f.back() * lcinv % p;
    q[k] = c;
    for (int i = 0; i <= dg; ++i) f[k + i] = ((f[k + i] - c * g[i]) % p + p) % p;
    ptrim(f);
  }
  return {q, f};
}

PPoly pmonic(PPoly f, long p) {
  if (f.empty()) return f;
  long inv = pinv(f.back(), p);
  for (auto& c : f) c = c * inv % p;
  return f;
}

PPoly pgcd(PPoly a, PPoly b, long p) {
  while (!b.empty()) {
    auto r = pdivrem(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return pmonic(std::move(a), p);
}

PPoly pderiv(const PPoly& f, long p) {
  PPoly d;
  for (size_t i = 1; i < f.size(); ++i) d.push_back(static_cast<long>(i % p) * f[i] % p);
  ptrim(d);
  return d;
}

PPoly psub(PPoly a, const PPoly& b, long p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p + p) % p;
  ptrim(a);
  return a;
}

// X^e mod f by square and multiply.
PPoly ppow_x(long e, const PPoly& f, long p) {
  PPoly result{1};
  PPoly base{0, 1};
  base = pdivrem(base, f, p).second;
  while (e > 0) {
    if (e & 1) result = pdivrem(pmul(result, base, p), f, p).second;
    base = pdivrem(pmul(base, base, p), f, p).second;
    e >>= 1;
  }
  return result;
}

// Extended Euclid: s*a + t*b = 1 for coprime a, b.
void pegcd(const PPoly& a, const PPoly& b, long p, PPoly& s, PPoly& t) {
  PPoly r0 = a, r1 = b;
  PPoly s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = pdivrem(r0, r1, p);
    r0 = std::move(r1);
    r1 = std::move(r);
    PPoly s2 = psub(s0, pmul(q, s1, p), p);
    s0 = std::move(s1);
    s1 = std::move(s2);
    PPoly t2 = psub(t0, pmul(q, t1, p), p);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (pdeg(r0) != 0) throw InternalError("pegcd: inputs not coprime");
  long inv = pinv(r0[0], p);
  for (auto& c : s0) c = c * inv % p;
  for (auto& c : t0) c = c * inv % p;
  s = std::move(s0);
  t = std::move(t0);
}

// ---------- Berlekamp over F_p ----------

// Kernel basis of the Frobenius-minus-identity matrix of F_p[X]/(f); its
// dimension equals the number of irreducible factors of squarefree f.
std::vector<PPoly> berlekamp_subalgebra(const PPoly& f, long p) {
  int n = pdeg(f);
  PPoly w = ppow_x(p, f, p);  // X^p mod f
  // mat column j holds X^{pj} mod f, minus the unit vector e_j.
  std::vector<std::vector<long>> mat(n, std::vector<long>(n, 0));
  PPoly col{1};
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i <= pdeg(col); ++i) mat[i][j] = col[i];
    mat[j][j] = ((mat[j][j] - 1) % p + p) % p;
    col = pdivrem(pmul(col, w, p), f, p).second;
  }
  // Gaussian elimination mod p; kernel vectors from free columns.
  std::vector<int> pivot_of_col(n, -1);
  int r = 0;
  for (int c = 0; c < n && r < n; ++c) {
    int piv = -1;
    for (int i = r; i < n; ++i)
      if (mat[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(mat[piv], mat[r]);
    long inv = pinv(mat[r][c], p);
    for (int j = 0; j < n; ++j) mat[r][j] = mat[r][j] * inv % p;
    for (int i = 0; i < n; ++i) {
      if (i == r || mat[i][c] == 0) continue;
      long fct = mat[i][c];
      for (int j = 0; j < n; ++j) mat[i][j] = ((mat[i][j] - fct * mat[r][j]) % p + p) % p;
    }
    pivot_of_col[c] = r;
    ++r;
  }
  std::vector<PPoly> basis;
  for (int c = 0; c < n; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    PPoly v(n, 0);
    v[c] = 1;
    for (int cc = 0; cc < n; ++cc)
      if (pivot_of_col[cc] >= 0) v[cc] = (p - mat[pivot_of_col[cc]][c]) % p;
    ptrim(v);
    basis.push_back(std::move(v));
  }
  return basis;
}

bool ppoly_less(const PPoly& a, const PPoly& b) {
  if (pdeg(a) != pdeg(b)) return pdeg(a) < pdeg(b);
  for (int i = pdeg(a); i >= 0; --i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

// Full Berlekamp split of monic squarefree f mod p.
std::vector<PPoly> berlekamp_factor(const PPoly& f, long p) {
  auto basis = berlekamp_subalgebra(f, p);
  size_t r = basis.size();
  std::vector<PPoly> factors{f};
  for (const auto& v : basis) {
    if (factors.size() == r) break;
    if (pdeg(v) < 1) continue;  // the constants split nothing
    std::vector<PPoly> next;
    for (const auto& g : factors) {
      if (pdeg(g) == 1) {
        next.push_back(g);
        continue;
      }
      PPoly rest = g;
      for (long c = 0; c < p && pdeg(rest) > 0; ++c) {
        PPoly shifted = v;
        if (shifted.empty()) shifted.push_back(0);
        shifted[0] = ((shifted[0] - c) % p + p) % p;
        ptrim(shifted);
        PPoly d = pgcd(rest, shifted, p);
        if (pdeg(d) > 0 && pdeg(d) < pdeg(rest)) {
          next.push_back(d);
          rest = pmonic(pdivrem(rest, d, p).first, p);
        }
      }
      if (pdeg(rest) > 0) next.push_back(rest);
    }
    factors = std::move(next);
  }
  std::sort(factors.begin(), factors.end(), ppoly_less);
  return factors;
}

// ---------- Hensel lifting ----------

// One step: from a factorization mod m to the same data mod m^2.
// Invariants: f = g*h (mod m), s*g + t*h = 1 (mod m), g monic.
// The corrections solve g*v + h*u = e with u = rem(t*e, g), keeping g monic.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const Integer& m) {
  Integer m2 = m * m;
  ZPoly e = zp_sub(zp_reduce(f, m2), zp_mul(g, h, m2), m2);
  auto [q, u] = zp_divrem_monic(zp_mul(t, e, m2), g, m2);
  ZPoly g1 = zp_add(g, u, m2);
  ZPoly h1 = zp_add(zp_add(h, zp_mul(s, e, m2), m2), zp_mul(q, h, m2), m2);
  if (g1.empty() || g1.back() != 1 || zdeg(g1) != zdeg(g) || h1.empty() || h1.back() != 1 ||
      zdeg(h1) != zdeg(h))
    throw InternalError("hensel_step: lost monic invariant");
  ZPoly b = zp_sub(zp_add(zp_mul(s, g1, m2), zp_mul(t, h1, m2), m2), ZPoly{1}, m2);
  auto [c, d] = zp_divrem_monic(zp_mul(t, b, m2), g1, m2);
  (void)c;
  ZPoly t1 = zp_sub(t, d, m2);
  // 1 - t1*h1 is divisible by monic g1 mod m^2; the quotient is the updated
  // cofactor with degree below deg h1.
  auto [s1, rem] = zp_divrem_monic(zp_sub(ZPoly{1}, zp_mul(t1, h1, m2), m2), g1, m2);
  if (!rem.empty()) throw InternalError("hensel_step: cofactor update failed");
  g = std::move(g1);
  h = std::move(h1);
  s = std::move(s1);
  t = std::move(t1);
}

ZPoly ppoly_to_z(const PPoly& f) {
  ZPoly z;
  z.reserve(f.size());
  for (long c : f) z.emplace_back(c);
  return z;
}

// Lift target = prod(parts) (mod p) to mod p^(2^steps), recursing on a
// binary split of the parts.  target must be monic.
std::vector<ZPoly> hensel_tree(const ZPoly& target, const std::vector<PPoly>& parts, long p,
                               int steps, const Integer& final_mod) {
  if (parts.size() == 1) return {zp_reduce(target, final_mod)};
  size_t half = parts.size() / 2;
  std::vector<PPoly> left(parts.begin(), parts.begin() + half);
  std::vector<PPoly> right(parts.begin() + half, parts.end());
  PPoly g0{1}, h0{1};
  for (const auto& q : left) g0 = pmul(g0, q, p);
  for (const auto& q : right) h0 = pmul(h0, q, p);
  PPoly s0, t0;
  pegcd(g0, h0, p, s0, t0);
  ZPoly g = ppoly_to_z(g0), h = ppoly_to_z(h0);
  ZPoly s = ppoly_to_z(s0), t = ppoly_to_z(t0);
  Integer m(p);
  for (int i = 0; i < steps; ++i) {
    hensel_step(target, g, h, s, t, m);
    m *= m;
  }
  auto out = hensel_tree(g, left, p, steps, final_mod);
  auto rhs = hensel_tree(h, right, p, steps, final_mod);
  out.insert(out.end(), rhs.begin(), rhs.end());
  return out;
}

// ---------- squarefree factorization over Z ----------

bool small_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PPoly z_to_p(const ZPoly& f, long p) {
  PPoly r;
  r.reserve(f.size());
  for (const auto& c : f) r.push_back(mpz_class(zmod(c, Integer(p))).get_si());
  ptrim(r);
  return r;
}

// Coefficient bound for monic factors of monic f (Mignotte style, generous).
Integer factor_bound(const ZPoly& f) {
  Integer norm2(0);
  for (const auto& c : f) norm2 += c * c;
  Integer root = sqrt(norm2) + 1;
  int n = zdeg(f);
  Integer binom(1);
  for (int i = 1; i <= n / 2; ++i) binom = binom * (n - i + 1) / i;
  return binom * root;
}

// Factors a primitive squarefree integer polynomial with positive leading
// coefficient into monic rational irreducibles.
std::vector<UPoly> factor_squarefree(const ZPoly& s) {
  int n = zdeg(s);
  const Integer& a = s.back();
  auto monic_q = [&](const ZPoly& g) {
    std::vector<Rational> coeffs(g.size());
    Rational lc(g.back());
    for (size_t i = 0; i < g.size(); ++i) coeffs[i] = Rational(g[i]) / lc;
    return UPoly(std::move(coeffs));
  };
  if (n == 1) return {monic_q(s)};

  // Monic model: F(Y) = a^(n-1) * s(Y/a); its monic factors G correspond to
  // factors of s via X -> G(aX) up to a scalar.
  ZPoly fmon(n + 1);
  fmon[n] = 1;
  Integer pw(1);
  for (int j = n - 1; j >= 0; --j) {
    fmon[j] = s[j] * pw;
    pw *= a;
  }

  // Pick a prime keeping F squarefree; among the first three that work,
  // prefer the one giving the fewest modular factors.
  static const std::array<long, 13> kPrimes{3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43};
  long best_p = 0;
  size_t best_r = 0;
  int tried = 0;
  auto consider = [&](long p) {
    PPoly fp = z_to_p(fmon, p);
    if (pdeg(fp) != n) return false;  // cannot happen for monic F, kept for safety
    if (pdeg(pgcd(fp, pderiv(fp, p), p)) != 0) return false;
    size_t r = berlekamp_subalgebra(fp, p).size();
    if (best_p == 0 || r < best_r) {
      best_p = p;
      best_r = r;
    }
    ++tried;
    return true;
  };
  for (long p : kPrimes) {
    consider(p);
    if (tried >= 3) break;
  }
  if (best_p == 0) {
    // Every listed prime divides the discriminant; scan upward.
    for (long p = 47; best_p == 0; p += 2) {
      if (!small_prime(p)) continue;
      consider(p);
    }
  }
  long p = best_p;

  PPoly fp = z_to_p(fmon, p);
  auto modular = berlekamp_factor(fp, p);
  if (modular.size() == 1) return {monic_q(s)};

  Integer bound = factor_bound(fmon);
  Integer modulus(p);
  int steps = 0;
  while (modulus <= 2 * bound) {
    modulus *= modulus;
    ++steps;
  }
  auto lifted = hensel_tree(zp_reduce(fmon, modulus), modular, p, steps, modulus);

  // Zassenhaus recombination: try subsets of the lifted factors by size.
  std::vector<ZPoly> found;
  ZPoly rest = fmon;
  size_t card = 1;
  while (2 * card <= lifted.size()) {
    std::vector<size_t> idx(card);
    for (size_t i = 0; i < card; ++i) idx[i] = i;
    bool hit = false;
    while (true) {
      ZPoly cand{1};
      for (size_t i : idx) cand = zp_mul(cand, lifted[i], modulus);
      cand = zp_sym(std::move(cand), modulus);
      if (!cand.empty() && cand.back() == 1) {
        if (auto quo = zdiv_exact_monic(rest, cand)) {
          found.push_back(cand);
          rest = std::move(*quo);
          std::vector<ZPoly> keep;
          for (size_t i = 0, k = 0; i < lifted.size(); ++i) {
            if (k < idx.size() && idx[k] == i) {
              ++k;
              continue;
            }
            keep.push_back(std::move(lifted[i]));
          }
          lifted = std::move(keep);
          hit = true;
          break;
        }
      }
      // next subset of the same size, lexicographic
      int pos = static_cast<int>(card) - 1;
      while (pos >= 0 && idx[pos] == lifted.size() - card + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (size_t i = pos + 1; i < card; ++i) idx[i] = idx[i - 1] + 1;
    }
    if (!hit) ++card;
  }
  if (zdeg(rest) > 0) found.push_back(rest);

  ZPoly check{1};
  for (const auto& g : found) check = zmul(check, g);
  if (check != fmon) throw InternalError("factor_squarefree: recombination check failed");

  // Map each monic factor G of F back through X -> aX and renormalize.
  std::vector<UPoly> out;
  for (const auto& g : found) {
    ZPoly back(g.size());
    Integer apow(1);
    for (size_t i = 0; i < g.size(); ++i) {
      back[i] = g[i] * apow;
      apow *= a;
    }
    out.push_back(monic_q(back));
  }
  std::sort(out.begin(), out.end(), poly_less);
  return out;
}

// Primitive integer model of a rational polynomial, positive leading
// coefficient.
ZPoly to_primitive_z(const UPoly& f) {
  Integer den(1);
  for (int i = 0; i <= f.degree(); ++i) den = lcm(den, f[i].get_den());
  ZPoly z(f.degree() + 1);
  Integer content(0);
  for (int i = 0; i <= f.degree(); ++i) {
    z[i] = f[i].get_num() * (den / f[i].get_den());
    content = gcd(content, z[i]);
  }
  if (sgn(z.back()) < 0) content = -content;
  for (auto& c : z) c /= content;
  return z;
}

}  // namespace

bool poly_less(const UPoly& a, const UPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

std::vector<std::pair<UPoly, int>> squarefree_decompose(const UPoly& f) {
  if (f.is_zero()) throw InternalError("squarefree_decompose: zero polynomial");
  std::vector<std::pair<UPoly, int>> out;
  if (f.degree() == 0) return out;
  UPoly fm = f.monic();
  UPoly df = fm.derivative();
  UPoly a0 = poly_gcd(fm, df);
  UPoly b = fm.divrem(a0).first;
  UPoly c = df.divrem(a0).first;
  UPoly d = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    UPoly ai = poly_gcd(b, d);
    if (ai.degree() > 0) out.emplace_back(ai, i);
    b = b.divrem(ai).first;
    c = d.divrem(ai).first;
    d = c - b.derivative();
  }
  return out;
}

Factorization factor_rational(const UPoly& f) {
  if (f.is_zero()) throw InternalError("factor_rational: zero polynomial");
  if (f.degree() > kDegreeCap)
    throw DegreeCapExceeded("polynomial degree " + std::to_string(f.degree()) +
                            " exceeds the factorization cap of " + std::to_string(kDegreeCap));
  Factorization result;
  result.unit = f.lc();
  for (const auto& [part, mult] : squarefree_decompose(f)) {
    for (const auto& irr : factor_squarefree(to_primitive_z(part)))
      result.factors.push_back({irr, mult});
  }
  std::sort(result.factors.begin(), result.factors.end(),
            [](const FactorPower& x, const FactorPower& y) { return poly_less(x.factor, y.factor); });
  UPoly check = UPoly::constant(result.unit);
  for (const auto& fp : result.factors) check = check * fp.factor.pow(fp.multiplicity);
  if (!(check == f)) throw InternalError("factor_rational: expansion check failed");
  return result;
}

bool is_irreducible(const UPoly& f) {
  if (f.degree() < 1) return false;
  auto fac = factor_rational(f);
  return fac.factors.size() == 1 && fac.factors[0].multiplicity == 1;
}

}  // namespace qfs
