#include "qfs/pairs.hpp"

#include <algorithm>
#include <string>

#include "qfs/algebra.hpp"
#include "qfs/closure.hpp"
#include "qfs/errors.hpp"
#include "qfs/factor.hpp"
#include "qfs/involution.hpp"

namespace qfs {

namespace {

void require_pair(const QFSystem& sys) {
  validate_system(sys);
  if (sys.count() != 2)
    throw MathError("expected a pair of forms, got " + std::to_string(sys.count()));
}

// True iff a and b are the same real algebraic number.
bool same_real_root(const RealRoot& a, RealRoot b) {
  if (a.exact() && b.exact()) return a.lo == b.lo;
  if (a.exact()) return same_real_root(b, a);
  // a is a proper interval; b is equal to a iff b is a root of a.defining
  // lying strictly inside a's isolating interval.
  if (sign_at_root(a.defining, b) != 0) return false;
  while (true) {
    if (a.lo < b.lo && b.hi < a.hi) return true;
    if (b.hi <= a.lo || a.hi <= b.lo) return false;
    refine_root(b, (b.hi - b.lo) / 4);
    if (b.exact()) return a.lo < b.lo && b.lo < a.hi;
  }
}

Rational enclosure_mid(const RealRoot& r) { return (r.lo + r.hi) / 2; }

bool enclosures_overlap(const RealRoot& a, const RealRoot& b) {
  return !(a.hi < b.lo || b.hi < a.lo);
}

UPoly lagrange_through(const std::vector<Rational>& xs, const std::vector<int>& ys) {
  UPoly f;
  for (size_t i = 0; i < xs.size(); ++i) {
    UPoly term = UPoly::constant(Rational(ys[i]));
    for (size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      UPoly lin(QVector{-xs[j], Rational(1)});
      term = term * lin.scaled(1 / (xs[i] - xs[j]));
    }
    f = f + term;
  }
  return f;
}

QMatrix companion(const UPoly& f) {
  const int m = f.degree();
  QMatrix c(m, m);
  for (int j = 0; j + 1 < m; ++j) c.at(j + 1, j) = 1;
  for (int i = 0; i < m; ++i) c.at(i, m - 1) = -f[i];
  return c;
}

}  // namespace

HermSpace to_herm(const QFSystem& pair) {
  require_pair(pair);
  HermSpace h;
  h.arrow.dim_u = h.arrow.dim_v = pair.dim;
  h.arrow.f1 = pair.forms[0].gram();
  h.arrow.f2 = pair.forms[1].gram();
  h.form_phi = QMatrix::identity(pair.dim);
  return h;
}

QFSystem from_herm(const HermSpace& h) {
  const TwistedArrow& z = h.arrow;
  if (z.dim_u != z.dim_v) throw MathError("hermitian data needs a square arrow");
  if (z.f1.rows() != z.dim_v || z.f1.cols() != z.dim_u || z.f2.rows() != z.dim_v ||
      z.f2.cols() != z.dim_u)
    throw MathError("arrow maps have inconsistent shapes");
  if (h.form_phi.rows() != z.dim_u || h.form_phi.cols() != z.dim_u)
    throw MathError("form component has the wrong shape");
  if (!inverse(h.form_phi)) throw MathError("form component must be invertible");
  const QMatrix q1 = h.form_phi.transpose() * z.f1;
  const QMatrix q2 = h.form_phi.transpose() * z.f2;
  if (!q1.is_symmetric() || !q2.is_symmetric())
    throw MathError("form component is not compatible with the arrow");
  QFSystem out;
  out.dim = z.dim_u;
  out.forms = {QuadForm(q1), QuadForm(q2)};
  return out;
}

QMatrix pencil_endomorphism(const QFSystem& pair) {
  require_pair(pair);
  const QMatrix& q1 = pair.forms[0].gram();
  const QMatrix& q2 = pair.forms[1].gram();
  auto q1i = inverse(q1);
  if (!q1i)
    throw MathError(
        "pencil needs an invertible first form; rebase the pair on a "
        "unimodular combination (find_unimodular_combination)");
  QMatrix j = *q1i * q2;
  const QMatrix jt = j.transpose();
  if (jt * q1 != q1 * j || jt * q2 != q2 * j)
    throw InternalError("pencil commutation identities failed");
  return j;
}

QuadForm closure_poly_form(const QFSystem& pair, const UPoly& f) {
  const QMatrix j = pencil_endomorphism(pair);
  const QMatrix g = pair.forms[0].gram() * poly_of_matrix(f, j);
  if (!g.is_symmetric()) throw InternalError("q1 * f(J) came out asymmetric");
  return QuadForm(g);
}

KroneckerDecomposition kronecker_decompose(const QFSystem& pair) {
  const QMatrix j = pencil_endomorphism(pair);
  const int n = j.rows();
  const Factorization fact = factor_rational(charpoly(j));

  KroneckerDecomposition out;
  std::vector<QVector> cert_columns;
  std::vector<QMatrix> cert_blocks;

  for (const FactorPower& fp : fact.factors) {
    const UPoly& p = fp.factor;
    const int e = fp.multiplicity;
    const int dp = p.degree();

    // Primary component W = ker p(J)^e, with J restricted to it.
    const QMatrix pj = poly_of_matrix(p, j);
    QMatrix pje = QMatrix::identity(n);
    for (int i = 0; i < e; ++i) pje = pje * pj;
    const std::vector<QVector> wbasis = span_rows(kernel(pje));
    const int wd = static_cast<int>(wbasis.size());

    QMatrix jw(wd, wd);
    for (int c = 0; c < wd; ++c) {
      auto co = coords_in(wbasis, j.apply(wbasis[c]));
      if (!co) throw InternalError("primary component not invariant");
      for (int r = 0; r < wd; ++r) jw.at(r, c) = (*co)[r];
    }

    // Powers of p(J) on W and the kernel filtration.
    std::vector<QMatrix> pw(e + 1);
    pw[0] = QMatrix::identity(wd);
    const QMatrix pjw = poly_of_matrix(p, jw);
    for (int k = 1; k <= e; ++k) pw[k] = pw[k - 1] * pjw;
    std::vector<int> d(e + 2, 0);
    for (int k = 1; k <= e; ++k) d[k] = wd - rank(pw[k]);
    if (d[e] != wd) throw InternalError("primary kernel filtration does not fill");
    d[e + 1] = d[e];

    std::vector<int> mult(e + 1, 0);  // blocks with this exact exponent
    int total = 0;
    for (int k = 1; k <= e; ++k) {
      const int num = 2 * d[k] - d[k - 1] - d[k + 1];
      if (num % dp != 0) throw InternalError("block count not divisible by prime degree");
      mult[k] = num / dp;
      if (mult[k] < 0) throw InternalError("negative block multiplicity");
      total += mult[k] * k * dp;
    }
    if (total != wd) throw InternalError("block dimensions do not add up");

    // Generators, tallest first.  S holds the cyclic vectors found so far;
    // every new generator is adjusted to have exact height k so that its
    // cyclic space meets S trivially.
    std::vector<QVector> srows;  // raw cyclic vectors, W coordinates
    std::vector<QVector> sspan;  // echelon form of the same span
    for (int k = e; k >= 1; --k) {
      UPoly pk = p.pow(static_cast<unsigned>(k));
      for (int copy = 0; copy < mult[k]; ++copy) {
        int pick = -1;
        for (int c = 0; c < wd && pick < 0; ++c) {
          QVector v(wd, Rational(0));
          v[c] = 1;
          // height of v modulo S
          int h = 0;
          QVector img = v;
          while (!span_contains(sspan, img)) {
            img = pw[1].apply(img);
            ++h;
            if (h > e) throw InternalError("runaway height");
          }
          if (h == k) pick = c;
        }
        if (pick < 0) throw InternalError("no generator of the required height");
        QVector v(wd, Rational(0));
        v[pick] = 1;
        QVector u = pw[k].apply(v);
        if (std::any_of(u.begin(), u.end(), [](const Rational& x) { return x != 0; })) {
          // Same image is reachable inside S; subtracting the preimage makes
          // the height of v exactly k without moving it modulo S.
          QMatrix m(wd, static_cast<int>(srows.size()));
          for (size_t b = 0; b < srows.size(); ++b) {
            QVector col = pw[k].apply(srows[b]);
            for (int r = 0; r < wd; ++r) m.at(r, static_cast<int>(b)) = col[r];
          }
          auto sol = solve_affine(m, u);
          if (!sol) throw InternalError("span is not pure in the primary component");
          for (size_t b = 0; b < srows.size(); ++b)
            for (int r = 0; r < wd; ++r) v[r] -= sol->particular[b] * srows[b][r];
        }
        // Cyclic basis of the new summand, in W then ambient coordinates.
        const size_t before = sspan.size();
        QVector cur = v;
        for (int a = 0; a < k * dp; ++a) {
          srows.push_back(cur);
          sspan.push_back(cur);
          sspan = span_rows(sspan);
          QVector amb(n, Rational(0));
          for (int c = 0; c < wd; ++c)
            for (int x = 0; x < n; ++x) amb[x] += cur[c] * wbasis[c][x];
          cert_columns.push_back(amb);
          cur = jw.apply(cur);
        }
        if (sspan.size() != before + static_cast<size_t>(k * dp))
          throw InternalError("cyclic space collided with earlier generators");
        cert_blocks.push_back(companion(pk));
      }
      if (mult[k] > 0) {
        KroneckerBlock blk;
        blk.prime = p;
        blk.exponent = k;
        blk.multiplicity = mult[k];
        blk.block_matrix = companion(pk);
        out.blocks.push_back(std::move(blk));
      }
    }
  }

  out.base_change = QMatrix::from_columns(cert_columns);
  if (!inverse(out.base_change)) throw InternalError("base change is singular");
  if (j * out.base_change != out.base_change * block_diag(cert_blocks))
    throw InternalError("base change does not conjugate onto the blocks");
  return out;
}

UPoly separating_poly(std::vector<RealRoot> pos, std::vector<RealRoot> neg) {
  struct Item {
    RealRoot root;
    int target;
  };
  std::vector<Item> items;
  for (auto& r : pos) items.push_back({std::move(r), 1});
  for (auto& r : neg) items.push_back({std::move(r), -1});

  // Make the enclosures pairwise disjoint, dropping duplicates on the same
  // side and rejecting a root demanded on both sides.
  for (size_t i = 0; i < items.size(); ++i)
    for (size_t k = i + 1; k < items.size();) {
      if (enclosures_overlap(items[i].root, items[k].root) &&
          same_real_root(items[i].root, items[k].root)) {
        if (items[i].target != items[k].target)
          throw MathError("separating_poly: the sign sets share a root");
        items.erase(items.begin() + static_cast<long>(k));
        continue;
      }
      while (enclosures_overlap(items[i].root, items[k].root)) {
        refine_root(items[i].root, (items[i].root.hi - items[i].root.lo) / 4);
        refine_root(items[k].root, (items[k].root.hi - items[k].root.lo) / 4);
      }
      ++k;
    }

  auto certified = [&](const UPoly& f) {
    for (const Item& it : items)
      if (sign_at_root(f, it.root) != it.target) return false;
    return true;
  };

  const UPoly one = UPoly::constant(Rational(1));
  const UPoly x = UPoly::x();
  for (const UPoly& cand : {one, -one, x, -x})
    if (certified(cand)) return cand;

  Rational width(1, 64);
  for (int round = 0; round < 60; ++round) {
    std::vector<Rational> xs;
    std::vector<int> ys;
    for (Item& it : items) {
      refine_root(it.root, width);
      xs.push_back(enclosure_mid(it.root));
      ys.push_back(it.target);
    }
    const UPoly f = lagrange_through(xs, ys);
    if (certified(f)) return f;
    width = width / 4096;
  }
  throw InternalError("separating_poly failed to certify after refinement");
}

std::optional<PairWitness> pair_witness(const QFSystem& pair) {
  const QMatrix j = pencil_endomorphism(pair);
  const UPoly mp = minpoly(j);
  const Factorization fact = factor_rational(charpoly(j));
  int cap = 1;
  for (const FactorPower& fp : fact.factors) cap = std::max(cap, fp.multiplicity);
  const unsigned big = static_cast<unsigned>(cap);

  for (const FactorPower& fp : fact.factors) {
    const UPoly& p = fp.factor;
    const std::vector<RealRoot> roots = isolate_real_roots(p);
    const int t = static_cast<int>(roots.size());
    if (t == 0) continue;  // no real roots: this prime never carries signature

    UPoly g = UPoly::constant(Rational(1));
    for (const FactorPower& other : fact.factors)
      if (!(other.factor == p)) g = g * other.factor;
    const UPoly gn = g.pow(big);

    // Base sign of g^N(a_i) * prod_{l != i} (a_i - a_l) at the i-th root
    // (roots ascending, so the product contributes (-1)^(t-1-i)).
    std::vector<int> base(t);
    for (int i = 0; i < t; ++i) {
      int s = sign_at_root(g, roots[i]);
      if (s == 0) throw InternalError("complementary prime vanishes at a root");
      int sn = (big % 2 == 0) ? 1 : s;
      base[i] = ((t - 1 - i) % 2 == 0) ? sn : -sn;
    }

    for (int k = fp.multiplicity; k >= 1; --k) {
      const UPoly level = p.pow(static_cast<unsigned>(k - 1)) * gn;
      for (int m = 0; m <= t; ++m) {
        // Force the whole product negative exactly at root m-1.
        std::vector<RealRoot> want_pos, want_neg;
        for (int i = 0; i < t; ++i) {
          const int target = (i == m - 1) ? -base[i] : base[i];
          (target > 0 ? want_pos : want_neg).push_back(roots[i]);
        }
        const UPoly fm = separating_poly(want_pos, want_neg);
        const UPoly full = (level * fm).divrem(mp).second;
        QuadForm z = closure_poly_form(pair, full);
        if (z.sig().sgn() == 0) continue;
        if (!closure_contains(pair, z))
          throw InternalError("witness form escaped the closure");
        return PairWitness{std::move(z), p, k, m};
      }
    }
  }
  return std::nullopt;
}

PairDecision decide_pair(const QFSystem& pair) {
  require_pair(pair);
  PairDecision out;
  out.exists_n = decide_by_trace(pair).exists_n;
  out.witness = pair_witness(pair);
  out.agrees_with_trace_test = out.witness.has_value() == !out.exists_n;
  return out;
}

QMatrix jordan_block(int n, const Rational& alpha) {
  if (n < 1) throw MathError("jordan_block needs n >= 1");
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m.at(i, i) = alpha;
    if (i + 1 < n) m.at(i, i + 1) = 1;
  }
  return m;
}

QMatrix hankel_jordan(int n, const Rational& alpha) {
  if (n < 1) throw MathError("hankel_jordan needs n >= 1");
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < n; ++c) {
      if (i + c == n - 1) m.at(i, c) = alpha;
      if (i + c == n) m.at(i, c) = 1;
    }
  return m;
}

QMatrix antidiag_ones(int n) {
  if (n < 1) throw MathError("antidiag_ones needs n >= 1");
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, n - 1 - i) = 1;
  return m;
}

TwistedArrow jordan_arrow(int n, const Rational& alpha) {
  TwistedArrow z;
  z.dim_u = z.dim_v = n;
  z.f1 = antidiag_ones(n);
  z.f2 = hankel_jordan(n, alpha);
  return z;
}

}  // namespace qfs
