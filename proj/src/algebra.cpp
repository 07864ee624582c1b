#include "qfs/algebra.hpp"

#include <algorithm>

#include "qfs/errors.hpp"
#include "qfs/factor.hpp"

namespace qfs {

QVector alg_mul(const AbstractAlgebra& a, const QVector& x, const QVector& y) {
  const int d = a.dim();
  QVector z(d, Rational(0));
  for (int i = 0; i < d; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (y[j] == 0) continue;
      const Rational c = x[i] * y[j];
      const QVector& t = a.mult_table[i][j];
      for (int k = 0; k < d; ++k)
        if (t[k] != 0) z[k] += c * t[k];
    }
  }
  return z;
}

QVector alg_sigma(const AbstractAlgebra& a, const QVector& x) {
  return a.sigma_matrix.apply(x);
}

QVector alg_eval_poly(const AbstractAlgebra& a, const UPoly& f, const QVector& x) {
  const int d = a.dim();
  QVector r(d, Rational(0));
  for (int k = f.degree(); k >= 0; --k) {
    r = alg_mul(a, r, x);
    if (f[k] != 0)
      for (int i = 0; i < d; ++i) r[i] += f[k] * a.unit[i];
  }
  return r;
}

QMatrix left_mult_matrix(const AbstractAlgebra& a, const QVector& x) {
  const int d = a.dim();
  QMatrix m(d, d);
  for (int i = 0; i < d; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      const QVector& t = a.mult_table[i][j];
      for (int k = 0; k < d; ++k)
        if (t[k] != 0) m.at(k, j) += x[i] * t[k];
    }
  }
  return m;
}

QVector alg_trace_vector(const AbstractAlgebra& a) {
  const int d = a.dim();
  QVector t(d, Rational(0));
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) t[i] += a.mult_table[i][k][k];
  return t;
}

UPoly alg_minpoly(const AbstractAlgebra& a, const QVector& x) {
  // Left multiplication is faithful on a unital algebra, so the minimal
  // polynomial of x equals that of L_x.
  return minpoly(left_mult_matrix(a, x));
}

std::vector<QVector> span_rows(const std::vector<QVector>& vecs) {
  if (vecs.empty()) return {};
  QMatrix m = QMatrix::from_rows(vecs);
  rref_inplace(m);
  std::vector<QVector> out;
  for (int i = 0; i < m.rows(); ++i) {
    QVector row = m.row(i);
    bool nz = false;
    for (const auto& e : row)
      if (e != 0) {
        nz = true;
        break;
      }
    if (nz) out.push_back(std::move(row));
  }
  return out;
}

std::optional<QVector> coords_in(const std::vector<QVector>& basis, const QVector& v) {
  if (basis.empty()) {
    for (const auto& e : v)
      if (e != 0) return std::nullopt;
    return QVector{};
  }
  QMatrix m = QMatrix::from_columns(basis);
  auto sol = solve_affine(m, v);
  if (!sol) return std::nullopt;
  return sol->particular;
}

bool span_contains(const std::vector<QVector>& basis, const QVector& v) {
  return coords_in(basis, v).has_value();
}

std::vector<QVector> ideal_product(const AbstractAlgebra& a,
                                   const std::vector<QVector>& lhs,
                                   const std::vector<QVector>& rhs) {
  std::vector<QVector> prods;
  prods.reserve(lhs.size() * rhs.size());
  for (const auto& u : lhs)
    for (const auto& v : rhs) prods.push_back(alg_mul(a, u, v));
  return span_rows(prods);
}

std::vector<QVector> alg_center(const AbstractAlgebra& a) {
  const int d = a.dim();
  QMatrix m(d * d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        m.at(j * d + k, i) = a.mult_table[i][j][k] - a.mult_table[j][i][k];
  return kernel(m);
}

SpanReducer::SpanReducer(const std::vector<QVector>& vecs) {
  rows_ = span_rows(vecs);
  for (const auto& r : rows_) {
    int p = 0;
    while (p < static_cast<int>(r.size()) && r[p] == 0) ++p;
    pivots_.push_back(p);
  }
}

QVector SpanReducer::reduce(const QVector& v) const {
  QVector w = v;
  for (size_t i = 0; i < rows_.size(); ++i) {
    const Rational c = w[pivots_[i]];
    if (c == 0) continue;
    const QVector& r = rows_[i];
    for (size_t k = 0; k < w.size(); ++k)
      if (r[k] != 0) w[k] -= c * r[k];
  }
  return w;
}

QuotientAlgebra quotient_by_ideal(const AbstractAlgebra& a,
                                  const std::vector<QVector>& ideal) {
  const int d = a.dim();
  SpanReducer red(ideal);
  std::vector<bool> is_pivot(d, false);
  for (const auto& r : red.basis()) {
    int p = 0;
    while (r[p] == 0) ++p;
    is_pivot[p] = true;
  }
  std::vector<int> comp;
  for (int j = 0; j < d; ++j)
    if (!is_pivot[j]) comp.push_back(j);
  const int dq = static_cast<int>(comp.size());

  QuotientAlgebra q;
  q.section = QMatrix(d, dq);
  for (int c = 0; c < dq; ++c) q.section.at(comp[c], c) = 1;
  q.project = QMatrix(dq, d);
  for (int j = 0; j < d; ++j) {
    QVector e(d, Rational(0));
    e[j] = 1;
    QVector r = red.reduce(e);
    for (int c = 0; c < dq; ++c) q.project.at(c, j) = r[comp[c]];
  }

  auto proj = [&](const QVector& x) { return q.project.apply(x); };
  auto sect = [&](int c) {
    QVector e(d, Rational(0));
    e[comp[c]] = 1;
    return e;
  };

  q.alg.unit = proj(a.unit);
  q.alg.mult_table.assign(dq, std::vector<QVector>(dq));
  for (int i = 0; i < dq; ++i)
    for (int j = 0; j < dq; ++j)
      q.alg.mult_table[i][j] = proj(alg_mul(a, sect(i), sect(j)));
  if (a.sigma_matrix.rows() == d) {
    q.alg.sigma_matrix = QMatrix(dq, dq);
    for (int j = 0; j < dq; ++j) {
      QVector s = proj(alg_sigma(a, sect(j)));
      for (int i = 0; i < dq; ++i) q.alg.sigma_matrix.at(i, j) = s[i];
    }
  }
  return q;
}

CornerAlgebra corner_subalgebra(const AbstractAlgebra& a, const QVector& c) {
  const int d = a.dim();
  std::vector<QVector> gens;
  for (int j = 0; j < d; ++j) {
    QVector e(d, Rational(0));
    e[j] = 1;
    gens.push_back(alg_mul(a, alg_mul(a, c, e), c));
  }
  std::vector<QVector> basis = span_rows(gens);
  const int ds = static_cast<int>(basis.size());

  CornerAlgebra s;
  s.embed = basis.empty() ? QMatrix(d, 0) : QMatrix::from_columns(basis);
  auto restrict_coords = [&](const QVector& v) {
    auto co = coords_in(basis, v);
    if (!co) throw InternalError("corner_subalgebra: element escapes the corner");
    return *co;
  };
  auto unit_opt = coords_in(basis, c);
  if (!unit_opt) throw InternalError("corner_subalgebra: idempotent not in its own corner");
  s.alg.unit = *unit_opt;
  s.alg.mult_table.assign(ds, std::vector<QVector>(ds));
  for (int i = 0; i < ds; ++i)
    for (int j = 0; j < ds; ++j)
      s.alg.mult_table[i][j] = restrict_coords(alg_mul(a, basis[i], basis[j]));
  if (a.sigma_matrix.rows() == d && alg_sigma(a, c) == c) {
    s.alg.sigma_matrix = QMatrix(ds, ds);
    for (int j = 0; j < ds; ++j) {
      QVector sv = restrict_coords(alg_sigma(a, basis[j]));
      for (int i = 0; i < ds; ++i) s.alg.sigma_matrix.at(i, j) = sv[i];
    }
  }
  return s;
}

namespace {

// Deterministic sweep used to locate an element whose minimal polynomial has
// degree equal to the algebra dimension (exists for any commutative
// semisimple algebra over Q).
std::vector<QVector> primitive_candidates(int d) {
  std::vector<QVector> out;
  for (int j = 0; j < d; ++j) {
    QVector e(d, Rational(0));
    e[j] = 1;
    out.push_back(std::move(e));
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      QVector e(d, Rational(0));
      e[i] = 1;
      e[j] = 1;
      out.push_back(std::move(e));
    }
  for (long t = 2; t <= 60; ++t) {
    QVector e(d, Rational(0));
    Rational p(1);
    for (int j = 0; j < d; ++j) {
      e[j] = p;
      p *= t;
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

std::vector<QVector> split_commutative(const AbstractAlgebra& z) {
  const int d = z.dim();
  if (d == 0) return {};
  UPoly m;
  bool found = false;
  QVector y;
  for (const auto& cand : primitive_candidates(d)) {
    UPoly mc = alg_minpoly(z, cand);
    if (mc.degree() == d) {
      m = mc;
      y = cand;
      found = true;
      break;
    }
  }
  if (!found)
    throw InternalError("split_commutative: no primitive element found in sweep");
  Factorization fact = factor_rational(m);
  for (const auto& fp : fact.factors)
    if (fp.multiplicity > 1)
      throw InternalError("split_commutative: repeated factor; algebra not semisimple");
  if (fact.factors.size() == 1) return {z.unit};

  std::vector<QVector> prims;
  for (size_t l = 0; l < fact.factors.size(); ++l) {
    UPoly h = UPoly::constant(1);
    for (size_t r = 0; r < fact.factors.size(); ++r)
      if (r != l) h = h * fact.factors[r].factor;
    PolyEgcd eg = poly_egcd(h, fact.factors[l].factor);
    if (eg.g.degree() != 0)
      throw InternalError("split_commutative: factors not coprime");
    // s*h = 1 mod m_l and 0 mod the others, so (s*h)(y) is the idempotent
    // supported on the l-th summand.
    QVector c = alg_eval_poly(z, eg.s * h, y);
    CornerAlgebra corner = corner_subalgebra(z, c);
    std::vector<QVector> sub = split_commutative(corner.alg);
    for (const auto& cs : sub) prims.push_back(corner.embed.apply(cs));
  }
  return prims;
}

}  // namespace qfs
