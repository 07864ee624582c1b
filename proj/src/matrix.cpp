#include "qfs/matrix.hpp"

#include "qfs/errors.hpp"

namespace qfs {

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows) {
  if (rows.empty()) return QMatrix();
  QMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i) {
    if (static_cast<int>(rows[i].size()) != m.cols())
      throw InternalError("from_rows: ragged rows");
    for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVector>& cols) {
  if (cols.empty()) return QMatrix();
  QMatrix m(static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols(); ++j) {
    if (static_cast<int>(cols[j].size()) != m.rows())
      throw InternalError("from_columns: ragged columns");
    for (int i = 0; i < m.rows(); ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  if (cols_ != o.rows_) throw InternalError("matrix product: shape mismatch");
  QMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& v = at(i, k);
      if (sgn(v) == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += v * o.at(k, j);
    }
  return r;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InternalError("matrix sum: shape mismatch");
  QMatrix r(rows_, cols_);
  for (size_t t = 0; t < a_.size(); ++t) r.a_[t] = a_[t] + o.a_[t];
  return r;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InternalError("matrix diff: shape mismatch");
  QMatrix r(rows_, cols_);
  for (size_t t = 0; t < a_.size(); ++t) r.a_[t] = a_[t] - o.a_[t];
  return r;
}

QMatrix QMatrix::operator-() const {
  QMatrix r(rows_, cols_);
  for (size_t t = 0; t < a_.size(); ++t) r.a_[t] = -a_[t];
  return r;
}

QMatrix QMatrix::scaled(const Rational& a) const {
  QMatrix r(rows_, cols_);
  for (size_t t = 0; t < a_.size(); ++t) r.a_[t] = a * a_[t];
  return r;
}

QVector QMatrix::apply(const QVector& x) const {
  if (static_cast<int>(x.size()) != cols_) throw InternalError("apply: shape mismatch");
  QVector y(rows_, Rational(0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (sgn(at(i, j)) != 0) y[i] += at(i, j) * x[j];
  return y;
}

QVector QMatrix::row(int i) const {
  QVector r(cols_);
  for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

QVector QMatrix::column(int j) const {
  QVector c(rows_);
  for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
  return c;
}

bool QMatrix::is_zero() const {
  for (const auto& v : a_)
    if (sgn(v) != 0) return false;
  return true;
}

bool QMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

std::vector<int> rref_inplace(QMatrix& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (sgn(m.at(i, c)) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
    Rational inv = 1 / m.at(r, c);
    for (int j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m.at(i, c)) == 0) continue;
      Rational f = m.at(i, c);
      for (int j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank(const QMatrix& m) {
  QMatrix w = m;
  return static_cast<int>(rref_inplace(w).size());
}

Rational det(const QMatrix& m) {
  if (!m.is_square()) throw InternalError("det: not square");
  QMatrix w = m;
  int n = w.rows();
  Rational d(1);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (sgn(w.at(i, c)) != 0) {
        p = i;
        break;
      }
    if (p < 0) return Rational(0);
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(w.at(p, j), w.at(c, j));
      d = -d;
    }
    d *= w.at(c, c);
    Rational inv = 1 / w.at(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (sgn(w.at(i, c)) == 0) continue;
      Rational f = w.at(i, c) * inv;
      for (int j = c; j < n; ++j) w.at(i, j) -= f * w.at(c, j);
    }
  }
  return d;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  if (!m.is_square()) throw InternalError("inverse: not square");
  int n = m.rows();
  QMatrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  auto piv = rref_inplace(aug);
  if (static_cast<int>(piv.size()) != n || (n > 0 && piv.back() != n - 1)) return std::nullopt;
  QMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

std::vector<QVector> kernel(const QMatrix& m) {
  QMatrix w = m;
  auto piv = rref_inplace(w);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : piv) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVector v(m.cols(), Rational(0));
    v[f] = 1;
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -w.at(static_cast<int>(r), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<AffineSolution> solve_affine(const QMatrix& m, const QVector& b) {
  if (static_cast<int>(b.size()) != m.rows()) throw InternalError("solve_affine: shape mismatch");
  QMatrix aug(m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  auto piv = rref_inplace(aug);
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
  AffineSolution sol;
  sol.particular.assign(m.cols(), Rational(0));
  for (size_t r = 0; r < piv.size(); ++r)
    sol.particular[piv[r]] = aug.at(static_cast<int>(r), m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : piv) is_pivot[c] = true;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVector v(m.cols(), Rational(0));
    v[f] = 1;
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -aug.at(static_cast<int>(r), f);
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

std::vector<QVector> column_space_basis(const QMatrix& m) {
  QMatrix w = m;
  auto piv = rref_inplace(w);
  std::vector<QVector> basis;
  basis.reserve(piv.size());
  for (int c : piv) basis.push_back(m.column(c));
  return basis;
}

CongruenceResult congruence_diagonalize(const QMatrix& s) {
  if (!s.is_symmetric()) throw InternalError("congruence_diagonalize: not symmetric");
  int n = s.rows();
  QMatrix d = s;
  QMatrix p = QMatrix::identity(n);
  // Column operation followed by the matching row operation keeps d symmetric
  // and accumulates the column side into p.
  auto add_col = [&](int dst, int src, const Rational& f) {
    for (int i = 0; i < n; ++i) d.at(i, dst) += f * d.at(i, src);
    for (int i = 0; i < n; ++i) d.at(dst, i) += f * d.at(src, i);
    for (int i = 0; i < n; ++i) p.at(i, dst) += f * p.at(i, src);
  };
  auto swap_col = [&](int a, int b) {
    for (int i = 0; i < n; ++i) std::swap(d.at(i, a), d.at(i, b));
    for (int i = 0; i < n; ++i) std::swap(d.at(a, i), d.at(b, i));
    for (int i = 0; i < n; ++i) std::swap(p.at(i, a), p.at(i, b));
  };
  for (int k = 0; k < n; ++k) {
    if (sgn(d.at(k, k)) == 0) {
      int j = -1;
      for (int c = k + 1; c < n; ++c)
        if (sgn(d.at(c, c)) != 0) {
          j = c;
          break;
        }
      if (j >= 0) {
        swap_col(k, j);
      } else {
        // All remaining diagonal entries vanish: borrow an off-diagonal one.
        int a = -1, b = -1;
        for (int i = k; i < n && a < 0; ++i)
          for (int c = i + 1; c < n; ++c)
            if (sgn(d.at(i, c)) != 0) {
              a = i;
              b = c;
              break;
            }
        if (a < 0) break;  // remaining block is zero
        add_col(a, b, Rational(1));  // puts 2*d(a,b) on the diagonal at a
        if (a != k) swap_col(k, a);
      }
    }
    Rational inv = 1 / d.at(k, k);
    for (int c = k + 1; c < n; ++c) {
      if (sgn(d.at(k, c)) == 0) continue;
      add_col(c, k, -d.at(k, c) * inv);
    }
  }
  return {std::move(d), std::move(p)};
}

Signature signature(const QMatrix& s) {
  auto cr = congruence_diagonalize(s);
  Signature sig;
  for (int i = 0; i < cr.d.rows(); ++i) {
    int sg = sgn(cr.d.at(i, i));
    if (sg > 0)
      ++sig.plus;
    else if (sg < 0)
      ++sig.minus;
    else
      ++sig.zero;
  }
  return sig;
}

namespace {

Rational trace(const QMatrix& m) {
  Rational t(0);
  for (int i = 0; i < m.rows(); ++i) t += m.at(i, i);
  return t;
}

}  // namespace

UPoly charpoly(const QMatrix& m) {
  if (!m.is_square()) throw InternalError("charpoly: not square");
  int n = m.rows();
  // Faddeev-LeVerrier: M_1 = M, c_1 = -tr M_1; M_k = M(M_{k-1} + c_{k-1} I),
  // c_k = -tr(M_k)/k.  Then charpoly = X^n + c_1 X^{n-1} + ... + c_n.
  std::vector<Rational> coeffs(n + 1, Rational(0));
  coeffs[n] = 1;
  QMatrix mk = m;
  for (int k = 1; k <= n; ++k) {
    if (k > 1) {
      QMatrix adj = mk;
      for (int i = 0; i < n; ++i) adj.at(i, i) += coeffs[n - (k - 1)];
      mk = m * adj;
    }
    coeffs[n - k] = -trace(mk) / k;
  }
  return UPoly(std::move(coeffs));
}

UPoly minpoly(const QMatrix& m) {
  if (!m.is_square()) throw InternalError("minpoly: not square");
  int n = m.rows();
  if (n == 0) return UPoly::constant(1);
  // Find the first linear dependence among I, M, M^2, ... as vectors in Q^{n^2}.
  std::vector<QMatrix> powers;
  powers.push_back(QMatrix::identity(n));
  for (int d = 1; d <= n; ++d) {
    powers.push_back(powers.back() * m);
    QMatrix sys(n * n, d);
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sys.at(i * n + j, k) = powers[k].at(i, j);
    QVector rhs(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rhs[static_cast<size_t>(i) * n + j] = powers[d].at(i, j);
    if (auto sol = solve_affine(sys, rhs)) {
      std::vector<Rational> coeffs(d + 1);
      for (int k = 0; k < d; ++k) coeffs[k] = -sol->particular[k];
      coeffs[d] = 1;
      return UPoly(std::move(coeffs));
    }
  }
  throw InternalError("minpoly: no dependence up to dimension");
}

QMatrix poly_of_matrix(const UPoly& f, const QMatrix& m) {
  if (!m.is_square()) throw InternalError("poly_of_matrix: not square");
  int n = m.rows();
  QMatrix r(n, n);
  for (int k = f.degree(); k >= 0; --k) {
    r = r * m;
    for (int i = 0; i < n; ++i) r.at(i, i) += f[k];
  }
  return r;
}

QMatrix block_diag(const std::vector<QMatrix>& blocks) {
  int n = 0;
  for (const auto& b : blocks) {
    if (!b.is_square()) throw InternalError("block_diag: blocks must be square");
    n += b.rows();
  }
  QMatrix r(n, n);
  int off = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) r.at(off + i, off + j) = b.at(i, j);
    off += b.rows();
  }
  return r;
}

}  // namespace qfs
