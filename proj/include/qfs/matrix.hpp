#pragma once

#include <optional>
#include <vector>

#include "qfs/poly.hpp"
#include "qfs/rational.hpp"

namespace qfs {

/// Dense matrix over Q.
class QMatrix {
 public:
  QMatrix() : rows_(0), cols_(0) {}
  QMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Rational(0)) {}

  static QMatrix identity(int n);
  static QMatrix from_rows(const std::vector<QVector>& rows);
  static QMatrix from_columns(const std::vector<QVector>& cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Rational& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  QMatrix transpose() const;
  QMatrix operator*(const QMatrix& o) const;
  QMatrix operator+(const QMatrix& o) const;
  QMatrix operator-(const QMatrix& o) const;
  QMatrix operator-() const;
  QMatrix scaled(const Rational& a) const;
  bool operator==(const QMatrix& o) const = default;

  QVector apply(const QVector& x) const;  // M*x
  QVector row(int i) const;
  QVector column(int j) const;

  bool is_zero() const;
  bool is_symmetric() const;
  bool is_square() const { return rows_ == cols_; }

 private:
  int rows_, cols_;
  std::vector<Rational> a_;
};

/// Reduces M to reduced row echelon form in place; returns pivot columns.
std::vector<int> rref_inplace(QMatrix& m);

int rank(const QMatrix& m);
Rational det(const QMatrix& m);
std::optional<QMatrix> inverse(const QMatrix& m);

/// Basis of the right null space {x : Mx = 0}.
std::vector<QVector> kernel(const QMatrix& m);

struct AffineSolution {
  QVector particular;           // M * particular = b, free variables at 0
  std::vector<QVector> kernel;  // basis of the homogeneous solutions
};

/// Solves Mx = b; nullopt when inconsistent.
std::optional<AffineSolution> solve_affine(const QMatrix& m, const QVector& b);

/// Columns of M at its pivot positions: a basis of the column space.
std::vector<QVector> column_space_basis(const QMatrix& m);

struct CongruenceResult {
  QMatrix d;  // diagonal
  QMatrix p;  // invertible, p^t * s * p = d
};

/// Symmetric Gaussian congruence reduction (char 0).  Requires s symmetric.
CongruenceResult congruence_diagonalize(const QMatrix& s);

struct Signature {
  int plus = 0, minus = 0, zero = 0;
  int sgn() const { return plus - minus; }
  bool operator==(const Signature&) const = default;
};

/// Inertia of a symmetric matrix (counts of positive/negative/zero diagonal
/// entries after congruence diagonalization; well defined by Sylvester).
Signature signature(const QMatrix& s);

/// Characteristic polynomial, monic of degree n (Faddeev-LeVerrier, exact).
UPoly charpoly(const QMatrix& m);

/// Minimal polynomial via the first linear dependence among Krylov powers.
UPoly minpoly(const QMatrix& m);

/// f(M) by Horner's rule.
QMatrix poly_of_matrix(const UPoly& f, const QMatrix& m);

/// Block-diagonal stack of the given square matrices.
QMatrix block_diag(const std::vector<QMatrix>& blocks);

}  // namespace qfs
