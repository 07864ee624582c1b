#pragma once

#include <optional>
#include <vector>

#include "qfs/matrix.hpp"
#include "qfs/poly.hpp"

namespace qfs {

/// Structure constants: table[i][j] holds the coordinates of b_i * b_j.
using MultTable = std::vector<std::vector<QVector>>;

/// A finite-dimensional associative unital Q-algebra given by structure
/// constants, together with an involution expressed in the same basis
/// (column j of sigma_matrix = coordinates of sigma(b_j)).
struct AbstractAlgebra {
  MultTable mult_table;
  QVector unit;
  QMatrix sigma_matrix;
  int dim() const { return static_cast<int>(unit.size()); }
};

QVector alg_mul(const AbstractAlgebra& a, const QVector& x, const QVector& y);
QVector alg_sigma(const AbstractAlgebra& a, const QVector& x);
QVector alg_eval_poly(const AbstractAlgebra& a, const UPoly& f, const QVector& x);

/// Matrix of left multiplication by x on the algebra.
QMatrix left_mult_matrix(const AbstractAlgebra& a, const QVector& x);

/// Traces of left multiplication by each basis element; Tr(L_x) is then the
/// dot product of this vector with the coordinates of x.
QVector alg_trace_vector(const AbstractAlgebra& a);

/// Minimal polynomial of x as an algebra element (monic).
UPoly alg_minpoly(const AbstractAlgebra& a, const QVector& x);

/// Echelon basis of the span of the given vectors.
std::vector<QVector> span_rows(const std::vector<QVector>& vecs);
bool span_contains(const std::vector<QVector>& basis, const QVector& v);
std::optional<QVector> coords_in(const std::vector<QVector>& basis, const QVector& v);

/// Span of all pairwise products; if lhs and rhs are two-sided ideals, so is
/// the result.
std::vector<QVector> ideal_product(const AbstractAlgebra& a,
                                   const std::vector<QVector>& lhs,
                                   const std::vector<QVector>& rhs);

std::vector<QVector> alg_center(const AbstractAlgebra& a);

/// Reduction of coordinates modulo a span: subtracts echelon rows so that all
/// pivot coordinates of the result vanish. The map is linear, the identity on
/// a complement of the span, and has the span as kernel.
class SpanReducer {
 public:
  explicit SpanReducer(const std::vector<QVector>& vecs);
  QVector reduce(const QVector& v) const;
  const std::vector<QVector>& basis() const { return rows_; }

 private:
  std::vector<QVector> rows_;  // echelon
  std::vector<int> pivots_;
};

/// Quotient by a two-sided ideal. section maps quotient coordinates to
/// representative algebra coordinates; project is its one-sided inverse and
/// kills exactly the ideal. sigma is induced only when the ideal is
/// sigma-stable (checked by the caller).
struct QuotientAlgebra {
  AbstractAlgebra alg;
  QMatrix section;  // dim(A) x dim(A/I)
  QMatrix project;  // dim(A/I) x dim(A)
};
QuotientAlgebra quotient_by_ideal(const AbstractAlgebra& a,
                                  const std::vector<QVector>& ideal);

/// The ideal c*A for a central idempotent c, viewed as a unital algebra with
/// unit c. embed maps subalgebra coordinates into A; restriction of sigma is
/// induced only when sigma(c) = c, otherwise sigma_matrix is left empty.
struct CornerAlgebra {
  AbstractAlgebra alg;
  QMatrix embed;  // dim(A) x dim(cA)
};
CornerAlgebra corner_subalgebra(const AbstractAlgebra& a, const QVector& c);

/// Primitive idempotents of a commutative semisimple algebra, in a
/// deterministic order. Each returned ideal summand is certified to be a
/// field by exhibiting an element whose minimal polynomial is irreducible of
/// degree equal to the summand's dimension.
std::vector<QVector> split_commutative(const AbstractAlgebra& z);

}  // namespace qfs
