#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfs/matrix.hpp"

namespace qfs {

/// A quadratic form on Q^n, represented by its symmetric Gram matrix.
/// Degenerate forms are allowed.
class QuadForm {
 public:
  explicit QuadForm(QMatrix gram);
  static QuadForm diagonal(const QVector& entries);
  static QuadForm zero(int dim);

  int dim() const { return gram_.rows(); }
  const QMatrix& gram() const { return gram_; }
  Rational value(const QVector& x) const;                       // x^t S x
  Rational bilinear(const QVector& x, const QVector& y) const;  // x^t S y
  Signature sig() const { return signature(gram_); }
  bool operator==(const QuadForm& o) const = default;

 private:
  QMatrix gram_;
};

/// A finite ordered family of quadratic forms on a common space.
struct QFSystem {
  int dim = 0;
  std::vector<QuadForm> forms;
  std::vector<std::string> labels;  // empty, or one label per form

  size_t count() const { return forms.size(); }
};

void validate_system(const QFSystem& sys);

/// Orthogonal sum of n copies of every form: dim multiplies by n.
QFSystem n_times(const QFSystem& sys, int n);

/// Two subspace bases that together span the space, with every form of the
/// system vanishing identically on each span.
struct HypWitness {
  std::vector<QVector> u_basis;
  std::vector<QVector> w_basis;
};

/// Checks the witness property exactly; optionally reports the first failed
/// condition.
bool verify_hyp_witness(const QFSystem& sys, const HypWitness& w, std::string* reason = nullptr);

struct RadicalSplit {
  QuadForm unimodular_part;  // diagonal; empty form when q = 0
  int zero_count = 0;
  QMatrix basis_change;  // P with P^t gram P = diag(unimodular_part, 0...0)
};

/// Splits off the radical: q is congruent to unimodular_part + zero form.
RadicalSplit radical_split(const QuadForm& q);

/// Searches the deterministic grid {0..dim*count}^count, in increasing
/// max-norm then lexicographic order, for coefficients c making
/// det(sum c_i gram_i) nonzero.  Absence certifies the determinant
/// polynomial vanishes identically on the span.
std::optional<QVector> find_unimodular_combination(const QFSystem& sys);

enum class Definiteness { positive, negative, neither };
Definiteness definiteness(const QuadForm& q);

}  // namespace qfs
