#include "qfs/quadform.hpp"

#include "qfs/errors.hpp"

namespace qfs {

QuadForm::QuadForm(QMatrix gram) : gram_(std::move(gram)) {
  if (!gram_.is_symmetric()) throw MathError("quadratic form requires a symmetric Gram matrix");
}

QuadForm QuadForm::diagonal(const QVector& entries) {
  QMatrix g(static_cast<int>(entries.size()), static_cast<int>(entries.size()));
  for (size_t i = 0; i < entries.size(); ++i) g.at(static_cast<int>(i), static_cast<int>(i)) = entries[i];
  return QuadForm(std::move(g));
}

QuadForm QuadForm::zero(int dim) { return QuadForm(QMatrix(dim, dim)); }

Rational QuadForm::value(const QVector& x) const { return bilinear(x, x); }

Rational QuadForm::bilinear(const QVector& x, const QVector& y) const {
  if (static_cast<int>(x.size()) != dim() || static_cast<int>(y.size()) != dim())
    throw MathError("vector dimension mismatch");
  Rational acc(0);
  for (int i = 0; i < dim(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (int j = 0; j < dim(); ++j) acc += x[i] * gram_.at(i, j) * y[j];
  }
  return acc;
}

void validate_system(const QFSystem& sys) {
  if (sys.forms.empty()) throw MathError("a system needs at least one form");
  for (const auto& q : sys.forms)
    if (q.dim() != sys.dim) throw MathError("all forms of a system must share the dimension");
  if (!sys.labels.empty() && sys.labels.size() != sys.forms.size())
    throw MathError("labels, when present, must match the number of forms");
}

QFSystem n_times(const QFSystem& sys, int n) {
  if (n < 1) throw MathError("n_times requires n >= 1");
  QFSystem out;
  out.dim = sys.dim * n;
  out.labels = sys.labels;
  for (const auto& q : sys.forms)
    out.forms.push_back(QuadForm(block_diag(std::vector<QMatrix>(n, q.gram()))));
  return out;
}

bool verify_hyp_witness(const QFSystem& sys, const HypWitness& w, std::string* reason) {
  auto fail = [&](const std::string& why) {
    if (reason) *reason = why;
    return false;
  };
  for (const auto& v : w.u_basis)
    if (static_cast<int>(v.size()) != sys.dim) return fail("U vector dimension mismatch");
  for (const auto& v : w.w_basis)
    if (static_cast<int>(v.size()) != sys.dim) return fail("W vector dimension mismatch");
  if (static_cast<int>(w.u_basis.size() + w.w_basis.size()) != sys.dim)
    return fail("U and W together must have dim-many vectors");
  std::vector<QVector> all = w.u_basis;
  all.insert(all.end(), w.w_basis.begin(), w.w_basis.end());
  if (sys.dim > 0 && rank(QMatrix::from_columns(all)) != sys.dim)
    return fail("U and W vectors do not form a basis");
  for (size_t i = 0; i < sys.forms.size(); ++i) {
    const QuadForm& q = sys.forms[i];
    for (const auto* part : {&w.u_basis, &w.w_basis}) {
      for (size_t a = 0; a < part->size(); ++a)
        for (size_t b = a; b < part->size(); ++b)
          if (sgn(q.bilinear((*part)[a], (*part)[b])) != 0)
            return fail("form " + std::to_string(i) + " does not vanish on a witness part");
    }
  }
  return true;
}

RadicalSplit radical_split(const QuadForm& q) {
  auto cr = congruence_diagonalize(q.gram());
  int n = q.dim();
  std::vector<int> order;
  for (int i = 0; i < n; ++i)
    if (sgn(cr.d.at(i, i)) != 0) order.push_back(i);
  int nonzero = static_cast<int>(order.size());
  for (int i = 0; i < n; ++i)
    if (sgn(cr.d.at(i, i)) == 0) order.push_back(i);
  QMatrix p(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) p.at(i, j) = cr.p.at(i, order[j]);
  QVector diag(nonzero);
  for (int j = 0; j < nonzero; ++j) diag[j] = cr.d.at(order[j], order[j]);
  return {QuadForm::diagonal(diag), n - nonzero, std::move(p)};
}

std::optional<QVector> find_unimodular_combination(const QFSystem& sys) {
  validate_system(sys);
  int t = static_cast<int>(sys.forms.size());
  Integer cap(static_cast<long>(sys.dim) * t);
  auto det_at = [&](const std::vector<Integer>& c) {
    QMatrix m(sys.dim, sys.dim);
    for (int i = 0; i < t; ++i) {
      if (c[i] == 0) continue;
      m = m + sys.forms[i].gram().scaled(Rational(c[i]));
    }
    return det(m);
  };
  // Increasing max-norm so small coefficient vectors are preferred; within a
  // shell, lexicographic.  The grid {0..dim*t}^t exceeds the determinant's
  // degree in every variable, so exhausting it certifies the zero polynomial.
  for (Integer h(1); h <= cap; ++h) {
    std::vector<Integer> c(t, Integer(0));
    while (true) {
      bool on_shell = false;
      for (const auto& ci : c)
        if (ci == h) on_shell = true;
      if (on_shell && sgn(det_at(c)) != 0) {
        QVector out(t);
        for (int i = 0; i < t; ++i) out[i] = Rational(c[i]);
        return out;
      }
      int pos = t - 1;
      while (pos >= 0 && c[pos] == h) c[pos--] = 0;
      if (pos < 0) break;
      c[pos] += 1;
    }
  }
  return std::nullopt;
}

Definiteness definiteness(const QuadForm& q) {
  Signature s = q.sig();
  if (s.plus == q.dim() && q.dim() > 0) return Definiteness::positive;
  if (s.minus == q.dim() && q.dim() > 0) return Definiteness::negative;
  return Definiteness::neither;
}

}  // namespace qfs
