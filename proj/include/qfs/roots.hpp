#pragma once

#include <vector>

#include "qfs/poly.hpp"

namespace qfs {

/// A real algebraic number.  Either lo == hi (the number is rational) or
/// lo < hi, defining(lo) != 0 != defining(hi), and defining has exactly one
/// root in the open interval (lo, hi).  defining is squarefree.
struct RealRoot {
  UPoly defining;
  Rational lo, hi;
  bool exact() const { return lo == hi; }
};

/// Sturm chain of a squarefree polynomial.
class SturmChain {
 public:
  explicit SturmChain(const UPoly& squarefree);
  /// Sign variations of the chain at x.
  int variations(const Rational& x) const;
  /// Distinct roots in the open interval (a, b); both endpoints must be
  /// non-roots.
  int count_open(const Rational& a, const Rational& b) const;

 private:
  std::vector<UPoly> seq_;
};

/// All real roots of f, in increasing order; multiplicities are ignored.
std::vector<RealRoot> isolate_real_roots(const UPoly& f);

/// Shrinks the enclosure until hi - lo <= width (no-op for exact roots).
void refine_root(RealRoot& r, const Rational& width);

/// Exact sign of g at the algebraic number r.
int sign_at_root(const UPoly& g, const RealRoot& r);

/// Number of distinct real roots of f.
int count_real_roots(const UPoly& f);

/// 1 + max |a_i| / |lc|: every real root lies in (-bound, bound).
Rational cauchy_bound(const UPoly& f);

}  // namespace qfs
