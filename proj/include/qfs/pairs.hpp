#pragma once

#include <optional>
#include <vector>

#include "qfs/matrix.hpp"
#include "qfs/quadform.hpp"
#include "qfs/roots.hpp"

namespace qfs {

/// Two linear maps U -> V^*, stored as dim_v x dim_u matrices.
struct TwistedArrow {
  int dim_u = 0, dim_v = 0;
  QMatrix f1, f2;
};

/// A square twisted arrow together with an invertible form component phi.
/// Well formed when phi^t f_i is symmetric for i = 1, 2; then the arrow
/// carries the unimodular hermitian structure (phi, phi^op).
struct HermSpace {
  TwistedArrow arrow;
  QMatrix form_phi;
};

/// Pair system -> hermitian data ((V, V, q1, q2), phi = I) and back.  The
/// two directions are mutually inverse and respect block-diagonal sums.
HermSpace to_herm(const QFSystem& pair);
QFSystem from_herm(const HermSpace& h);

/// J = q1^{-1} q2.  Both J^t q1 = q1 J and J^t q2 = q2 J hold on return.
QMatrix pencil_endomorphism(const QFSystem& pair);

/// One isomorphism class of indecomposable summand of the pencil module.
struct KroneckerBlock {
  UPoly prime;        // monic irreducible
  int exponent = 1;   // the module is Q[X]/(prime^exponent)
  int multiplicity = 1;
  QMatrix block_matrix;  // companion matrix of prime^exponent
};

struct KroneckerDecomposition {
  std::vector<KroneckerBlock> blocks;  // primes in factor order, exponent descending
  QMatrix base_change;                 // invertible P with J P = P blockdiag
};

/// Primary decomposition of the pencil endomorphism, with a verified base
/// change onto companion blocks.
KroneckerDecomposition kronecker_decompose(const QFSystem& pair);

/// q1 * f(J): always a symmetric form, and always commutes with the whole
/// adjoint algebra of the pair.
QuadForm closure_poly_form(const QFSystem& pair, const UPoly& f);

/// Polynomial with certified sign +1 at every root in pos and -1 at every
/// root in neg.  The two sets must not share a root.
UPoly separating_poly(std::vector<RealRoot> pos, std::vector<RealRoot> neg);

/// A member of the closure with nonzero signature, found by sweeping the
/// primary levels (prime, exponent) of the pencil and testing the forms
/// q1 * prime^(k-1)(J) g^N(J) f_m(J) built from sign-separating polynomials.
struct PairWitness {
  QuadForm form;
  UPoly prime;
  int exponent = 1;  // k of the level that produced the witness
  int index = 0;     // which separating pattern (0..number of real roots)
};

/// Exhausts all levels; absence certifies that every member of the closure
/// has signature zero, hence that some multiple of the pair is hyperbolic.
std::optional<PairWitness> pair_witness(const QFSystem& pair);

struct PairDecision {
  bool exists_n = false;
  std::optional<PairWitness> witness;
  bool agrees_with_trace_test = false;
};

/// Runs both the trace-form test and the closure witness search; the two
/// must agree (witness found exactly when no hyperbolic multiple exists).
PairDecision decide_pair(const QFSystem& pair);

/// Standard one-generator models: upper Jordan block, its Hankel companion
/// form, the flip matrix, and the self-dual arrow they form.  For all n and
/// alpha: antidiag_ones(n) * jordan_block(n, alpha) = hankel_jordan(n, alpha).
QMatrix jordan_block(int n, const Rational& alpha);
QMatrix hankel_jordan(int n, const Rational& alpha);
QMatrix antidiag_ones(int n);
TwistedArrow jordan_arrow(int n, const Rational& alpha);

}  // namespace qfs
