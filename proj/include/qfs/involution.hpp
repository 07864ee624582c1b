#pragma once

#include <optional>
#include <vector>

#include "qfs/algebra.hpp"
#include "qfs/quadform.hpp"

namespace qfs {

/// The algebra of adjoint pairs of a system: all (phi, psi) in M_n x M_n
/// with psi^t q_i = q_i phi for every form q_i.  An element acts on the
/// system as the pair, multiplies as (phi phi', (psi' psi)^op), and carries
/// the swap involution (phi, psi^op) -> (psi, phi^op).
struct InvAlgebra {
  AbstractAlgebra alg;
  int ambient_dim = 0;
  QFSystem system;
  std::vector<QMatrix> phi_basis;
  std::vector<QMatrix> psi_basis;

  int dim() const { return alg.dim(); }
  /// First component of the pair represented by coordinate vector x.
  QMatrix phi_of(const QVector& x) const;
  /// Second component of the pair represented by coordinate vector x.
  QMatrix psi_of(const QVector& x) const;
  /// Coordinates of the pair (phi, psi) in the basis, if it lies in A.
  std::optional<QVector> coords_of_pair(const QMatrix& phi, const QMatrix& psi) const;
};

InvAlgebra adjoint_algebra(const QFSystem& sys);

QVector apply_sigma(const InvAlgebra& a, const QVector& x);

/// Gram matrix of x -> Tr(L_{x^sigma x}) over the algebra basis, polarized:
/// G_uv = (Tr L_{u^sigma v} + Tr L_{v^sigma u}) / 2.
QuadForm trace_form(const InvAlgebra& a);

/// Basis of the radical of the pairing (x,y) -> Tr(L_{xy}); over Q this is
/// the Jacobson radical.  Verified nilpotent and swap-stable.
std::vector<QVector> dickson_radical(const InvAlgebra& a);

struct IdemWitness {
  QVector e;
};

/// Lifts eps with eps^2 = eps and eps + eps^sigma = 1 (both modulo the ideal
/// spanned by j_basis) to an exact such idempotent of A congruent to eps.
IdemWitness lift_idempotent(const InvAlgebra& a, const std::vector<QVector>& j_basis,
                            const QVector& eps);

/// Orthogonal sum of m copies: the adjoint algebra of m x sys, with basis
/// E_ij (x) phi_k paired against E_ji (x) psi_k.
InvAlgebra amplify(const InvAlgebra& a, int m);

enum class HypVerdict { witness, none_certified, unknown };

struct HypSearchResult {
  HypVerdict verdict = HypVerdict::unknown;
  std::optional<IdemWitness> witness;
};

/// Decides whether A has an idempotent e with e + e^sigma = 1, working in
/// the semisimple quotient and lifting.  Exchange factors always produce a
/// witness; commutative and definite-trace factors are certified negative;
/// small matrix factors are recognized explicitly.  `unknown` is an honest
/// verdict when a factor resists the bounded analysis.
HypSearchResult find_hyperbolic_idempotent(const InvAlgebra& a);

/// Converts an idempotent witness on the adjoint algebra of sys into the
/// two totally isotropic complementary subspaces im(phi_e) and im(psi_e).
HypWitness idem_to_hyp_witness(const InvAlgebra& a, const IdemWitness& w);

struct TraceDecision {
  int trace_sgn = 0;
  bool exists_n = false;  // some multiple of the system is hyperbolic
};

/// Complete signature test: some n x sys is hyperbolic iff the trace form of
/// the adjoint algebra has signature zero.
TraceDecision decide_by_trace(const QFSystem& sys);

struct WeakOrder {
  std::optional<long> order;  // smallest certified power of two, if found
  bool exists_n = false;
  bool capped = false;  // true when some exponent returned unknown / was skipped
  // The certified amplification details, when order is present.
  int exponent = 0;
  std::optional<IdemWitness> witness;
};

/// Searches k = 0..cap_exponent for the least 2^k with 2^k x sys hyperbolic.
/// Amplification that would exceed an internal dimension bound is skipped
/// and reported through `capped`.
WeakOrder weak_order(const QFSystem& sys, int cap_exponent);

}  // namespace qfs
