#pragma once

#include <optional>
#include <vector>

#include "qfs/involution.hpp"
#include "qfs/quadform.hpp"

namespace qfs {

/// Space of all symmetric forms q with psi^t q = q phi for every adjoint
/// pair of a system.  Always contains the span of the system itself.
struct ClosureSpace {
  int dim_v = 0;
  std::vector<QuadForm> basis;
};

ClosureSpace closure_basis(const QFSystem& sys);

/// Exact membership test against the computed adjoint basis.
bool closure_contains(const QFSystem& sys, const QuadForm& q);

/// First integer combination of the closure basis with nonzero signature,
/// sweeping coefficient vectors by increasing max-norm (lexicographic within
/// a shell) up to the given height.  Absence of a witness proves nothing.
std::optional<QuadForm> signature_scan(const ClosureSpace& c, int budget);

}  // namespace qfs
