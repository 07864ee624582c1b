#pragma once

#include <utility>
#include <vector>

#include "qfs/poly.hpp"

namespace qfs {

struct FactorPower {
  UPoly factor;  // monic, irreducible over Q
  int multiplicity = 1;
};

/// f = unit * prod factors[i] ^ multiplicity[i], factors monic irreducible,
/// sorted by degree then coefficient order (deterministic).
struct Factorization {
  Rational unit;
  std::vector<FactorPower> factors;
};

/// Complete factorization over Q.  Deterministic; exact.  Refuses degrees
/// above 16 with DegreeCapExceeded.
Factorization factor_rational(const UPoly& f);

/// Yun decomposition: pairs (monic squarefree part, multiplicity) with
/// pairwise coprime parts, f = lc(f) * prod part^mult.
std::vector<std::pair<UPoly, int>> squarefree_decompose(const UPoly& f);

bool is_irreducible(const UPoly& f);

/// Strict ordering on polynomials: degree first, then coefficients from the
/// top down.  Used everywhere a deterministic order of factors is needed.
bool poly_less(const UPoly& a, const UPoly& b);

}  // namespace qfs
