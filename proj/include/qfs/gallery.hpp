#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qfs/matrix.hpp"
#include "qfs/quadform.hpp"

namespace qfs {

/// The (n^2+1)-form family [[aI, a],[a^t, -aI]] on Q^(2n): the identity
/// weight form first, then one form per matrix unit a = E_ij, row-major.
QFSystem gen_block_pair(int n);

/// Same shape with a restricted to symmetric matrices (n(n+1)/2 + 1 forms).
/// Every double of this family is hyperbolic; the full family above loses
/// that property for n >= 2 (the skew part of a obstructs the witness).
QFSystem gen_block_pair_sym(int n);

/// Bases of {(u,v,-v,u)} and {(u,v,v,-u)} inside Q^(4n), which together
/// span.  They annihilate the double of the symmetric-a family for every n,
/// and the double of the full family exactly when n = 1.
HypWitness block_pair_doubling_witness(int n);

QFSystem gen_triangular_pair();
QFSystem gen_galois_pair();

/// 8a + 2^b for n = 2^(4a+b) c with c odd, 0 <= b <= 3.
int hurwitz_radon_rho(long n);

/// rho(n) matrices starting with I and satisfying e_i^t e_j + e_j^t e_i =
/// 2 delta_ij I, so every nonzero rational combination is invertible.
/// Supported sizes: 1, 2, 4, 8, 16.
std::vector<QMatrix> hurwitz_radon_family(int n);

/// Forms [[0, e],[e^t, s]] on Q^(2n): one per E basis element, then one per
/// S basis element.  Every member of S must be symmetric with signature 0.
QFSystem gen_q_se(int n, const std::vector<QMatrix>& s_basis,
                  const std::vector<QMatrix>& e_basis);

/// Deterministic symmetric integer matrices, |entry| <= height.
QFSystem gen_random_system(int dim, int count, int height, uint64_t seed);

struct ExampleSpec {
  std::string name;  // block_pair, triangular_pair, galois_pair, q_se, random_system
  std::map<std::string, long> params;
};

QFSystem gen_example(const ExampleSpec& spec);

}  // namespace qfs
