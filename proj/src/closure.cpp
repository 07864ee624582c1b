#include "qfs/closure.hpp"

#include "qfs/errors.hpp"
#include "qfs/sweep.hpp"

namespace qfs {

namespace {

// Upper-triangle coordinates for symmetric n x n matrices, row-major.
int sym_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i - 1) / 2 + (j - i);
}

QMatrix sym_from_coords(int n, const QVector& u) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      m.at(i, j) = u[sym_index(n, i, j)];
      m.at(j, i) = m.at(i, j);
    }
  return m;
}

}  // namespace

ClosureSpace closure_basis(const QFSystem& sys) {
  const InvAlgebra a = adjoint_algebra(sys);
  const int n = a.ambient_dim;
  const int nsym = n * (n + 1) / 2;

  // One block of n^2 rows per adjoint basis pair: psi^t q - q phi = 0,
  // linear in the upper-triangle coordinates of q.
  QMatrix constraints(a.dim() * n * n, nsym);
  for (int b = 0; b < a.dim(); ++b) {
    const QMatrix& phi = a.phi_basis[b];
    const QMatrix& psi = a.psi_basis[b];
    const int base = b * n * n;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        const int row = base + r * n + c;
        for (int k = 0; k < n; ++k) {
          constraints.at(row, sym_index(n, k, c)) += psi.at(k, r);
          constraints.at(row, sym_index(n, r, k)) -= phi.at(k, c);
        }
      }
  }

  ClosureSpace out;
  out.dim_v = n;
  for (const QVector& u : kernel(constraints)) out.basis.emplace_back(sym_from_coords(n, u));
  return out;
}

bool closure_contains(const QFSystem& sys, const QuadForm& q) {
  validate_system(sys);
  if (q.dim() != sys.dim)
    throw MathError("closure_contains: form dimension " + std::to_string(q.dim()) +
                    " does not match system dimension " + std::to_string(sys.dim));
  const InvAlgebra a = adjoint_algebra(sys);
  for (int b = 0; b < a.dim(); ++b) {
    if (a.psi_basis[b].transpose() * q.gram() != q.gram() * a.phi_basis[b]) return false;
  }
  return true;
}

std::optional<QuadForm> signature_scan(const ClosureSpace& c, int budget) {
  const int t = static_cast<int>(c.basis.size());
  if (t == 0) return std::nullopt;
  std::optional<QuadForm> found;
  sweep_integer_shells(t, budget, [&](const std::vector<Rational>& tup) {
    QMatrix g(c.dim_v, c.dim_v);
    for (int i = 0; i < t; ++i) {
      if (tup[i] == 0) continue;
      for (int r = 0; r < c.dim_v; ++r)
        for (int col = 0; col < c.dim_v; ++col)
          g.at(r, col) += tup[i] * c.basis[i].gram().at(r, col);
    }
    if (signature(g).sgn() == 0) return false;
    found = QuadForm(g);
    return true;
  });
  return found;
}

}  // namespace qfs
