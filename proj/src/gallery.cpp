#include "qfs/gallery.hpp"

#include <algorithm>

#include "qfs/errors.hpp"

namespace qfs {

namespace {

QuadForm block_form(int n, const Rational& alpha, const QMatrix& a) {
  QMatrix g(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    g.at(i, i) = alpha;
    g.at(n + i, n + i) = -alpha;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      g.at(i, n + j) = a.at(i, j);
      g.at(n + j, i) = a.at(i, j);
    }
  return QuadForm(g);
}

QuadForm sym_from(int n, std::initializer_list<std::initializer_list<int>> rows) {
  QMatrix m(n, n);
  int r = 0;
  for (auto& row : rows) {
    int c = 0;
    for (int v : row) m.at(r, c++) = Rational(v);
    ++r;
  }
  return QuadForm(m);
}

// Cayley-Dickson product on Q^(2^m): (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c)).
QVector cd_conj(const QVector& x) {
  QVector y = x;
  for (size_t i = 1; i < y.size(); ++i) y[i] = -y[i];
  return y;
}

QVector cd_mul(const QVector& x, const QVector& y) {
  const size_t d = x.size();
  if (d == 1) return QVector{x[0] * y[0]};
  const size_t h = d / 2;
  QVector a(x.begin(), x.begin() + h), b(x.begin() + h, x.end());
  QVector c(y.begin(), y.begin() + h), e(y.begin() + h, y.end());
  QVector ac = cd_mul(a, c), eb = cd_mul(cd_conj(e), b);
  QVector ea = cd_mul(e, a), bc = cd_mul(b, cd_conj(c));
  QVector out(d);
  for (size_t i = 0; i < h; ++i) {
    out[i] = ac[i] - eb[i];
    out[h + i] = ea[i] + bc[i];
  }
  return out;
}

QMatrix left_mult_matrix_cd(int n, int k) {
  QVector e(n, Rational(0));
  e[k] = 1;
  QMatrix m(n, n);
  for (int j = 0; j < n; ++j) {
    QVector b(n, Rational(0));
    b[j] = 1;
    QVector col = cd_mul(e, b);
    for (int i = 0; i < n; ++i) m.at(i, j) = col[i];
  }
  return m;
}

void check_hurwitz_relations(const std::vector<QMatrix>& es, int n) {
  const QMatrix two_i = QMatrix::identity(n).scaled(Rational(2));
  for (size_t i = 0; i < es.size(); ++i)
    for (size_t j = i; j < es.size(); ++j) {
      QMatrix s = es[i].transpose() * es[j] + es[j].transpose() * es[i];
      if (s != (i == j ? two_i : QMatrix(n, n)))
        throw InternalError("Hurwitz relation failed");
    }
}

long param_or(const ExampleSpec& spec, const std::string& key, long fallback) {
  auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

}  // namespace

QFSystem gen_block_pair(int n) {
  if (n < 1) throw MathError("gen_block_pair needs n >= 1");
  QFSystem sys;
  sys.dim = 2 * n;
  sys.forms.push_back(block_form(n, Rational(1), QMatrix(n, n)));
  sys.labels.push_back("alpha");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      QMatrix a(n, n);
      a.at(i, j) = 1;
      sys.forms.push_back(block_form(n, Rational(0), a));
      sys.labels.push_back("a_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    }
  return sys;
}

QFSystem gen_block_pair_sym(int n) {
  if (n < 1) throw MathError("gen_block_pair_sym needs n >= 1");
  QFSystem sys;
  sys.dim = 2 * n;
  sys.forms.push_back(block_form(n, Rational(1), QMatrix(n, n)));
  sys.labels.push_back("alpha");
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      QMatrix a(n, n);
      a.at(i, j) = 1;
      a.at(j, i) = 1;
      sys.forms.push_back(block_form(n, Rational(0), a));
      sys.labels.push_back("s_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    }
  return sys;
}

HypWitness block_pair_doubling_witness(int n) {
  if (n < 1) throw MathError("block_pair_doubling_witness needs n >= 1");
  HypWitness w;
  auto vec4 = [&](int slot_a, int sign_a, int slot_b, int sign_b, int i) {
    QVector v(4 * n, Rational(0));
    v[slot_a * n + i] = sign_a;
    v[slot_b * n + i] = sign_b;
    return v;
  };
  for (int i = 0; i < n; ++i) w.u_basis.push_back(vec4(0, 1, 3, 1, i));   // (u,0,0,u)
  for (int i = 0; i < n; ++i) w.u_basis.push_back(vec4(1, 1, 2, -1, i));  // (0,v,-v,0)
  for (int i = 0; i < n; ++i) w.w_basis.push_back(vec4(0, 1, 3, -1, i));  // (u,0,0,-u)
  for (int i = 0; i < n; ++i) w.w_basis.push_back(vec4(1, 1, 2, 1, i));   // (0,v,v,0)
  return w;
}

QFSystem gen_triangular_pair() {
  QFSystem sys;
  sys.dim = 4;
  sys.forms.push_back(sym_from(4, {{-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}}));
  sys.forms.push_back(sym_from(4, {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}));
  sys.labels = {"q_alpha", "q_beta"};
  return sys;
}

QFSystem gen_galois_pair() {
  QFSystem sys;
  sys.dim = 4;
  sys.forms.push_back(sym_from(4, {{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}}));
  sys.forms.push_back(sym_from(4, {{0, 0, 0, 1}, {0, 0, 2, 0}, {0, 2, 1, 0}, {1, 0, 0, 0}}));
  sys.labels = {"q_alpha", "q_beta"};
  return sys;
}

int hurwitz_radon_rho(long n) {
  if (n < 1) throw MathError("hurwitz_radon_rho needs n >= 1");
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  const int a = v / 4, b = v % 4;
  return 8 * a + (1 << b);
}

std::vector<QMatrix> hurwitz_radon_family(int n) {
  std::vector<QMatrix> out;
  switch (n) {
    case 1:
    case 2:
    case 4:
    case 8:
      for (int k = 0; k < n; ++k) out.push_back(left_mult_matrix_cd(n, k));
      break;
    case 16: {
      out.push_back(QMatrix::identity(16));
      for (int k = 1; k < 8; ++k) {
        const QMatrix l = left_mult_matrix_cd(8, k);
        out.push_back(block_diag({l, -l}));
      }
      QMatrix flip(16, 16);
      for (int i = 0; i < 8; ++i) {
        flip.at(i, 8 + i) = -1;
        flip.at(8 + i, i) = 1;
      }
      out.push_back(flip);
      break;
    }
    default:
      throw MathError("hurwitz_radon_family supports sizes 1, 2, 4, 8, 16");
  }
  if (static_cast<int>(out.size()) != hurwitz_radon_rho(n))
    throw InternalError("family size disagrees with rho");
  check_hurwitz_relations(out, n);
  return out;
}

QFSystem gen_q_se(int n, const std::vector<QMatrix>& s_basis,
                  const std::vector<QMatrix>& e_basis) {
  if (n < 1) throw MathError("gen_q_se needs n >= 1");
  for (const QMatrix& s : s_basis) {
    if (s.rows() != n || s.cols() != n || !s.is_symmetric())
      throw MathError("S basis must consist of symmetric n x n matrices");
    if (signature(s).sgn() != 0) throw MathError("S basis element has nonzero signature");
  }
  for (const QMatrix& e : e_basis)
    if (e.rows() != n || e.cols() != n) throw MathError("E basis must consist of n x n matrices");
  QFSystem sys;
  sys.dim = 2 * n;
  int idx = 0;
  for (const QMatrix& e : e_basis) {
    QMatrix g(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        g.at(i, n + j) = e.at(i, j);
        g.at(n + j, i) = e.at(i, j);
      }
    sys.forms.emplace_back(g);
    sys.labels.push_back("e_" + std::to_string(++idx));
  }
  idx = 0;
  for (const QMatrix& s : s_basis) {
    QMatrix g(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g.at(n + i, n + j) = s.at(i, j);
    sys.forms.emplace_back(g);
    sys.labels.push_back("s_" + std::to_string(++idx));
  }
  validate_system(sys);
  return sys;
}

QFSystem gen_random_system(int dim, int count, int height, uint64_t seed) {
  if (dim < 1) throw MathError("gen_random_system needs dim >= 1");
  if (count < 1) throw MathError("gen_random_system needs count >= 1");
  if (height < 0) throw MathError("gen_random_system needs height >= 0");
  uint64_t state = seed;
  auto next = [&state]() {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  QFSystem sys;
  sys.dim = dim;
  for (int f = 0; f < count; ++f) {
    QMatrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) {
        const long span = 2L * height + 1;
        const long v = static_cast<long>(next() % static_cast<uint64_t>(span)) - height;
        g.at(i, j) = Rational(v);
        g.at(j, i) = g.at(i, j);
      }
    sys.forms.emplace_back(g);
  }
  return sys;
}

QFSystem gen_example(const ExampleSpec& spec) {
  if (spec.name == "block_pair") return gen_block_pair(static_cast<int>(param_or(spec, "n", 1)));
  if (spec.name == "triangular_pair") return gen_triangular_pair();
  if (spec.name == "galois_pair") return gen_galois_pair();
  if (spec.name == "q_se") {
    const int n = static_cast<int>(param_or(spec, "n", 2));
    std::vector<QMatrix> s;
    if (n > 1) {
      QMatrix alt(n, n);
      for (int i = 0; i < n; ++i) alt.at(i, i) = (i % 2 == 0) ? 1 : -1;
      if (signature(alt).sgn() == 0) s.push_back(alt);
    }
    return gen_q_se(n, s, hurwitz_radon_family(n));
  }
  if (spec.name == "random_system")
    return gen_random_system(static_cast<int>(param_or(spec, "dim", 3)),
                             static_cast<int>(param_or(spec, "count", 2)),
                             static_cast<int>(param_or(spec, "height", 3)),
                             static_cast<uint64_t>(param_or(spec, "seed", 1)));
  throw MathError(
      "unknown example '" + spec.name +
      "'; available: block_pair, triangular_pair, galois_pair, q_se, random_system");
}

}  // namespace qfs
