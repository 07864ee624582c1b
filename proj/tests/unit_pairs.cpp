#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>

#include "qfs/closure.hpp"
#include "qfs/errors.hpp"
#include "qfs/gallery.hpp"
#include "qfs/pairs.hpp"

using namespace qfs;

static uint64_t state = 12345;
static uint64_t rng() {
  state += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
static int small_int() { return static_cast<int>(rng() % 7) - 3; }

static QMatrix random_sym(int n) {
  QMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      a.at(i, j) = small_int();
      a.at(j, i) = a.at(i, j);
    }
  return a;
}

static QFSystem random_nonsingular_pair(int maxdim) {
  while (true) {
    int n = 1 + static_cast<int>(rng() % maxdim);
    QMatrix a = random_sym(n);
    if (!inverse(a)) continue;
    return QFSystem{n, {QuadForm(a), QuadForm(random_sym(n))}, {}};
  }
}

TEST_CASE("hermitian translation round trips and validates") {
  QFSystem tri = gen_triangular_pair();
  QFSystem back = from_herm(to_herm(tri));
  CHECK(back.dim == tri.dim);
  CHECK(back.forms[0] == tri.forms[0]);
  CHECK(back.forms[1] == tri.forms[1]);

  HermSpace h;
  h.arrow = jordan_arrow(2, Rational(0));
  h.form_phi = QMatrix::identity(2);
  QFSystem z2 = from_herm(h);
  CHECK(z2.forms[0].gram() == antidiag_ones(2));
  CHECK(z2.forms[1].gram() == hankel_jordan(2, Rational(0)));
  HermSpace h2 = to_herm(z2);
  CHECK(from_herm(h2).forms[0] == z2.forms[0]);

  HermSpace bad = h;
  bad.form_phi = QMatrix(2, 2);  // singular
  CHECK_THROWS_AS(from_herm(bad), MathError);
  bad = h;
  bad.form_phi.at(0, 0) = 1;
  bad.form_phi.at(1, 1) = 2;  // phi^t f_i not symmetric
  CHECK_THROWS_AS(from_herm(bad), MathError);
}

TEST_CASE("pencil endomorphism and its adjoint identities") {
  QMatrix d(2, 2);
  d.at(0, 0) = 2;
  d.at(1, 1) = 3;
  QFSystem s{2, {QuadForm(QMatrix::identity(2)), QuadForm(d)}, {}};
  CHECK(pencil_endomorphism(s) == d);
  QFSystem gal = gen_galois_pair();
  QMatrix j = pencil_endomorphism(gal);
  CHECK(j == gal.forms[0].gram() * gal.forms[1].gram());  // q1 is its own inverse here
  CHECK(j.transpose() * gal.forms[0].gram() == gal.forms[0].gram() * j);
  CHECK(j.transpose() * gal.forms[1].gram() == gal.forms[1].gram() * j);
}

TEST_CASE("singular first form refuses and names the rebasing helper") {
  QFSystem tri = gen_triangular_pair();
  QFSystem swapped{4, {tri.forms[1], tri.forms[0]}, {}};
  try {
    pencil_endomorphism(swapped);
    FAIL("expected a typed refusal");
  } catch (const MathError& e) {
    CHECK(std::string(e.what()).find("find_unimodular_combination") != std::string::npos);
  }
}

TEST_CASE("one generator models: flip times jordan equals hankel") {
  for (int n = 1; n <= 6; ++n)
    for (int a : {0, 1, -2})
      CHECK(antidiag_ones(n) * jordan_block(n, Rational(a)) == hankel_jordan(n, Rational(a)));
  CHECK(jordan_block(1, Rational(5)).at(0, 0) == 5);
  QMatrix t2 = antidiag_ones(2);
  CHECK(t2.at(0, 1) == 1);
  CHECK(t2.at(0, 0) == 0);
}

TEST_CASE("primary decomposition on pinned pencils") {
  // one (X-3)^2 block plus one (X-3) block
  QMatrix q1 = block_diag({antidiag_ones(2), antidiag_ones(1)});
  QMatrix q2 = block_diag({hankel_jordan(2, Rational(3)), hankel_jordan(1, Rational(3))});
  QFSystem s{3, {QuadForm(q1), QuadForm(q2)}, {}};
  KroneckerDecomposition kd = kronecker_decompose(s);
  REQUIRE(kd.blocks.size() == 2);
  UPoly xm3({-3, 1});
  CHECK(kd.blocks[0].prime == xm3);
  CHECK(kd.blocks[0].exponent == 2);
  CHECK(kd.blocks[0].multiplicity == 1);
  CHECK(kd.blocks[1].exponent == 1);

  // irreducible quadratic: the hyperbolic pair has J with charpoly X^2 + 1
  QMatrix exa(2, 2), exb(2, 2);
  exa.at(0, 0) = 1;
  exa.at(1, 1) = -1;
  exb.at(0, 1) = 1;
  exb.at(1, 0) = 1;
  QFSystem exgood{2, {QuadForm(exa), QuadForm(exb)}, {}};
  KroneckerDecomposition ke = kronecker_decompose(exgood);
  REQUIRE(ke.blocks.size() == 1);
  CHECK(ke.blocks[0].prime == UPoly({1, 0, 1}));
  CHECK(ke.blocks[0].exponent == 1);
  CHECK(ke.blocks[0].multiplicity == 1);

  // repeated identity: multiplicity 3 of (X-1)
  QFSystem rep{3, {QuadForm(QMatrix::identity(3)), QuadForm(QMatrix::identity(3))}, {}};
  KroneckerDecomposition kr = kronecker_decompose(rep);
  REQUIRE(kr.blocks.size() == 1);
  CHECK(kr.blocks[0].multiplicity == 3);
  CHECK(kr.blocks[0].exponent == 1);
}

TEST_CASE("primary decomposition certificate on random pairs") {
  for (int trial = 0; trial < 20; ++trial) {
    QFSystem s = random_nonsingular_pair(4);
    QMatrix j = pencil_endomorphism(s);
    KroneckerDecomposition kd = kronecker_decompose(s);
    // charpoly identity
    UPoly prod = UPoly::constant(Rational(1));
    std::vector<QMatrix> blocks;
    for (const auto& b : kd.blocks) {
      prod = prod * b.prime.pow(b.exponent * b.multiplicity);
      for (int c = 0; c < b.multiplicity; ++c) blocks.push_back(b.block_matrix);
    }
    CHECK(prod == charpoly(j));
    // verified base change onto companion blocks
    REQUIRE(inverse(kd.base_change));
    CHECK(j * kd.base_change == kd.base_change * block_diag(blocks));
  }
}

TEST_CASE("polynomials in the pencil land in the closure") {
  for (const QFSystem& s : {gen_triangular_pair(), gen_galois_pair()}) {
    CHECK(closure_poly_form(s, UPoly::constant(Rational(1))) == s.forms[0]);
    CHECK(closure_poly_form(s, UPoly::x()) == s.forms[1]);
    for (int trial = 0; trial < 20; ++trial) {
      int deg = static_cast<int>(rng() % 6);
      QVector coeffs(deg + 1, Rational(0));
      for (auto& c : coeffs) c = small_int();
      UPoly f(coeffs);
      QuadForm qf = closure_poly_form(s, f);
      CHECK(qf.gram().is_symmetric());
      CHECK(closure_contains(s, qf));
    }
  }
}

TEST_CASE("separating polynomials carry exact sign certificates") {
  UPoly x2m2({-2, 0, 1}), x2m3({-3, 0, 1});
  auto r2 = isolate_real_roots(x2m2);
  auto r3 = isolate_real_roots(x2m3);
  REQUIRE(r2.size() == 2);

  // opposite signs of the same minimal polynomial: X itself works
  CHECK(separating_poly({r2[1]}, {r2[0]}) == UPoly::x());
  // single target: a constant
  RealRoot zero{UPoly::x(), Rational(0), Rational(0)};
  CHECK(separating_poly({zero}, {}) == UPoly::constant(Rational(1)));
  // sqrt2 vs sqrt3 needs interpolation; certify the signs exactly
  UPoly g = separating_poly({r2[1]}, {r3[1]});
  CHECK(sign_at_root(g, r2[1]) == 1);
  CHECK(sign_at_root(g, r3[1]) == -1);
  // same root on both sides is refused
  CHECK_THROWS_AS(separating_poly({r2[1]}, {r2[1]}), MathError);
  // duplicates on one side collapse
  UPoly h = separating_poly({r2[1], r2[1]}, {r2[0]});
  CHECK(sign_at_root(h, r2[1]) == 1);
}

TEST_CASE("pair witnesses: pinned levels and certified absence") {
  QFSystem tri = gen_triangular_pair();
  auto wt = pair_witness(tri);
  REQUIRE(wt);
  CHECK(wt->form.sig().sgn() != 0);
  CHECK(closure_contains(tri, wt->form));
  CHECK(wt->prime == UPoly::x());
  CHECK(wt->exponent == 3);
  CHECK(wt->index == 0);

  QFSystem gal = gen_galois_pair();
  auto wg = pair_witness(gal);
  REQUIRE(wg);
  CHECK(wg->form.sig().sgn() != 0);
  CHECK(closure_contains(gal, wg->form));
  CHECK(wg->prime == UPoly({-2, 0, 1}));
  CHECK(wg->exponent == 2);

  // hyperbolic pair: exhaustion proves absence
  QMatrix exa(2, 2), exb(2, 2);
  exa.at(0, 0) = 1;
  exa.at(1, 1) = -1;
  exb.at(0, 1) = 1;
  exb.at(1, 0) = 1;
  QFSystem exgood{2, {QuadForm(exa), QuadForm(exb)}, {}};
  CHECK_FALSE(pair_witness(exgood));
  QMatrix h2(2, 2);
  h2.at(0, 0) = 1;
  h2.at(1, 1) = -1;
  QFSystem hh{2, {QuadForm(h2), QuadForm(h2)}, {}};
  CHECK_FALSE(pair_witness(hh));

  // definite repeated pair: the first form itself is the witness
  QFSystem pp{2, {QuadForm(QMatrix::identity(2)), QuadForm(QMatrix::identity(2))}, {}};
  auto wp = pair_witness(pp);
  REQUIRE(wp);
  CHECK(wp->exponent == 1);
  CHECK(wp->index == 0);
  CHECK(wp->form == pp.forms[0]);
}

TEST_CASE("pair decision agrees with the trace test") {
  PairDecision dt = decide_pair(gen_triangular_pair());
  CHECK_FALSE(dt.exists_n);
  CHECK(dt.witness);
  CHECK(dt.agrees_with_trace_test);

  PairDecision dg = decide_pair(gen_galois_pair());
  CHECK_FALSE(dg.exists_n);
  CHECK(dg.witness);
  CHECK(dg.agrees_with_trace_test);

  QMatrix exa(2, 2), exb(2, 2);
  exa.at(0, 0) = 1;
  exa.at(1, 1) = -1;
  exb.at(0, 1) = 1;
  exb.at(1, 0) = 1;
  PairDecision de = decide_pair(QFSystem{2, {QuadForm(exa), QuadForm(exb)}, {}});
  CHECK(de.exists_n);
  CHECK_FALSE(de.witness);
  CHECK(de.agrees_with_trace_test);
}

TEST_CASE("random concordance between the two decision routes") {
  int with_witness = 0;
  for (int trial = 0; trial < 12; ++trial) {
    QFSystem s = random_nonsingular_pair(4);
    PairDecision d = decide_pair(s);
    CHECK(d.agrees_with_trace_test);
    if (d.witness) {
      CHECK(closure_contains(s, d.witness->form));
      ++with_witness;
    }
  }
  CHECK(with_witness > 0);
}
