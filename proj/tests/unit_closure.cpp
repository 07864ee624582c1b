#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qfs/closure.hpp"
#include "qfs/errors.hpp"
#include "qfs/gallery.hpp"

using namespace qfs;

static QuadForm sym4(std::initializer_list<std::initializer_list<int>> rows) {
  QMatrix m(4, 4);
  int r = 0;
  for (auto& row : rows) {
    int c = 0;
    for (int v : row) m.at(r, c++) = Rational(v);
    ++r;
  }
  return QuadForm(m);
}

TEST_CASE("closure of a single nonzero form is its line") {
  // degenerate
  {
    QMatrix g(2, 2);
    g.at(0, 0) = 1;
    QFSystem s{2, {QuadForm(g)}, {}};
    ClosureSpace c = closure_basis(s);
    CHECK(c.dim_v == 2);
    REQUIRE(c.basis.size() == 1);
    const QMatrix& b = c.basis[0].gram();
    CHECK(b.at(0, 1) == 0);
    CHECK(b.at(1, 1) == 0);
    CHECK(b.at(0, 0) != 0);
    CHECK(closure_contains(s, QuadForm(g)));
  }
  // nondegenerate, proportionality exact
  {
    QuadForm q = QuadForm::diagonal({Rational(2), Rational(-3), Rational(1), Rational(5)});
    QFSystem s{4, {q}, {}};
    ClosureSpace c = closure_basis(s);
    REQUIRE(c.basis.size() == 1);
    Rational lam = c.basis[0].gram().at(0, 0) / q.gram().at(0, 0);
    CHECK(lam != 0);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(c.basis[0].gram().at(i, j) == lam * q.gram().at(i, j));
  }
}

TEST_CASE("triangular pair: three-parameter closure of the displayed shape") {
  QFSystem tri = gen_triangular_pair();
  ClosureSpace c = closure_basis(tri);
  REQUIRE(c.basis.size() == 3);
  CHECK(closure_contains(tri, tri.forms[0]));
  CHECK(closure_contains(tri, tri.forms[1]));
  QuadForm corner = sym4({{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}});
  CHECK(closure_contains(tri, corner));
  // every basis form fits [[-a,0,0,0],[0,0,0,a],[0,0,a,b],[0,a,b,c]]
  for (const QuadForm& q : c.basis) {
    const QMatrix& m = q.gram();
    Rational a = m.at(2, 2);
    CHECK(m.at(0, 0) == -a);
    CHECK(m.at(1, 3) == a);
    CHECK(m.at(3, 1) == a);
    CHECK(m.at(2, 3) == m.at(3, 2));
    CHECK(m.at(0, 1) == 0);
    CHECK(m.at(0, 2) == 0);
    CHECK(m.at(0, 3) == 0);
    CHECK(m.at(1, 1) == 0);
    CHECK(m.at(1, 2) == 0);
  }
}

TEST_CASE("closure is idempotent on the triangular pair") {
  QFSystem tri = gen_triangular_pair();
  ClosureSpace c = closure_basis(tri);
  QFSystem aug = tri;
  for (const QuadForm& q : c.basis) aug.forms.push_back(q);
  aug.labels.clear();
  ClosureSpace c2 = closure_basis(aug);
  CHECK(c2.basis.size() == c.basis.size());
  for (const QuadForm& q : c2.basis) CHECK(closure_contains(tri, q));
}

TEST_CASE("signature scan finds a triangular witness and certifies membership") {
  QFSystem tri = gen_triangular_pair();
  ClosureSpace c = closure_basis(tri);
  auto w = signature_scan(c, 3);
  REQUIRE(w);
  CHECK(w->sig().sgn() != 0);
  CHECK(closure_contains(tri, *w));
}

TEST_CASE("galois pair: membership oracle and scan") {
  QFSystem gal = gen_galois_pair();
  ClosureSpace c = closure_basis(gal);
  CHECK(c.basis.size() == 4);
  QuadForm inside = QuadForm::diagonal({Rational(0), Rational(0), Rational(2), Rational(1)});
  QuadForm outside = QuadForm::diagonal({Rational(1), Rational(0), Rational(0), Rational(0)});
  CHECK(closure_contains(gal, inside));
  CHECK_FALSE(closure_contains(gal, outside));
  auto w = signature_scan(c, 3);
  REQUIRE(w);
  CHECK(w->sig().sgn() != 0);
  CHECK(closure_contains(gal, *w));
}

TEST_CASE("hyperbolic pair: the scan honestly comes up empty") {
  QMatrix a(2, 2), b(2, 2);
  a.at(0, 0) = 1;
  a.at(1, 1) = -1;
  b.at(0, 1) = 1;
  b.at(1, 0) = 1;
  QFSystem ex{2, {QuadForm(a), QuadForm(b)}, {}};
  ClosureSpace c = closure_basis(ex);
  CHECK_FALSE(signature_scan(c, 3));
  CHECK_FALSE(signature_scan(c, 6));
}

TEST_CASE("dimension mismatches refuse with a typed error") {
  QFSystem tri = gen_triangular_pair();
  CHECK_THROWS_AS(closure_contains(tri, QuadForm(QMatrix(2, 2))), MathError);
}
