#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qfs/errors.hpp"
#include "qfs/quadform.hpp"
#include "qfs/system_io.hpp"

using namespace qfs;

static QMatrix mat(int n, std::vector<std::vector<long>> rows) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
  return m;
}

TEST_CASE("signature oracles") {
  CHECK(QuadForm::diagonal({Rational(1), Rational(-2)}).sig() == Signature{1, 1, 0});
  CHECK(QuadForm::diagonal({Rational(3), Rational(5), Rational(0)}).sig() == Signature{2, 0, 1});
  CHECK(QuadForm::zero(3).sig() == Signature{0, 0, 3});
  // hyperbolic plane: the flip form has signature 0
  CHECK(QuadForm(mat(2, {{0, 1}, {1, 0}})).sig() == Signature{1, 1, 0});
  // a form needing a pivot-free congruence step
  CHECK(QuadForm(mat(3, {{0, 1, 0}, {1, 0, 0}, {0, 0, 2}})).sig() == Signature{2, 1, 0});
  CHECK(Signature{2, 1, 0}.sgn() == 1);
}

TEST_CASE("congruence diagonalization is a congruence") {
  QMatrix s = mat(3, {{0, 1, 2}, {1, -1, 0}, {2, 0, 3}});
  auto r = congruence_diagonalize(s);
  QMatrix d = r.p.transpose() * s * r.p;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i != j) CHECK(d.at(i, j) == 0);
      CHECK(d.at(i, j) == r.d.at(i, j));
    }
  CHECK(det(r.p) != 0);
}

TEST_CASE("quadratic form values and polarization") {
  QuadForm q(mat(2, {{1, 2}, {2, -1}}));
  QVector x{Rational(1), Rational(1)}, y{Rational(1), Rational(-1)};
  CHECK(q.value(x) == Rational(4));       // 1 + 4 - 1
  CHECK(q.bilinear(x, y) == Rational(2)); // (1,1) S (1,-1)^t = (3,1).(1,-1)
  CHECK(q.bilinear(x, y) == q.bilinear(y, x));
}

TEST_CASE("orthogonal multiples stack block diagonally") {
  QFSystem s{2, {QuadForm::diagonal({Rational(1), Rational(-2)})}, {"q"}};
  QFSystem d = n_times(s, 3);
  CHECK(d.dim == 6);
  REQUIRE(d.count() == 1);
  CHECK(d.forms[0].sig() == Signature{3, 3, 0});
  CHECK(d.forms[0].gram().at(0, 0) == 1);
  CHECK(d.forms[0].gram().at(3, 3) == -2);
  CHECK(d.forms[0].gram().at(0, 2) == 0);
}

TEST_CASE("hyperbolic witness verification accepts and rejects exactly") {
  // flip form on Q^2: e1 and e2 span isotropic lines
  QFSystem s{2, {QuadForm(mat(2, {{0, 1}, {1, 0}}))}, {}};
  HypWitness good{{QVector{Rational(1), Rational(0)}}, {QVector{Rational(0), Rational(1)}}};
  std::string why;
  CHECK(verify_hyp_witness(s, good, &why));
  // not jointly spanning
  HypWitness thin{{QVector{Rational(1), Rational(0)}}, {QVector{Rational(2), Rational(0)}}};
  CHECK_FALSE(verify_hyp_witness(s, thin, &why));
  CHECK(!why.empty());
  // not isotropic
  QFSystem pos{2, {QuadForm::diagonal({Rational(1), Rational(1)})}, {}};
  CHECK_FALSE(verify_hyp_witness(pos, good, &why));
}

TEST_CASE("radical split isolates the zero part") {
  QuadForm q(mat(3, {{1, 1, 0}, {1, 1, 0}, {0, 0, 2}}));  // rank 2
  RadicalSplit r = radical_split(q);
  CHECK(r.zero_count == 1);
  CHECK(r.unimodular_part.dim() == 2);
  CHECK(r.unimodular_part.sig().zero == 0);
  QMatrix d = r.basis_change.transpose() * q.gram() * r.basis_change;
  for (int i = 0; i < 2; ++i) CHECK(d.at(i, i) == r.unimodular_part.gram().at(i, i));
  CHECK(d.at(2, 2) == 0);
}

TEST_CASE("unimodular combination search") {
  // q1 singular, q2 singular, but q1 + q2 invertible
  QFSystem s{2,
             {QuadForm::diagonal({Rational(1), Rational(0)}),
              QuadForm::diagonal({Rational(0), Rational(1)})},
             {}};
  auto c = find_unimodular_combination(s);
  REQUIRE(c);
  QMatrix sum(2, 2);
  for (size_t i = 0; i < s.count(); ++i) sum = sum + s.forms[i].gram().scaled((*c)[i]);
  CHECK(det(sum) != 0);
  // span of a single singular form: certified absence
  QFSystem none{2, {QuadForm::diagonal({Rational(1), Rational(0)})}, {}};
  CHECK_FALSE(find_unimodular_combination(none));
}

TEST_CASE("definiteness trichotomy") {
  CHECK(definiteness(QuadForm::diagonal({Rational(2), Rational(3)})) == Definiteness::positive);
  CHECK(definiteness(QuadForm::diagonal({Rational(-1), Rational(-5)})) == Definiteness::negative);
  CHECK(definiteness(QuadForm::diagonal({Rational(1), Rational(-1)})) == Definiteness::neither);
  CHECK(definiteness(QuadForm::diagonal({Rational(1), Rational(0)})) == Definiteness::neither);
}

TEST_CASE("system serialization round trips byte exactly") {
  QFSystem s;
  s.dim = 2;
  s.forms.push_back(QuadForm::diagonal({Rational(1), Rational(-2)}));
  QMatrix g(2, 2);
  g.at(0, 1) = Rational(1, 2);
  g.at(1, 0) = Rational(1, 2);
  s.forms.push_back(QuadForm(g));
  s.labels = {"a", "b"};
  std::string t = serialize_system(s);
  QFSystem s2 = parse_system(t);
  CHECK(serialize_system(s2) == t);
  CHECK(s2.dim == 2);
  CHECK(s2.labels == s.labels);
  CHECK(s2.forms[1].gram().at(0, 1) == Rational(1, 2));
  // labels optional
  QFSystem s3{1, {QuadForm::zero(1)}, {}};
  std::string t3 = serialize_system(s3);
  CHECK(serialize_system(parse_system(t3)) == t3);
}

TEST_CASE("system parser rejects malformed input with typed errors") {
  CHECK_THROWS_AS(parse_system("{\"dim\":2"), ParseError);
  CHECK_THROWS_AS(parse_system("[]"), ParseError);
  // nonsymmetric gram
  CHECK_THROWS_AS(parse_system(R"({"dim":2,"forms":[[["1","2"],["0","1"]]]})"), ParseError);
  // wrong matrix size
  CHECK_THROWS_AS(parse_system(R"({"dim":2,"forms":[[["1"]]]})"), ParseError);
  // label count mismatch
  CHECK_THROWS_AS(
      parse_system(R"({"dim":1,"forms":[[["1"]]],"labels":["a","b"]})"), ParseError);
}

TEST_CASE("witness records serialize canonically for all three kinds") {
  WitnessRecord idem;
  idem.kind = WitnessRecord::Kind::idempotent;
  idem.amplification = 2;
  idem.phi = QMatrix::identity(2);
  idem.psi = QMatrix::identity(2);
  std::string t = serialize_witness(idem);
  WitnessRecord back = parse_witness(t);
  CHECK(back.kind == WitnessRecord::Kind::idempotent);
  CHECK(back.amplification == 2);
  CHECK(serialize_witness(back) == t);

  WitnessRecord hyp;
  hyp.kind = WitnessRecord::Kind::hyperbolic_subspaces;
  hyp.u_basis = {{Rational(1), Rational(0)}};
  hyp.w_basis = {{Rational(0), Rational(1)}};
  CHECK(serialize_witness(parse_witness(serialize_witness(hyp))) == serialize_witness(hyp));

  WitnessRecord cf;
  cf.kind = WitnessRecord::Kind::closure_form;
  cf.gram = mat(2, {{1, 0}, {0, -1}});
  WitnessRecord cf2 = parse_witness(serialize_witness(cf));
  CHECK(cf2.gram == cf.gram);

  CHECK_THROWS_AS(parse_witness("{\"type\":\"nope\"}"), ParseError);
}

TEST_CASE("content digest is the pinned fnv1a") {
  CHECK(content_digest("") == "cbf29ce484222325");
  CHECK(content_digest("a") != content_digest("b"));
  CHECK(content_digest("abc") == content_digest("abc"));
}
