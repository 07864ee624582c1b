// End-to-end acceptance suites, one per printed line.  Each suite has a
// pinned wall-clock limit and every numeric expectation is exact.  Run with
// no arguments for all suites, or with a single 1-based index.
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "qfs/closure.hpp"
#include "qfs/errors.hpp"
#include "qfs/gallery.hpp"
#include "qfs/involution.hpp"
#include "qfs/pairs.hpp"
#include "qfs/quadform.hpp"
#include "qfs/sweep.hpp"

using namespace qfs;

namespace {

struct Ctx {
  std::vector<std::string> failures;
  void check(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

uint64_t mix_state = 0;
uint64_t rng() {
  mix_state += 0x9e3779b97f4a7c15ULL;
  uint64_t z = mix_state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
int small_int() { return static_cast<int>(rng() % 7) - 3; }

QMatrix random_sym(int n) {
  QMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      a.at(i, j) = small_int();
      a.at(j, i) = a.at(i, j);
    }
  return a;
}

// ---- suite 1: the triangular pair reproduces every pinned value ----

bool phi_psi_fit_display(const QMatrix& phi, const QMatrix& psi) {
  auto zero_pattern = [](const QMatrix& m) {
    return m.at(0, 1) == 0 && m.at(0, 2) == 0 && m.at(2, 0) == 0 && m.at(2, 1) == 0 &&
           m.at(3, 0) == 0 && m.at(3, 1) == 0 && m.at(3, 2) == 0;
  };
  auto banded = [](const QMatrix& m) {
    return m.at(1, 1) == m.at(2, 2) && m.at(2, 2) == m.at(3, 3) && m.at(1, 2) == m.at(2, 3);
  };
  return zero_pattern(phi) && zero_pattern(psi) && banded(phi) && banded(psi) &&
         psi.at(0, 0) == phi.at(0, 0) && psi.at(0, 3) == -phi.at(1, 0) &&
         psi.at(1, 0) == -phi.at(0, 3) && psi.at(1, 1) == phi.at(1, 1) &&
         psi.at(1, 2) == phi.at(1, 2) && psi.at(1, 3) == phi.at(1, 3);
}

void suite_triangular(Ctx& c) {
  QFSystem tri = gen_triangular_pair();
  InvAlgebra a = adjoint_algebra(tri);
  c.check(a.dim() == 6, "adjoint algebra dimension should be 6, got " + std::to_string(a.dim()));
  for (int i = 0; i < a.dim(); ++i)
    c.check(phi_psi_fit_display(a.phi_basis[i], a.psi_basis[i]),
            "adjoint basis pair " + std::to_string(i) + " leaves the six-parameter shape");
  int sgn = trace_form(a).sig().sgn();
  c.check(sgn == 2, "trace form signature should be 2, got " + std::to_string(sgn));
  ClosureSpace cl = closure_basis(tri);
  c.check(cl.basis.size() == 3,
          "closure dimension should be 3, got " + std::to_string(cl.basis.size()));
  for (size_t k = 0; k < cl.basis.size(); ++k) {
    const QMatrix& m = cl.basis[k].gram();
    Rational al = m.at(2, 2);
    bool fits = m.at(0, 0) == -al && m.at(1, 3) == al && m.at(3, 1) == al &&
                m.at(2, 3) == m.at(3, 2) && m.at(0, 1) == 0 && m.at(0, 2) == 0 &&
                m.at(0, 3) == 0 && m.at(1, 1) == 0 && m.at(1, 2) == 0;
    c.check(fits, "closure basis form " + std::to_string(k) + " leaves the displayed shape");
  }
  c.check(!decide_by_trace(tri).exists_n, "no multiple of the pair should be hyperbolic");
}

// ---- suite 2: the galois pair, both decision routes ----

void suite_galois(Ctx& c) {
  QFSystem gal = gen_galois_pair();
  QuadForm target =
      QuadForm::diagonal({Rational(0), Rational(0), Rational(2), Rational(1)});
  c.check(closure_contains(gal, target), "diag(0,0,2,1) should lie in the closure");
  c.check(target.sig().sgn() == 2, "diag(0,0,2,1) should have signature 2");
  PairDecision d = decide_pair(gal);
  c.check(!d.exists_n, "no multiple of the pair should be hyperbolic");
  c.check(d.witness.has_value(), "the level sweep should produce a witness");
  if (d.witness) {
    c.check(d.witness->form.sig().sgn() != 0, "witness must have nonzero signature");
    c.check(closure_contains(gal, d.witness->form), "witness must lie in the closure");
  }
  c.check(d.agrees_with_trace_test, "both decision routes must agree");
}

// ---- suite 3: the block family and its doubling witness ----

void suite_block_pair(Ctx& c) {
  for (int n = 1; n <= 3; ++n) {
    QFSystem sys = gen_block_pair(n);
    HypWitness w = block_pair_doubling_witness(n);
    std::string why;
    bool ok = verify_hyp_witness(n_times(sys, 2), w, &why);
    c.check(ok, "doubling witness rejected for the full family at n=" + std::to_string(n) +
                    " (" + why + ")");
    WeakOrder wo = weak_order(sys, 4);
    c.check(wo.order.has_value() && *wo.order == 2,
            "weak order should be 2 at n=" + std::to_string(n) +
                (wo.order ? ", got " + std::to_string(*wo.order) : ", got none"));
  }
  InvAlgebra a1 = adjoint_algebra(gen_block_pair(1));
  c.check(find_hyperbolic_idempotent(a1).verdict == HypVerdict::none_certified,
          "the unamplified n=1 system should be certified non-hyperbolic");
}

// ---- suite 4: single forms, the two exact laws ----

void suite_single_forms(Ctx& c) {
  mix_state = 41;
  int degenerate_seen = 0;
  for (int count = 0; count < 30;) {
    int d = 1 + static_cast<int>(rng() % 5);
    QMatrix g = random_sym(d);
    if (count % 3 == 0 && d >= 2) {
      for (int i = 0; i < d; ++i) {
        g.at(d - 1, i) = 0;
        g.at(i, d - 1) = 0;
      }
    }
    if (g.is_zero()) continue;
    QuadForm q(g);
    if (q.sig().zero > 0) ++degenerate_seen;
    QFSystem s{d, {q}, {}};
    int sq = q.sig().sgn();
    int st = trace_form(adjoint_algebra(s)).sig().sgn();
    c.check(st == sq * sq, "trace signature " + std::to_string(st) + " differs from " +
                               std::to_string(sq) + "^2 at sample " + std::to_string(count));
    ClosureSpace cl = closure_basis(s);
    c.check(cl.basis.size() == 1,
            "closure of a single form should be a line, sample " + std::to_string(count));
    if (cl.basis.size() == 1) {
      const QMatrix& b = cl.basis[0].gram();
      Rational lam;
      bool found = false;
      for (int i = 0; i < d && !found; ++i)
        for (int j = 0; j < d && !found; ++j)
          if (g.at(i, j) != 0) {
            lam = b.at(i, j) / g.at(i, j);
            found = true;
          }
      bool prop = found && lam != 0;
      for (int i = 0; i < d && prop; ++i)
        for (int j = 0; j < d; ++j)
          if (b.at(i, j) != lam * g.at(i, j)) {
            prop = false;
            break;
          }
      c.check(prop, "closure line is not spanned by the form, sample " + std::to_string(count));
    }
    ++count;
  }
  c.check(degenerate_seen >= 5, "sample should include degenerate forms, saw " +
                                    std::to_string(degenerate_seen));
}

// ---- suite 5: the two decision routes agree everywhere we can reach ----

void suite_concordance(Ctx& c) {
  std::vector<QFSystem> pairs = {gen_triangular_pair(), gen_galois_pair(), gen_block_pair(1),
                                 gen_block_pair_sym(1)};
  for (auto [n, al] : std::vector<std::pair<int, int>>{{2, 0}, {3, 1}, {4, -2}})
    pairs.push_back(QFSystem{
        n,
        {QuadForm(antidiag_ones(n)), QuadForm(hankel_jordan(n, Rational(al)))},
        {}});
  mix_state = 1001;
  int built = 0;
  while (built < 30) {
    int n = 1 + static_cast<int>(rng() % 4);
    QMatrix a = random_sym(n);
    if (!inverse(a)) continue;
    pairs.push_back(QFSystem{n, {QuadForm(a), QuadForm(random_sym(n))}, {}});
    ++built;
  }
  for (size_t i = 0; i < pairs.size(); ++i) {
    PairDecision d = decide_pair(pairs[i]);
    c.check(d.agrees_with_trace_test,
            "decision routes disagree on pair " + std::to_string(i));
    if (d.witness)
      c.check(closure_contains(pairs[i], d.witness->form),
              "witness escapes the closure on pair " + std::to_string(i));
  }
}

// ---- suite 6: structural identities of the adjoint machinery ----

void suite_structure(Ctx& c) {
  // amplification dimension law
  for (const QFSystem& sys : {gen_block_pair(1), gen_triangular_pair()}) {
    InvAlgebra a = adjoint_algebra(sys);
    for (int m : {1, 2, 3}) {
      int direct = adjoint_algebra(n_times(sys, m)).dim();
      c.check(direct == m * m * a.dim(),
              "amplified adjoint dimension is not quadratic at m=" + std::to_string(m));
    }
  }
  // translation round trips
  for (const QFSystem& sys : {gen_triangular_pair(), gen_galois_pair(), gen_block_pair(1)}) {
    QFSystem back = from_herm(to_herm(sys));
    c.check(back.dim == sys.dim && back.forms == sys.forms,
            "system -> hermitian -> system is not the identity");
  }
  HermSpace h;
  h.arrow = jordan_arrow(3, Rational(2));
  h.form_phi = QMatrix::identity(3);
  HermSpace h2 = to_herm(from_herm(h));
  c.check(h2.arrow.f1 == h.arrow.f1 && h2.arrow.f2 == h.arrow.f2 &&
              h2.form_phi == h.form_phi,
          "hermitian -> system -> hermitian is not the identity");
  // involution laws on random elements
  mix_state = 7;
  for (const QFSystem& sys : {gen_triangular_pair(), gen_block_pair(1)}) {
    InvAlgebra a = adjoint_algebra(sys);
    for (int t = 0; t < 50; ++t) {
      QVector x(a.dim()), y(a.dim());
      for (auto& v : x) v = small_int();
      for (auto& v : y) v = small_int();
      bool anti = apply_sigma(a, alg_mul(a.alg, x, y)) ==
                  alg_mul(a.alg, apply_sigma(a, y), apply_sigma(a, x));
      bool invol = apply_sigma(a, apply_sigma(a, x)) == x;
      c.check(anti, "swap is not an anti-automorphism at trial " + std::to_string(t));
      c.check(invol, "swap is not involutive at trial " + std::to_string(t));
    }
  }
  // radical: nilpotent and swap-stable on the gallery
  std::vector<QFSystem> gallery = {gen_triangular_pair(), gen_galois_pair(), gen_block_pair(1),
                                   gen_block_pair(2), gen_block_pair_sym(2),
                                   gen_example({"q_se", {}})};
  for (size_t gi = 0; gi < gallery.size(); ++gi) {
    InvAlgebra a = adjoint_algebra(gallery[gi]);
    std::vector<QVector> j = dickson_radical(a);
    for (const QVector& x : j)
      c.check(coords_in(j, apply_sigma(a, x)).has_value(),
              "radical is not swap-stable on gallery system " + std::to_string(gi));
    std::vector<QVector> cur = span_rows(j);
    int steps = 0;
    while (!cur.empty() && steps <= a.dim()) {
      std::vector<QVector> prods;
      for (const QVector& x : cur)
        for (const QVector& y : j) prods.push_back(alg_mul(a.alg, x, y));
      cur = span_rows(prods);
      ++steps;
    }
    c.check(cur.empty(),
            "radical power chain does not vanish on gallery system " + std::to_string(gi));
  }
}

// ---- suite 7: invertibility families ----

void suite_hurwitz_radon(Ctx& c) {
  const std::vector<std::pair<long, int>> table = {{1, 1}, {2, 2}, {4, 4}, {8, 8}, {16, 9}};
  for (auto [n, want] : table)
    c.check(hurwitz_radon_rho(n) == want,
            "rho(" + std::to_string(n) + ") should be " + std::to_string(want));
  for (int n : {1, 2, 4, 8, 16}) {
    auto es = hurwitz_radon_family(n);
    c.check(static_cast<int>(es.size()) == hurwitz_radon_rho(n),
            "family size mismatch at n=" + std::to_string(n));
    bool rel = true;
    for (size_t i = 0; i < es.size() && rel; ++i)
      for (size_t j = 0; j < es.size() && rel; ++j) {
        QMatrix lhs = es[i].transpose() * es[j] + es[j].transpose() * es[i];
        QMatrix want =
            i == j ? QMatrix::identity(n).scaled(Rational(2)) : QMatrix(n, n);
        rel = (lhs == want);
      }
    c.check(rel, "orthogonality relations fail at n=" + std::to_string(n));
  }
  mix_state = 99;
  auto e16 = hurwitz_radon_family(16);
  int tested = 0;
  while (tested < 20) {
    QMatrix m(16, 16);
    bool nonzero = false;
    for (const auto& e : e16) {
      long coeff = small_int();
      if (coeff != 0) nonzero = true;
      m = m + e.scaled(Rational(coeff));
    }
    if (!nonzero) continue;
    c.check(det(m) != 0, "a nonzero combination is singular at trial " + std::to_string(tested));
    ++tested;
  }
}

// ---- suite 8: the algebra route against a vector search oracle ----

// All isotropic integer vectors of max-norm <= height, in increasing shell
// order, capped.
std::vector<QVector> isotropic_vectors(const QuadForm& q, int height, size_t cap) {
  std::vector<QVector> out;
  sweep_integer_shells(q.dim(), height, [&](const std::vector<Rational>& v) {
    if (q.value(v) == 0) out.push_back(v);
    return out.size() >= cap;
  });
  return out;
}

bool totally_isotropic(const QuadForm& q, const QVector& x, const QVector& y) {
  return q.bilinear(x, y) == 0;
}

// Searches bounded-height integer vectors for two complementary totally
// isotropic planes.  Success is verified by the caller; failure proves
// nothing beyond the height bound.
std::optional<HypWitness> split_search(const QuadForm& q, int height) {
  std::vector<QVector> iso = isotropic_vectors(q, height, 400);
  const size_t ucap = std::min<size_t>(iso.size(), 60);
  for (size_t i = 0; i < ucap; ++i)
    for (size_t j = i + 1; j < ucap; ++j) {
      if (!totally_isotropic(q, iso[i], iso[j])) continue;
      if (rank(QMatrix::from_rows({iso[i], iso[j]})) != 2) continue;
      for (size_t k = 0; k < iso.size(); ++k)
        for (size_t l = k + 1; l < iso.size(); ++l) {
          if (!totally_isotropic(q, iso[k], iso[l])) continue;
          if (rank(QMatrix::from_rows({iso[i], iso[j], iso[k], iso[l]})) != 4) continue;
          return HypWitness{{iso[i], iso[j]}, {iso[k], iso[l]}};
        }
    }
  return std::nullopt;
}

void suite_oracle(Ctx& c) {
  QFSystem s{2, {QuadForm::diagonal({Rational(1), Rational(-2)})}, {}};
  WeakOrder wo = weak_order(s, 3);
  c.check(wo.order.has_value() && *wo.order == 2, "algebra route should report order 2");

  // the same facts from nothing but integer vectors:
  c.check(isotropic_vectors(s.forms[0], 10, 1).empty(),
          "<1,-2> should have no isotropic vector of height <= 10");
  for (QuadForm q4 :
       {QuadForm::diagonal({Rational(1), Rational(1), Rational(-2), Rational(-2)}),
        n_times(s, 2).forms[0]}) {
    auto w = split_search(q4, 10);
    c.check(w.has_value(), "height-10 search should split the doubled form");
    if (w) {
      std::string why;
      QFSystem sys4{4, {q4}, {}};
      bool ok = verify_hyp_witness(sys4, *w, &why);
      c.check(ok, "oracle witness rejected: " + why);
    }
  }

  // signature is a congruence invariant, exactly
  mix_state = 2024;
  std::vector<QuadForm> forms = {
      s.forms[0],
      QuadForm::diagonal({Rational(1), Rational(1), Rational(-2), Rational(-2)}),
      QuadForm::diagonal({Rational(1), Rational(0), Rational(-3)})};
  for (size_t fi = 0; fi < forms.size(); ++fi) {
    const QuadForm& q = forms[fi];
    int n = q.dim();
    Signature want = q.sig();
    for (int t = 0; t < 50; ++t) {
      QMatrix u = QMatrix::identity(n), l = QMatrix::identity(n), dg = QMatrix::identity(n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          u.at(i, j) = small_int();
          l.at(j, i) = small_int();
        }
      const Rational choices[4] = {Rational(1), Rational(-1), Rational(2), Rational(1, 2)};
      for (int i = 0; i < n; ++i) dg.at(i, i) = choices[rng() % 4];
      QMatrix p = u * dg * l;
      Signature got = QuadForm(p.transpose() * q.gram() * p).sig();
      c.check(got == want, "signature drifted under congruence, form " + std::to_string(fi) +
                               " trial " + std::to_string(t));
    }
  }
}

struct Suite {
  std::string name;
  long limit_ms;
  std::function<void(Ctx&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Suite> suites = {
      {"triangular pair suite", 1000, suite_triangular},
      {"galois pair suite", 2000, suite_galois},
      {"block pair suite", 2000, suite_block_pair},
      {"single form suite", 10000, suite_single_forms},
      {"pair concordance suite", 60000, suite_concordance},
      {"structure suite", 10000, suite_structure},
      {"hurwitz radon suite", 5000, suite_hurwitz_radon},
      {"oracle cross-check suite", 30000, suite_oracle},
  };
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > static_cast<int>(suites.size())) {
      std::cerr << "usage: acceptance [1.." << suites.size() << "]\n";
      return 2;
    }
  }
  int failed = 0;
  for (size_t i = 0; i < suites.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    Ctx ctx;
    auto t0 = std::chrono::steady_clock::now();
    try {
      suites[i].run(ctx);
    } catch (const std::exception& e) {
      ctx.failures.push_back(std::string("unexpected exception: ") + e.what());
    }
    long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    if (ms > suites[i].limit_ms)
      ctx.failures.push_back("exceeded the time limit of " +
                             std::to_string(suites[i].limit_ms) + " ms");
    for (const std::string& f : ctx.failures) std::cout << "  - " << f << "\n";
    std::cout << (ctx.failures.empty() ? "PASS " : "FAIL ") << suites[i].name << " (" << ms
              << " ms, limit " << suites[i].limit_ms << " ms)" << std::endl;
    if (!ctx.failures.empty()) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
