#include "qfs/roots.hpp"

#include <algorithm>

#include "qfs/errors.hpp"
#include "qfs/factor.hpp"

namespace qfs {

namespace {

UPoly squarefree_part(const UPoly& f) {
  if (f.degree() < 1) return f;
  return f.divrem(poly_gcd(f, f.derivative())).first.monic();
}

}  // namespace

SturmChain::SturmChain(const UPoly& squarefree) {
  if (squarefree.is_zero()) throw InternalError("SturmChain: zero polynomial");
  seq_.push_back(squarefree);
  if (squarefree.degree() < 1) return;
  seq_.push_back(squarefree.derivative());
  while (seq_.back().degree() > 0) {
    UPoly r = seq_[seq_.size() - 2].divrem(seq_.back()).second;
    if (r.is_zero()) break;
    seq_.push_back(-r);
  }
}

int SturmChain::variations(const Rational& x) const {
  int v = 0, last = 0;
  for (const auto& p : seq_) {
    int s = sgn(p.eval(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

int SturmChain::count_open(const Rational& a, const Rational& b) const {
  return variations(a) - variations(b);
}

Rational cauchy_bound(const UPoly& f) {
  if (f.degree() < 0) throw InternalError("cauchy_bound: zero polynomial");
  Rational m(0);
  for (int i = 0; i < f.degree(); ++i) {
    Rational r = abs(f[i] / f.lc());
    if (r > m) m = r;
  }
  return m + 1;
}

std::vector<RealRoot> isolate_real_roots(const UPoly& f) {
  std::vector<RealRoot> out;
  if (f.degree() < 1) return out;
  UPoly full = squarefree_part(f);
  if (full.degree() < 1) return out;
  // Rational roots are reported exactly; bisection handles the rest.  The
  // factorization cap is far above any degree reached here, but stay safe.
  std::vector<Rational> rational_roots;
  UPoly fs = full;
  if (full.degree() <= 16) {
    UPoly rest = UPoly::constant(1);
    for (const auto& fp : factor_rational(full).factors) {
      if (fp.factor.degree() == 1)
        rational_roots.push_back(-fp.factor[0]);
      else
        rest = rest * fp.factor;
    }
    fs = rest;
  }
  for (const Rational& c : rational_roots) out.push_back({full, c, c});
  if (fs.degree() < 1) {
    std::sort(out.begin(), out.end(),
              [](const RealRoot& x, const RealRoot& y) { return x.lo < y.lo; });
    return out;
  }
  Rational c = cauchy_bound(fs);
  SturmChain chain(fs);
  // Split points must avoid roots to keep the Sturm endpoint invariant; a
  // polynomial of degree d cannot occupy all d+1 candidate points.
  auto split_point = [&](const Rational& a, const Rational& b) {
    Rational mid = (a + b) / 2;
    if (sgn(fs.eval(mid)) != 0) return mid;
    for (int i = 1; i <= fs.degree() + 1; ++i) {
      Rational m = a + (b - a) * i / (fs.degree() + 2);
      if (sgn(fs.eval(m)) != 0) return m;
    }
    throw InternalError("isolate_real_roots: no split point");
  };
  // Depth-first, left interval first, so roots come out in increasing order.
  struct Item {
    Rational a, b;
  };
  std::vector<Item> stack{{-c, c}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    int n = chain.count_open(a, b);
    if (n == 0) continue;
    if (n == 1) {
      out.push_back({fs, a, b});
      continue;
    }
    Rational mid = split_point(a, b);
    // Push right first so the left half is processed first.
    stack.push_back({mid, b});
    stack.push_back({a, mid});
  }
  // Shrink every enclosure until it contains no exact rational root, so that
  // ordering by interval data is ordering by value.
  for (auto& r : out) {
    if (r.exact()) continue;
    for (const Rational& q : rational_roots) {
      while (r.lo < q && q < r.hi) {
        Rational mid = (r.lo + r.hi) / 2;
        int s = sgn(r.defining.eval(mid));
        if (s == sgn(r.defining.eval(r.lo)))
          r.lo = mid;
        else
          r.hi = mid;
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const RealRoot& x, const RealRoot& y) { return x.lo + x.hi < y.lo + y.hi; });
  return out;
}

void refine_root(RealRoot& r, const Rational& width) {
  while (!r.exact() && r.hi - r.lo > width) {
    Rational mid = (r.lo + r.hi) / 2;
    int s = sgn(r.defining.eval(mid));
    if (s == 0) {
      r.lo = r.hi = mid;
      return;
    }
    if (s == sgn(r.defining.eval(r.lo)))
      r.lo = mid;
    else
      r.hi = mid;
  }
}

int sign_at_root(const UPoly& g, const RealRoot& r) {
  if (g.is_zero()) return 0;
  if (r.exact()) return sgn(g.eval(r.lo));
  if (g.degree() == 0) return sgn(g[0]);
  // Zero test: the root annihilates g exactly when it is a root of
  // gcd(defining, g), which divides the squarefree defining polynomial.
  UPoly h = poly_gcd(r.defining, g);
  if (h.degree() > 0) {
    SturmChain hc(h);
    if (hc.count_open(r.lo, r.hi) > 0) return 0;
  }
  // Nonzero: narrow the enclosure until g has no root inside, then the sign
  // is constant there.
  RealRoot work = r;
  UPoly gs = squarefree_part(g);
  SturmChain gc(gs);
  while (true) {
    if (!work.exact()) {
      bool endpoint_clear = sgn(gs.eval(work.lo)) != 0 && sgn(gs.eval(work.hi)) != 0;
      if (endpoint_clear && gc.count_open(work.lo, work.hi) == 0)
        return sgn(g.eval((work.lo + work.hi) / 2));
    } else {
      return sgn(g.eval(work.lo));
    }
    refine_root(work, (work.hi - work.lo) / 2);
  }
}

int count_real_roots(const UPoly& f) {
  if (f.degree() < 1) return 0;
  UPoly fs = squarefree_part(f);
  Rational c = cauchy_bound(fs);
  return SturmChain(fs).count_open(-c, c);
}

}  // namespace qfs
