#pragma once

#include <functional>
#include <vector>

#include "qfs/rational.hpp"

namespace qfs {

/// Integer tuples of max-norm h = 1..height over k coordinates, shells in
/// increasing h, lexicographic within a shell.  Stops early when f returns
/// true; returns whether it did.
inline bool sweep_integer_shells(int k, int height,
                                 const std::function<bool(const std::vector<Rational>&)>& f) {
  for (int h = 1; h <= height; ++h) {
    std::vector<long> c(k, -h);
    while (true) {
      bool on_shell = false;
      for (long x : c)
        if (x == h || x == -h) {
          on_shell = true;
          break;
        }
      if (on_shell) {
        std::vector<Rational> tup(k);
        for (int i = 0; i < k; ++i) tup[i] = Rational(c[i]);
        if (f(tup)) return true;
      }
      int pos = k - 1;
      while (pos >= 0) {
        if (++c[pos] <= h) break;
        c[pos] = -h;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  return false;
}

/// All tuples from the given value list (odometer order, last coordinate
/// fastest), skipping the all-zero tuple.  Stops early when f returns true.
inline bool sweep_value_tuples(const std::vector<Rational>& vals, int k,
                               const std::function<bool(const std::vector<Rational>&)>& f) {
  std::vector<size_t> idx(k, 0);
  std::vector<Rational> tup(k, vals[0]);
  while (true) {
    bool all_zero = true;
    for (const auto& c : tup)
      if (c != 0) {
        all_zero = false;
        break;
      }
    if (!all_zero && f(tup)) return true;
    int pos = k - 1;
    while (pos >= 0) {
      if (++idx[pos] < vals.size()) {
        tup[pos] = vals[idx[pos]];
        break;
      }
      idx[pos] = 0;
      tup[pos] = vals[0];
      --pos;
    }
    if (pos < 0) return false;
  }
}

}  // namespace qfs
