#include "qfs/poly.hpp"

#include <sstream>

#include "qfs/errors.hpp"

namespace qfs {

namespace {
const Rational kZero(0);
}

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& UPoly::operator[](int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
  return c_[k];
}

Rational UPoly::lc() const {
  if (is_zero()) throw InternalError("lc of zero polynomial");
  return c_.back();
}

UPoly UPoly::operator+(const UPoly& o) const {
  QVector r(std::max(c_.size(), o.c_.size()), Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return UPoly(std::move(r));
}

UPoly UPoly::operator-(const UPoly& o) const {
  QVector r(std::max(c_.size(), o.c_.size()), Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return UPoly(std::move(r));
}

UPoly UPoly::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return UPoly();
  QVector r(c_.size() + o.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return UPoly(std::move(r));
}

UPoly UPoly::operator-() const {
  QVector r(c_);
  for (auto& x : r) x = -x;
  return UPoly(std::move(r));
}

UPoly UPoly::scaled(const Rational& a) const {
  QVector r(c_);
  for (auto& x : r) x *= a;
  return UPoly(std::move(r));
}

std::pair<UPoly, UPoly> UPoly::divrem(const UPoly& d) const {
  if (d.is_zero()) throw InternalError("polynomial division by zero");
  QVector rem(c_);
  int dd = d.degree();
  int rd = static_cast<int>(rem.size()) - 1;
  if (rd < dd) return {UPoly(), *this};
  QVector quo(rd - dd + 1, Rational(0));
  for (int k = rd; k >= dd; --k) {
    if (rem[k] == 0) continue;
    Rational f = rem[k] / d.c_[dd];
    quo[k - dd] = f;
    for (int j = 0; j <= dd; ++j) rem[k - dd + j] -= f * d.c_[j];
  }
  return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

Rational UPoly::eval(const Rational& x) const {
  Rational r(0);
  for (int k = degree(); k >= 0; --k) r = r * x + c_[k];
  return r;
}

UPoly UPoly::derivative() const {
  if (degree() < 1) return UPoly();
  QVector r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long>(i));
  return UPoly(std::move(r));
}

UPoly UPoly::pow(unsigned e) const {
  UPoly r = UPoly::constant(Rational(1));
  UPoly base = *this;
  while (e) {
    if (e & 1u) r = r * base;
    base = base * base;
    e >>= 1u;
  }
  return r;
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(Rational(1) / lc());
}

std::string UPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& a = c_[k];
    if (a == 0) continue;
    Rational mag = abs(a);
    if (first) {
      if (sgn(a) < 0) os << "-";
      first = false;
    } else {
      os << (sgn(a) < 0 ? " - " : " + ");
    }
    if (k == 0 || mag != 1) os << mag.get_str();
    if (k > 0) {
      if (mag != 1) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

UPoly poly_gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a.divrem(b).second;
    a = std::move(b);
    b = r.is_zero() ? UPoly() : r.monic();
  }
  return a.is_zero() ? a : a.monic();
}

PolyEgcd poly_egcd(const UPoly& a, const UPoly& b) {
  UPoly r0 = a, r1 = b;
  UPoly s0 = UPoly::constant(1), s1;
  UPoly t0, t1 = UPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divrem(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    UPoly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    UPoly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {UPoly(), UPoly(), UPoly()};
  Rational inv_lc = Rational(1) / r0.lc();
  return {r0.scaled(inv_lc), s0.scaled(inv_lc), t0.scaled(inv_lc)};
}

}  // namespace qfs
