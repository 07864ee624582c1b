#pragma once

#include <string>
#include <utility>

#include "qfs/rational.hpp"

namespace qfs {

/// Dense univariate polynomial over Q, coefficients lowest-degree first.
/// The zero polynomial has an empty coefficient vector and degree -1.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(QVector coeffs) : c_(std::move(coeffs)) { trim(); }

  static UPoly constant(const Rational& a) { return UPoly(QVector{a}); }
  static UPoly x() { return UPoly(QVector{Rational(0), Rational(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const QVector& coeffs() const { return c_; }

  /// Coefficient of X^k; zero beyond the degree.
  const Rational& operator[](int k) const;
  Rational lc() const;

  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly operator-() const;
  UPoly scaled(const Rational& a) const;
  bool operator==(const UPoly& o) const { return c_ == o.c_; }

  /// Quotient and remainder; divisor must be nonzero.
  std::pair<UPoly, UPoly> divrem(const UPoly& d) const;

  Rational eval(const Rational& x) const;
  UPoly derivative() const;
  UPoly pow(unsigned e) const;
  UPoly monic() const;

  std::string to_string(const std::string& var = "X") const;

 private:
  void trim();
  QVector c_;
};

/// Monic gcd; gcd(0,0) = 0.
UPoly poly_gcd(UPoly a, UPoly b);

/// Extended gcd: g = s*a + t*b with g monic (or zero).
struct PolyEgcd {
  UPoly g, s, t;
};
PolyEgcd poly_egcd(const UPoly& a, const UPoly& b);

}  // namespace qfs
