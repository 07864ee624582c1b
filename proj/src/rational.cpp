#include "qfs/rational.hpp"

#include <cctype>

#include "qfs/errors.hpp"

namespace qfs {

std::string rat_to_string(const Rational& x) { return x.get_str(); }

Rational rat_from_string(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  // strict syntax: -?digits(/digits)?  with nonzero denominator
  size_t i = 0;
  if (s[0] == '-' || s[0] == '+') i = 1;
  if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
    throw ParseError("bad rational literal: '" + s + "'");
  bool seen_slash = false;
  for (size_t j = i; j < s.size(); ++j) {
    if (s[j] == '/') {
      if (seen_slash || j + 1 == s.size())
        throw ParseError("bad rational literal: '" + s + "'");
      seen_slash = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(s[j])))
      throw ParseError("bad rational literal: '" + s + "'");
  }
  Rational x;
  if (x.set_str(s, 10) != 0) throw ParseError("bad rational literal: '" + s + "'");
  if (x.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  x.canonicalize();
  return x;
}

bool rat_is_square(const Rational& x, Rational* root) {
  if (sgn(x) < 0) return false;
  const Integer& num = x.get_num();
  const Integer& den = x.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
  if (root) {
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    *root = Rational(rn, rd);
  }
  return true;
}

int64_t rat_to_int64(const Rational& x) {
  if (x.get_den() != 1) throw ParseError("expected an integer, got " + x.get_str());
  if (!x.get_num().fits_slong_p()) throw ParseError("integer out of range: " + x.get_str());
  return x.get_num().get_si();
}

}  // namespace qfs
