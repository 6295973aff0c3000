#include "flimit/dyadic.hpp"

namespace flimit {

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Dyadic::str() const {
  if (exp_ == 0) return num_.get_str();
  return num_.get_str() + "/2^" + std::to_string(exp_);
}

std::optional<Dyadic> to_dyadic(const Rational& q) {
  const Int den = q.den();
  if (den == 1) return Dyadic(q.num(), 0);
  unsigned long tz = mpz_scan1(den.get_mpz_t(), 0);
  // den == 2^tz exactly iff den has a single set bit
  if (mpz_popcount(den.get_mpz_t()) != 1) return std::nullopt;
  return Dyadic(q.num(), tz);
}

namespace {

Int parse_int(const std::string& s, const std::string& ctx) {
  if (s.empty()) fail(Errc::SyntaxError, "empty integer in " + ctx);
  Int v;
  if (mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
    fail(Errc::SyntaxError, "bad integer '" + s + "' in " + ctx);
  return v;
}

}  // namespace

Dyadic parse_dyadic(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Dyadic(parse_int(text, "dyadic"), 0);
  Int num = parse_int(text.substr(0, slash), "dyadic");
  std::string den = text.substr(slash + 1);
  if (den.rfind("2^", 0) == 0) {
    Int e = parse_int(den.substr(2), "dyadic exponent");
    if (e < 0 || !e.fits_ulong_p()) fail(Errc::SyntaxError, "bad exponent in '" + text + "'");
    return Dyadic(num, e.get_ui());
  }
  Int d = parse_int(den, "dyadic denominator");
  if (d <= 0 || mpz_popcount(d.get_mpz_t()) != 1)
    fail(Errc::SyntaxError, "denominator of '" + text + "' is not a power of two");
  return Dyadic(num, mpz_scan1(d.get_mpz_t(), 0));
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text, "rational"));
  if (text.find("2^", slash) != std::string::npos) return parse_dyadic(text).to_rational();
  Int num = parse_int(text.substr(0, slash), "rational");
  Int den = parse_int(text.substr(slash + 1), "rational");
  if (den <= 0) fail(Errc::SyntaxError, "denominator must be positive in '" + text + "'");
  return Rational(num, den);
}

}  // namespace flimit
