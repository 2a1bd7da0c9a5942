#include "nshardy/rational.hpp"

#include <string>

#include "nshardy/error.hpp"

namespace nshardy {

namespace {

mpz_class parse_integer(std::string_view text, std::string_view whole) {
  std::string s(text);
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (start == s.size()) {
    throw ValidationError("malformed rational: '" + std::string(whole) + "'");
  }
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') {
      throw ValidationError("malformed rational: '" + std::string(whole) + "'");
    }
  }
  if (s[0] == '+') s.erase(0, 1);
  return mpz_class(s, 10);
}

}  // namespace

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text, text), mpz_class(1));
  }
  mpz_class num = parse_integer(text.substr(0, slash), text);
  mpz_class den = parse_integer(text.substr(slash + 1), text);
  return Rational(num, den);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  q_ /= o.q_;
  return *this;
}

std::string Rational::to_string() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::to_decimal(int digits) const {
  // Round half away from zero at the requested digit, entirely in integers.
  mpz_class scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  mpz_class num = abs(q_.get_num()) * scale * 2 + q_.get_den();
  mpz_class den = q_.get_den() * 2;
  mpz_class scaled = num / den;
  mpz_class int_part = scaled / scale;
  mpz_class frac_part = scaled % scale;
  std::string frac = frac_part.get_str();
  frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
  std::string out = (sign() < 0 && scaled != 0) ? "-" : "";
  out += int_part.get_str();
  if (digits > 0) out += "." + frac;
  return out;
}

}  // namespace nshardy
