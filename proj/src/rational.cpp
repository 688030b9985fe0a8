#include "sklab/rational.hpp"

#include "sklab/error.hpp"

#include <cctype>

namespace sklab {

namespace {

bool is_integer_literal(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

mpz_class parse_integer(const std::string& s) {
  return mpz_class(s[0] == '+' ? s.substr(1) : s, 10);
}

} // namespace

Rational parse_rational(const std::string& text) {
  const auto bad = [&] { return InvalidArgument("malformed rational '" + text + "'"); };
  const std::size_t slash = text.find('/');
  if (slash != std::string::npos) {
    const std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den)) throw bad();
    const mpz_class q = parse_integer(den);
    if (q == 0) throw InvalidArgument("zero denominator in '" + text + "'");
    Rational out(parse_integer(num), q);
    out.canonicalize();
    return out;
  }
  const std::size_t dot = text.find('.');
  if (dot != std::string::npos) {
    std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (frac.empty() || !is_integer_literal(whole) || !is_integer_literal(frac) || frac[0] == '-' || frac[0] == '+')
      throw bad();
    const bool negative = whole[0] == '-';
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class w = parse_integer(whole);
    if (negative) w = -w;
    Rational out(w * scale + mpz_class(frac, 10), scale);
    out.canonicalize();
    return negative ? Rational(-out) : out;
  }
  if (!is_integer_literal(text)) throw bad();
  return Rational(parse_integer(text));
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

} // namespace sklab
