#include "carnot/rational.hpp"

#include <cctype>

#include "carnot/errors.hpp"

namespace carnot {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return ParseError("not a rational number: '" + s + "'", s); };
  if (s.empty()) throw bad();

  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const std::size_t scale = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+" ||
        s.find('/') != std::string::npos)
      throw bad();
    if (digits[0] == '+') digits.erase(0, 1);
    Rational q;
    if (q.get_num().set_str(digits, 10) != 0) throw bad();
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, scale);
    q.get_den() = den;
    q.canonicalize();
    return q;
  }

  if (s[0] == '+') s.erase(0, 1);
  for (char c : s)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/'))
      throw bad();
  Rational q;
  if (q.set_str(s, 10) != 0) throw bad();
  if (q.get_den() == 0) throw ParseError("zero denominator", s);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

}  // namespace carnot
