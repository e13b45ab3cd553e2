#include "galois/rational.hpp"

#include <cctype>

#include "galois/errors.hpp"

namespace galois {

std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t parse_int(const std::string& text, const std::string& whole) {
  if (text.empty()) throw DomainError("malformed rational '" + whole + "'");
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) throw DomainError("malformed rational '" + whole + "'");
  for (std::size_t k = i; k < text.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(text[k]))) throw DomainError("malformed rational '" + whole + "'");
  return std::stoll(text);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (auto slash = text.find('/'); slash != std::string::npos) {
    const auto num = parse_int(text.substr(0, slash), text);
    const auto den = parse_int(text.substr(slash + 1), text);
    if (den == 0) throw DomainError("zero denominator in '" + text + "'");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string::npos) {
    const std::string whole = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    if (frac.size() > 12) throw DomainError("too many decimals in '" + text + "'");
    std::int64_t den = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
    const bool negative = !whole.empty() && whole[0] == '-';
    const std::int64_t w = (whole.empty() || whole == "-" || whole == "+") ? 0 : parse_int(whole, text);
    const std::int64_t f = frac.empty() ? 0 : parse_int(frac, text);
    if (!frac.empty() && (frac[0] == '-' || frac[0] == '+')) throw DomainError("malformed rational '" + text + "'");
    const std::int64_t mag = (w < 0 ? -w : w) * den + f;
    return Rational(negative ? -mag : mag, den);
  }
  return Rational(parse_int(text, text));
}

}  // namespace galois
