#include "lca/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace lca {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trimmed_begin = s.find_first_not_of(" \t\n\r");
  auto trimmed_end = s.find_last_not_of(" \t\n\r");
  if (trimmed_begin == std::string::npos) throw std::invalid_argument("empty rational");
  s = s.substr(trimmed_begin, trimmed_end - trimmed_begin + 1);

  auto digits_only = [](std::string_view part) {
    if (part.empty()) return false;
    for (char c : part)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  std::string_view body = s;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!digits_only(num) || !digits_only(den))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  mpz_class n(std::string(num), 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(negative ? mpz_class(-n) : n, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace lca
