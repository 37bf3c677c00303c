#include "isokit/rational.hpp"

#include <cctype>

#include "isokit/error.hpp"

namespace isokit {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Optional sign followed by digits.
bool is_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return all_digits(s);
}

mpz_class to_mpz(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto fail = [&] { return ParseError("not an exact rational: \"" + std::string(text) + "\""); };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!is_integer(num) || !all_digits(den)) throw fail();
    mpz_class d = to_mpz(den);
    if (d == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
    Rational q(to_mpz(num), d);
    q.canonicalize();
    return q;
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    bool negative = false;
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) {
      negative = whole.front() == '-';
      whole.remove_prefix(1);
    }
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw fail();
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class n = (whole.empty() ? mpz_class(0) : to_mpz(whole)) * scale +
                  (frac.empty() ? mpz_class(0) : to_mpz(frac));
    Rational q(negative ? mpz_class(-n) : n, scale);
    q.canonicalize();
    return q;
  }
  if (!is_integer(text)) throw fail();
  return Rational(to_mpz(text));
}

std::string to_string(const Rational& value) {
  Rational q = value;
  q.canonicalize();
  return q.get_str();
}

}  // namespace isokit
