#include "dsr/rational.hpp"

#include <cctype>

namespace dsr {

std::string to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += "/" + denominator(r).str();
  }
  return s;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool neg = false;
  if (text[0] == '+' || text[0] == '-') {
    neg = text[0] == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;

  auto slash = text.find('/');
  auto dot = text.find('.');
  Rational value;
  if (slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    BigInt d{std::string(den)};
    if (d == 0) return std::nullopt;
    value = Rational(BigInt{std::string(num)}, d);
  } else if (dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (whole.empty() && frac.empty()) return std::nullopt;
    if (!whole.empty() && !all_digits(whole)) return std::nullopt;
    if (!frac.empty() && !all_digits(frac)) return std::nullopt;
    BigInt w = whole.empty() ? BigInt{0} : BigInt{std::string(whole)};
    BigInt scale = 1;
    BigInt f = 0;
    if (!frac.empty()) {
      f = BigInt{std::string(frac)};
      for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    }
    value = Rational(w * scale + f, scale);
  } else {
    if (!all_digits(text)) return std::nullopt;
    value = Rational(BigInt{std::string(text)});
  }
  if (neg) value = -value;
  return value;
}

}  // namespace dsr
