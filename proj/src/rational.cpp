#include "dynlab/rational.hpp"

#include <cctype>

namespace dynlab {

namespace {

bool parse_integer(std::string_view text, BigInt& out) {
  if (text.empty()) return false;
  size_t pos = 0;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) return false;
  BigInt value = 0;
  for (; pos < text.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(text[pos]))) return false;
    value = value * 10 + (text[pos] - '0');
  }
  out = negative ? -value : value;
  return true;
}

}  // namespace

std::optional<Rat> parse_rational(std::string_view text) {
  const size_t slash = text.find('/');
  if (slash == std::string_view::npos) {
    BigInt value;
    if (!parse_integer(text, value)) return std::nullopt;
    return Rat(value);
  }
  BigInt num, den;
  if (!parse_integer(text.substr(0, slash), num)) return std::nullopt;
  if (!parse_integer(text.substr(slash + 1), den)) return std::nullopt;
  if (den <= 0) return std::nullopt;
  return Rat(num, den);
}

std::string rat_to_string(const Rat& value) {
  std::string out = numerator(value).str();
  if (denominator(value) != 1) {
    out += '/';
    out += denominator(value).str();
  }
  return out;
}

}  // namespace dynlab
