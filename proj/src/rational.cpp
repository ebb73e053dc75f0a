#include "gpt/rational.hpp"

#include <sstream>

namespace gpt {

double log2_big(const BigInt& z) {
  if (z <= 0) throw std::domain_error("log2_big: argument must be positive");
  const unsigned bits = boost::multiprecision::msb(z);
  if (bits <= 900) return std::log2(z.convert_to<double>());
  const unsigned shift = bits - 52;
  const BigInt top = z >> shift;
  return std::log2(top.convert_to<double>()) + static_cast<double>(shift);
}

double log2_rat(const Rat& r) {
  if (r <= 0) throw std::domain_error("log2_rat: argument must be positive");
  return log2_big(numerator(r)) - log2_big(denominator(r));
}

std::string rat_string(const Rat& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

Rat parse_rat(const std::string& text) {
  if (text.empty()) throw ValidationError("empty rational literal");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (num.empty() || den.empty()) throw ValidationError("malformed rational '" + text + "'");
    return Rat{BigInt(num), BigInt(den)};
  }
  const auto dot = text.find('.');
  if (dot != std::string::npos) {
    const std::string head = text.substr(0, dot);
    const std::string tail = text.substr(dot + 1);
    if (tail.empty()) throw ValidationError("malformed decimal '" + text + "'");
    const bool negative = !head.empty() && head[0] == '-';
    std::string digits = (negative ? head.substr(1) : head) + tail;
    const auto first = digits.find_first_not_of('0');
    digits = (first == std::string::npos) ? "0" : digits.substr(first);
    BigInt den = 1;
    for (size_t i = 0; i < tail.size(); ++i) den *= 10;
    const Rat r{BigInt(digits), den};
    return negative ? Rat(-r) : r;
  }
  return Rat(BigInt(text));
}

}  // namespace gpt
