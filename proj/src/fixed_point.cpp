#include "tlearn/fixed_point.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace tlearn {
namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
  }
  return value;
}

Fixed from_fraction(std::int64_t num, std::int64_t den, std::string_view whole) {
  if (den <= 0) throw std::invalid_argument("bad denominator in '" + std::string(whole) + "'");
  if ((num * Fixed::kScale) % den != 0) {
    throw std::invalid_argument("'" + std::string(whole) + "' is not a multiple of 1/128");
  }
  return Fixed::from_raw(num * Fixed::kScale / den);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Fixed Fixed::parse(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return from_fraction(parse_int(trim(text.substr(0, slash)), whole),
                         parse_int(trim(text.substr(slash + 1)), whole), whole);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (negative) int_part.remove_prefix(1);
    if (frac_part.size() > 12) throw std::invalid_argument("too many decimals: '" + std::string(whole) + "'");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
    std::int64_t num = (int_part.empty() ? 0 : parse_int(int_part, whole)) * den +
                       (frac_part.empty() ? 0 : parse_int(frac_part, whole));
    return from_fraction(negative ? -num : num, den, whole);
  }
  return from_int(parse_int(text, whole));
}

std::string Fixed::to_string() const {
  const std::int64_t g = std::gcd(raw_ < 0 ? -raw_ : raw_, kScale);
  const std::int64_t num = raw_ / (g == 0 ? 1 : g);
  const std::int64_t den = kScale / (g == 0 ? kScale : g);
  if (raw_ == 0) return "0";
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

}  // namespace tlearn
