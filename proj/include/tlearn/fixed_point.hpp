#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace tlearn {

// Exact rational with denominator 128. Synaptic counters and every learning
// increment are held in this form, so column arithmetic never touches
// floating point and replays are bit-exact.
class Fixed {
 public:
  static constexpr std::int64_t kScale = 128;

  constexpr Fixed() = default;

  static constexpr Fixed from_raw(std::int64_t raw) {
    Fixed f;
    f.raw_ = raw;
    return f;
  }
  static constexpr Fixed from_int(std::int64_t value) { return from_raw(value * kScale); }

  // Accepts "5", "-3", "3/2", "1/128", "0.0625". Throws std::invalid_argument
  // when the value is not a multiple of 1/128.
  static Fixed parse(std::string_view text);

  constexpr std::int64_t raw() const { return raw_; }

  // Smallest integer >= value.
  constexpr std::int64_t ceil() const {
    std::int64_t q = raw_ / kScale;
    if (raw_ % kScale != 0 && raw_ > 0) ++q;
    return q;
  }

  double to_double() const { return static_cast<double>(raw_) / kScale; }

  // Reduced fraction ("3/2", "5", "-1/16").
  std::string to_string() const;

  constexpr Fixed operator+(Fixed o) const { return from_raw(raw_ + o.raw_); }
  constexpr Fixed operator-(Fixed o) const { return from_raw(raw_ - o.raw_); }
  constexpr Fixed operator-() const { return from_raw(-raw_); }
  constexpr Fixed operator*(std::int64_t k) const { return from_raw(raw_ * k); }
  constexpr Fixed& operator+=(Fixed o) {
    raw_ += o.raw_;
    return *this;
  }

  constexpr auto operator<=>(const Fixed&) const = default;

 private:
  std::int64_t raw_ = 0;
};

// Clamp into [0, w_max].
constexpr Fixed saturate(Fixed value, int w_max) {
  if (value.raw() < 0) return Fixed{};
  if (value > Fixed::from_int(w_max)) return Fixed::from_int(w_max);
  return value;
}

}  // namespace tlearn
