#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace boxoffice {

/// US dollars held as an exact count of cents.
class Money {
 public:
  constexpr Money() = default;

  static constexpr Money from_cents(std::int64_t cents) { return Money(cents); }

  /// Rounds to the nearest cent, halves away from zero.
  static Money from_dollars(long double dollars) {
    const long double cents = std::round(dollars * 100.0L);
    if (!std::isfinite(cents) || std::fabs(cents) > 9.0e18L) {
      throw std::overflow_error("money amount out of range");
    }
    return Money(static_cast<std::int64_t>(cents));
  }

  constexpr std::int64_t cents() const { return cents_; }
  constexpr double dollars() const { return static_cast<double>(cents_) / 100.0; }

  constexpr auto operator<=>(const Money&) const = default;

  constexpr Money operator+(Money other) const { return Money(cents_ + other.cents_); }
  constexpr Money operator-(Money other) const { return Money(cents_ - other.cents_); }

 private:
  constexpr explicit Money(std::int64_t cents) : cents_(cents) {}
  std::int64_t cents_ = 0;
};

namespace money_literals {
constexpr Money operator""_musd(unsigned long long millions) {
  return Money::from_cents(static_cast<std::int64_t>(millions) * 100'000'000);
}
}  // namespace money_literals

}  // namespace boxoffice
