#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace unfsum {

/// Exact nonnegative rational number with 64-bit numerator and denominator.
///
/// Values are always kept in lowest terms with a positive denominator, so
/// structural equality is value equality. Arithmetic that would overflow
/// the 64-bit representation throws std::overflow_error.
class Rational {
public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  [[nodiscard]] std::int64_t num() const { return num_; }
  [[nodiscard]] std::int64_t den() const { return den_; }
  [[nodiscard]] bool is_zero() const { return num_ == 0; }
  [[nodiscard]] bool is_negative() const { return num_ < 0; }

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

  /// "3", "5/2", "0.125". Integers print without a denominator.
  [[nodiscard]] std::string to_string() const;

  /// Parses "7", "7/3", "2.25" exactly. Throws std::invalid_argument.
  static Rational parse(std::string_view text);

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace unfsum
