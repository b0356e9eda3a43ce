#pragma once

#include <cstdint>
#include <string>

namespace arbor {

/// Exact non-negative fraction num/den in lowest terms. Used for the size
/// thresholds of the tree cutter so that a bound checker and the cutter agree
/// bit for bit.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  /// Nearest fraction with denominator dividing 10^6 (exact for decimal inputs
  /// like 0.3 or 0.45).
  static Rational from_double(double x);
  static Rational from_string(const std::string& text);

  double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Three-way comparison of a/b against c/d without overflow.
int compare(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) noexcept;

/// ceil(a / b) for a >= 0, b > 0.
std::int64_t ceil_div(std::int64_t a, std::int64_t b) noexcept;

}  // namespace arbor
