#include "arbor/rational.hpp"

#include <cmath>
#include <numeric>

#include "arbor/errors.hpp"

namespace arbor {

Rational Rational::from_double(double x) {
  if (!std::isfinite(x) || x < 0.0 || x > 1e12) {
    throw InvalidInput("cannot represent " + std::to_string(x) + " as a rational");
  }
  constexpr std::int64_t kScale = 1'000'000;
  const auto num = static_cast<std::int64_t>(std::llround(x * static_cast<double>(kScale)));
  const std::int64_t g = std::gcd(num, kScale);
  return {num / g, kScale / g};
}

Rational Rational::from_string(const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InvalidInput("not a number: '" + text + "'");
  }
  if (used != text.size()) throw InvalidInput("not a number: '" + text + "'");
  return from_double(value);
}

int compare(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) noexcept {
  const __int128 lhs = static_cast<__int128>(a) * d;
  const __int128 rhs = static_cast<__int128>(c) * b;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) noexcept { return (a + b - 1) / b; }

}  // namespace arbor
