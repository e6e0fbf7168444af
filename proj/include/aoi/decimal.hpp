#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace aoi {

/// Exact decimal number stored as a scaled integer. `3.50` keeps its two
/// fractional digits for formatting but compares equal to `3.5`.
class Decimal {
 public:
  static constexpr int kMaxScale = 9;

  constexpr Decimal() = default;
  constexpr Decimal(std::int64_t unscaled, int scale) : unscaled_(unscaled), scale_(scale) {}

  static Decimal from_int(std::int64_t v) { return Decimal(v, 0); }

  /// Parses `[+-]digits[.digits]` (or `.digits`). Returns nullopt for anything else, including
  /// more than kMaxScale fractional digits or overflow.
  static std::optional<Decimal> parse(std::string_view text);

  std::int64_t unscaled() const { return unscaled_; }
  int scale() const { return scale_; }

  std::string to_string() const;
  double to_double() const;

  friend bool operator==(const Decimal &a, const Decimal &b) { return compare(a, b) == 0; }
  friend std::strong_ordering operator<=>(const Decimal &a, const Decimal &b) { return compare(a, b) <=> 0; }

 private:
  static int compare(const Decimal &a, const Decimal &b);

  std::int64_t unscaled_ = 0;
  int scale_ = 0;
};

}  // namespace aoi
