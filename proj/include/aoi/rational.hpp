#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "aoi/decimal.hpp"

namespace aoi {

/// Non-negative fraction in lowest terms.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    auto g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  /// value × 100 rounded half-up to hundredths, returned as an integer count of
  /// hundredths (1/6 -> 1667, i.e. 16.67%).
  std::int64_t percent_hundredths() const {
    __int128 scaled = static_cast<__int128>(num_) * 10000;
    return static_cast<std::int64_t>((2 * scaled + den_) / (2 * static_cast<__int128>(den_)));
  }

  Decimal percent() const { return Decimal(percent_hundredths(), 2); }

  /// True when value × 100 >= `pct`, compared exactly.
  bool percent_at_least(const Decimal &pct) const {
    __int128 lhs = static_cast<__int128>(num_) * 100;
    for (int i = 0; i < pct.scale(); ++i) lhs *= 10;
    return lhs >= static_cast<__int128>(pct.unscaled()) * den_;
  }

  friend Rational operator+(const Rational &a, const Rational &b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend bool operator==(const Rational &a, const Rational &b) { return a.num_ == b.num_ && a.den_ == b.den_; }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace aoi
