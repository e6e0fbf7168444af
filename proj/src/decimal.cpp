#include "aoi/decimal.hpp"

#include <limits>

namespace aoi {

namespace {

__int128 pow10(int n) {
  __int128 r = 1;
  for (int i = 0; i < n; ++i) r *= 10;
  return r;
}

}  // namespace

std::optional<Decimal> Decimal::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t i = 0;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    ++i;
  }
  __int128 value = 0;
  int scale = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (seen_point) return std::nullopt;
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9') return std::nullopt;
    seen_digit = true;
    value = value * 10 + (c - '0');
    if (seen_point) ++scale;
    if (scale > kMaxScale || value > std::numeric_limits<std::int64_t>::max()) return std::nullopt;
  }
  if (!seen_digit) return std::nullopt;
  if (seen_point && text.back() == '.') return std::nullopt;
  return Decimal(static_cast<std::int64_t>(negative ? -value : value), scale);
}

std::string Decimal::to_string() const {
  bool negative = unscaled_ < 0;
  // Negate in 128 bits so INT64_MIN survives.
  __int128 mag = unscaled_;
  if (negative) mag = -mag;
  std::string digits;
  do {
    digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  } while (mag > 0);
  if (scale_ > 0) {
    while (static_cast<int>(digits.size()) <= scale_) digits.insert(digits.begin(), '0');
    digits.insert(digits.end() - scale_, '.');
  }
  return negative ? "-" + digits : digits;
}

double Decimal::to_double() const { return static_cast<double>(unscaled_) / static_cast<double>(pow10(scale_)); }

int Decimal::compare(const Decimal &a, const Decimal &b) {
  int scale = a.scale_ > b.scale_ ? a.scale_ : b.scale_;
  __int128 x = static_cast<__int128>(a.unscaled_) * pow10(scale - a.scale_);
  __int128 y = static_cast<__int128>(b.unscaled_) * pow10(scale - b.scale_);
  return x < y ? -1 : (x > y ? 1 : 0);
}

}  // namespace aoi
