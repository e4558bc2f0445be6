#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "fucham/error.hpp"

namespace fucham {

namespace detail {

// Parses `digits[.digits]` into millionths. Returns nullopt on any syntax
// problem, more than six fractional digits, or a value above one.
constexpr std::optional<std::int64_t> parse_micros(std::string_view text) {
  std::size_t i = 0;
  std::int64_t whole = 0;
  std::size_t whole_digits = 0;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
    whole = whole * 10 + (text[i] - '0');
    if (whole > 1) return std::nullopt;
    ++i;
    ++whole_digits;
  }
  if (whole_digits == 0) return std::nullopt;
  std::int64_t frac = 0;
  std::size_t frac_digits = 0;
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      if (++frac_digits > 6) return std::nullopt;
      frac = frac * 10 + (text[i] - '0');
      ++i;
    }
    if (frac_digits == 0) return std::nullopt;
  }
  if (i != text.size()) return std::nullopt;
  for (std::size_t k = frac_digits; k < 6; ++k) frac *= 10;
  const std::int64_t micros = whole * 1'000'000 + frac;
  if (micros > 1'000'000) return std::nullopt;
  return micros;
}

}  // namespace detail

/// A membership degree in [0,1], held exactly as an integer number of
/// millionths. All arithmetic is exact; results leaving [0,1] throw.
class Degree {
 public:
  static constexpr std::int32_t kScale = 1'000'000;

  constexpr Degree() = default;

  static constexpr Degree zero() { return Degree(0); }
  static constexpr Degree one() { return Degree(kScale); }

  static Degree from_micros(std::int64_t micros) {
    if (micros < 0 || micros > kScale) {
      throw DomainError("degree out of range [0,1]: " + std::to_string(micros) + " millionths");
    }
    return Degree(static_cast<std::int32_t>(micros));
  }

  /// Decimal text with at most six fractional digits, e.g. `0.75`, `1`, `0.000001`.
  static Degree parse(std::string_view text) {
    if (auto micros = detail::parse_micros(text)) return Degree(static_cast<std::int32_t>(*micros));
    throw DomainError(describe_bad_literal(text));
  }

  static constexpr std::optional<Degree> try_parse(std::string_view text) {
    if (auto micros = detail::parse_micros(text)) return Degree(static_cast<std::int32_t>(*micros));
    return std::nullopt;
  }

  constexpr std::int32_t micros() const { return micros_; }
  double to_double() const { return static_cast<double>(micros_) / kScale; }

  /// Fixed six-digit rendering with trailing zeros trimmed, keeping at least
  /// one fractional digit: `0.75`, `1.0`, `0.000001`.
  std::string to_string() const {
    std::string frac = std::to_string(micros_ % kScale);
    frac.insert(0, 6 - frac.size(), '0');
    while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
    return std::to_string(micros_ / kScale) + "." + frac;
  }

  constexpr auto operator<=>(const Degree&) const = default;

 private:
  constexpr explicit Degree(std::int32_t micros) : micros_(micros) {}

  static std::string describe_bad_literal(std::string_view text) {
    const auto dot = text.find('.');
    if (dot != std::string_view::npos && text.size() - dot - 1 > 6 &&
        text.find_first_not_of("0123456789", dot + 1) == std::string_view::npos) {
      return "degree '" + std::string(text) + "' has more than 6 fractional digits";
    }
    return "invalid degree '" + std::string(text) + "' (expected a decimal in [0,1])";
  }

  std::int32_t micros_ = 0;
};

inline Degree operator+(Degree a, Degree b) {
  return Degree::from_micros(std::int64_t{a.micros()} + b.micros());
}

inline Degree operator-(Degree a, Degree b) {
  return Degree::from_micros(std::int64_t{a.micros()} - b.micros());
}

inline Degree abs_diff(Degree a, Degree b) { return a < b ? b - a : a - b; }

/// 1 - d.
inline Degree complement(Degree d) { return Degree::one() - d; }

/// a - b as signed millionths; may be negative.
constexpr std::int64_t signed_diff(Degree a, Degree b) {
  return std::int64_t{a.micros()} - b.micros();
}

inline std::ostream& operator<<(std::ostream& os, Degree d) { return os << d.to_string(); }

namespace literals {

consteval Degree operator""_deg(const char* text) {
  std::string_view view(text);
  auto d = Degree::try_parse(view);
  if (!d) throw "invalid degree literal";
  return *d;
}

}  // namespace literals

}  // namespace fucham
