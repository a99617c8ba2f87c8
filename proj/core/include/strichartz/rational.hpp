#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace strichartz {

/// Exact rational number extended by the symbol +infinity.
///
/// Exponents in the index calculus have genuine limiting cases (a(inf) = 1,
/// theta = inf), so infinity is a first-class value rather than a large float.
/// Arithmetic is exact; intermediate products are computed in 128 bits and an
/// Overflow error is raised if a reduced result leaves the 64-bit range.
class ExponentRational {
 public:
  constexpr ExponentRational() = default;
  ExponentRational(std::int64_t value);  // NOLINT: integers convert implicitly
  ExponentRational(std::int64_t num, std::int64_t den);

  static ExponentRational infinity();

  /// Accepts "inf", "infinity", integers, "a/b" and finite decimals ("1.4").
  static ExponentRational parse(std::string_view text);

  bool is_infinite() const noexcept { return infinite_; }
  bool is_zero() const noexcept { return !infinite_ && num_ == 0; }
  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  double to_double() const noexcept;
  std::string to_string() const;

  /// 1/x with 1/0 = inf and 1/inf = 0. Negative values are not reciprocated
  /// through infinity.
  ExponentRational reciprocal() const;

  friend ExponentRational operator+(const ExponentRational& a, const ExponentRational& b);
  friend ExponentRational operator-(const ExponentRational& a, const ExponentRational& b);
  friend ExponentRational operator*(const ExponentRational& a, const ExponentRational& b);
  friend ExponentRational operator/(const ExponentRational& a, const ExponentRational& b);
  ExponentRational operator-() const;

  friend bool operator==(const ExponentRational& a, const ExponentRational& b) noexcept;
  friend std::strong_ordering operator<=>(const ExponentRational& a,
                                          const ExponentRational& b) noexcept;

 private:
  static ExponentRational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  bool infinite_ = false;
};

std::ostream& operator<<(std::ostream& os, const ExponentRational& r);

ExponentRational min(const ExponentRational& a, const ExponentRational& b);
ExponentRational max(const ExponentRational& a, const ExponentRational& b);

/// Hoelder conjugate p' with 1/p + 1/p' = 1, defined on [1, inf].
ExponentRational dual_exponent(const ExponentRational& p);

}  // namespace strichartz
