#include "strichartz/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <ostream>

#include "strichartz/error.hpp"

namespace strichartz {
namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    fail(ErrorKind::InvalidArgument, "malformed rational '" + std::string(text) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

ExponentRational::ExponentRational(std::int64_t value) : num_(value), den_(1) {}

ExponentRational::ExponentRational(std::int64_t num, std::int64_t den) {
  require(den != 0, ErrorKind::InvalidArgument, "zero denominator");
  *this = from_wide(num, den);
}

ExponentRational ExponentRational::infinity() {
  ExponentRational r;
  r.infinite_ = true;
  r.num_ = 1;
  r.den_ = 0;
  return r;
}

ExponentRational ExponentRational::from_wide(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr __int128 lo = std::numeric_limits<std::int64_t>::min();
  constexpr __int128 hi = std::numeric_limits<std::int64_t>::max();
  require(num >= lo && num <= hi && den <= hi, ErrorKind::Overflow,
          "rational result exceeds 64-bit range");
  ExponentRational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  if (r.num_ == 0) r.den_ = 1;
  return r;
}

ExponentRational ExponentRational::parse(std::string_view text) {
  text = trim(text);
  if (text == "inf" || text == "infinity" || text == "Inf" || text == "INF" ||
      text == "+inf" || text == "oo") {
    return infinity();
  }
  if (text.empty()) fail(ErrorKind::InvalidArgument, "empty rational");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = parse_int(trim(text.substr(0, slash)));
    const auto den = parse_int(trim(text.substr(slash + 1)));
    if (den == 0) fail(ErrorKind::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
    return ExponentRational(num, den);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 15) {
      fail(ErrorKind::InvalidArgument, "malformed decimal '" + std::string(text) + "'");
    }
    for (const char c : frac) {
      if (c < '0' || c > '9') fail(ErrorKind::InvalidArgument, "malformed decimal '" + std::string(text) + "'");
    }
    const bool negative = !whole.empty() && whole.front() == '-';
    const std::int64_t int_part =
        (whole.empty() || whole == "-" || whole == "+") ? 0 : parse_int(whole);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const std::int64_t frac_part = parse_int(frac);
    const __int128 magnitude =
        static_cast<__int128>(int_part < 0 ? -int_part : int_part) * scale + frac_part;
    return from_wide(negative ? -magnitude : magnitude, scale);
  }
  return ExponentRational(parse_int(text));
}

double ExponentRational::to_double() const noexcept {
  if (infinite_) return std::numeric_limits<double>::infinity();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string ExponentRational::to_string() const {
  if (infinite_) return "inf";
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

ExponentRational ExponentRational::reciprocal() const {
  if (infinite_) return ExponentRational(0);
  if (num_ == 0) return infinity();
  return from_wide(den_, num_);
}

ExponentRational ExponentRational::operator-() const {
  require(!infinite_, ErrorKind::InvalidArgument, "negation of infinity");
  return from_wide(-static_cast<__int128>(num_), den_);
}

ExponentRational operator+(const ExponentRational& a, const ExponentRational& b) {
  if (a.infinite_ || b.infinite_) return ExponentRational::infinity();
  return ExponentRational::from_wide(
      static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
      static_cast<__int128>(a.den_) * b.den_);
}

ExponentRational operator-(const ExponentRational& a, const ExponentRational& b) {
  require(!b.infinite_, ErrorKind::InvalidArgument, "subtraction of infinity");
  if (a.infinite_) return ExponentRational::infinity();
  return ExponentRational::from_wide(
      static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
      static_cast<__int128>(a.den_) * b.den_);
}

ExponentRational operator*(const ExponentRational& a, const ExponentRational& b) {
  if (a.infinite_ || b.infinite_) {
    require(!a.is_zero() && !b.is_zero(), ErrorKind::InvalidArgument, "0 * infinity");
    require((a.infinite_ || a.num_ > 0) && (b.infinite_ || b.num_ > 0),
            ErrorKind::InvalidArgument, "negative * infinity");
    return ExponentRational::infinity();
  }
  return ExponentRational::from_wide(static_cast<__int128>(a.num_) * b.num_,
                                     static_cast<__int128>(a.den_) * b.den_);
}

ExponentRational operator/(const ExponentRational& a, const ExponentRational& b) {
  require(!(a.infinite_ && b.infinite_), ErrorKind::InvalidArgument, "infinity / infinity");
  require(!b.is_zero(), ErrorKind::InvalidArgument, "division by zero");
  if (b.infinite_) return ExponentRational(0);
  if (a.infinite_) {
    require(b.num_ > 0, ErrorKind::InvalidArgument, "infinity / negative");
    return ExponentRational::infinity();
  }
  return ExponentRational::from_wide(static_cast<__int128>(a.num_) * b.den_,
                                     static_cast<__int128>(a.den_) * b.num_);
}

bool operator==(const ExponentRational& a, const ExponentRational& b) noexcept {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.num_ == b.num_ && a.den_ == b.den_;
}

std::strong_ordering operator<=>(const ExponentRational& a, const ExponentRational& b) noexcept {
  if (a.infinite_ || b.infinite_) {
    if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
    return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const ExponentRational& r) { return os << r.to_string(); }

ExponentRational min(const ExponentRational& a, const ExponentRational& b) { return b < a ? b : a; }
ExponentRational max(const ExponentRational& a, const ExponentRational& b) { return a < b ? b : a; }

ExponentRational dual_exponent(const ExponentRational& p) {
  require(p >= ExponentRational(1), ErrorKind::OutOfRange,
          "dual exponent requires p in [1, inf], got " + p.to_string());
  // 1/p' = 1 - 1/p
  return (ExponentRational(1) - p.reciprocal()).reciprocal();
}

}  // namespace strichartz
