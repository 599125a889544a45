#include "unfsum/rational.hpp"

#include <charconv>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace unfsum {

namespace {

__extension__ using Wide = __int128;

std::int64_t narrow(Wide v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational overflow");
  return static_cast<std::int64_t>(v);
}

Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  num_ = num / g;
  den_ = den / g;
}

Rational& Rational::operator+=(const Rational& rhs) {
  Wide n = Wide(num_) * rhs.den_ + Wide(rhs.num_) * den_;
  Wide d = Wide(den_) * rhs.den_;
  Wide g = wide_gcd(n, d);
  if (g == 0) g = 1;
  num_ = narrow(n / g);
  den_ = narrow(d / g);
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  Rational neg;
  neg.num_ = -rhs.num_;
  neg.den_ = rhs.den_;
  return *this += neg;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  return Wide(lhs.num_) * rhs.den_ <=> Wide(rhs.num_) * lhs.den_;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    if (s.empty()) throw std::invalid_argument("bad number '" + std::string(text) + "'");
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw std::invalid_argument("bad number '" + std::string(text) + "'");
    return v;
  };

  bool negative = !text.empty() && text.front() == '-';
  std::string_view body = negative ? text.substr(1) : text;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  if (body.empty() || body.front() == '-' || body.front() == '+')
    throw std::invalid_argument("bad number '" + std::string(text) + "'");

  Rational out;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    out = Rational(parse_int(body.substr(0, slash)), parse_int(body.substr(slash + 1)));
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = body.substr(dot + 1);
    if (frac.size() > 18) throw std::invalid_argument("too many decimals in '" + std::string(text) + "'");
    std::int64_t scale = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
    std::int64_t w = whole.empty() ? 0 : parse_int(whole);
    std::int64_t f = frac.empty() ? 0 : parse_int(frac);
    out = Rational(w) + Rational(f, scale);
  } else {
    out = Rational(parse_int(body));
  }
  if (negative) out = Rational(0) - out;
  return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace unfsum
