#include "obstructor/qmodz.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace obstructor {

QmodZ::QmodZ(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw std::invalid_argument("QmodZ denominator must be positive");
  num %= den;
  if (num < 0) num += den;
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
  if (num_ == 0) den_ = 1;
}

QmodZ QmodZ::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw std::invalid_argument("malformed Q/Z value: " + std::string(text));
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return QmodZ(parse_int(text), 1);
  return QmodZ(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

QmodZ QmodZ::operator+(const QmodZ& other) const {
  const std::int64_t l = std::lcm(den_, other.den_);
  return QmodZ(num_ * (l / den_) + other.num_ * (l / other.den_), l);
}

QmodZ QmodZ::operator-() const { return QmodZ(-num_, den_); }

QmodZ QmodZ::operator-(const QmodZ& other) const { return *this + (-other); }

QmodZ& QmodZ::operator+=(const QmodZ& other) { return *this = *this + other; }

QmodZ QmodZ::scalar_mul(std::int64_t d) const {
  const std::int64_t r = d % den_;
  return QmodZ(static_cast<std::int64_t>((static_cast<__int128>(r) * num_) % den_), den_);
}

std::string QmodZ::to_string() const {
  if (num_ == 0) return "0";
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace obstructor
