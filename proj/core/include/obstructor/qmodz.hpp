#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace obstructor {

// Element of Q/Z, always stored as num/den with 0 <= num < den and gcd 1.
class QmodZ {
 public:
  QmodZ() = default;
  QmodZ(std::int64_t num, std::int64_t den);

  static QmodZ half() { return QmodZ(1, 2); }
  static QmodZ parse(std::string_view text);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_ == 0; }

  QmodZ operator+(const QmodZ& other) const;
  QmodZ operator-(const QmodZ& other) const;
  QmodZ operator-() const;
  QmodZ& operator+=(const QmodZ& other);
  QmodZ scalar_mul(std::int64_t d) const;
  friend QmodZ operator*(std::int64_t d, const QmodZ& a) { return a.scalar_mul(d); }

  std::string to_string() const;

  friend bool operator==(const QmodZ&, const QmodZ&) = default;
  friend auto operator<=>(const QmodZ& a, const QmodZ& b) {
    // Compare as rationals in [0,1).
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace obstructor
