#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

namespace acrn {

// Exact element of Q/Z, stored reduced with 0 <= num < den.
class QmodZ {
 public:
  QmodZ() = default;
  QmodZ(int64_t num, int64_t den);

  static QmodZ zero() { return {}; }
  static QmodZ half() { return {1, 2}; }
  // Accepts "a/b", an integer, or one of "+1", "-1", "+i", "-i".
  static QmodZ parse(std::string_view text);

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  // Order of the element in Q/Z.
  int64_t order() const { return den_; }

  QmodZ operator+(const QmodZ& o) const;
  QmodZ operator-(const QmodZ& o) const;
  QmodZ operator-() const;
  QmodZ operator*(int64_t k) const;
  QmodZ& operator+=(const QmodZ& o) { return *this = *this + o; }
  QmodZ& operator-=(const QmodZ& o) { return *this = *this - o; }

  bool operator==(const QmodZ&) const = default;
  auto operator<=>(const QmodZ& o) const {
    return static_cast<__int128>(num_) * o.den_ <=> static_cast<__int128>(o.num_) * den_;
  }

  std::string str() const;
  // "+1", "-1", "+i", "-i" for fourth roots of unity, otherwise "num/den".
  std::string root_str() const;

 private:
  int64_t num_ = 0;
  int64_t den_ = 1;
};

// exp(2 pi i q)
std::complex<double> complexify(const QmodZ& q);

// Nearest fourth root of unity when z lies within tol of one.
bool match_fourth_root(std::complex<double> z, double tol, QmodZ& out);

}  // namespace acrn
