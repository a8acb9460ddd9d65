#include "acrn/qmodz.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "acrn/arith.hpp"

namespace acrn {

QmodZ::QmodZ(int64_t num, int64_t den) {
  if (den <= 0) throw std::invalid_argument("QmodZ: denominator must be positive");
  num = mod(num, den);
  int64_t g = gcd64(num, den);
  if (g == 0) g = den;
  num_ = num / g;
  den_ = den / g;
}

QmodZ QmodZ::parse(std::string_view text) {
  if (text == "+1" || text == "1") return {0, 1};
  if (text == "-1") return {1, 2};
  if (text == "+i" || text == "i") return {1, 4};
  if (text == "-i") return {3, 4};
  auto slash = text.find('/');
  auto to_int = [&](std::string_view s) {
    int64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
      throw std::invalid_argument("QmodZ: cannot parse '" + std::string(text) + "'");
    return v;
  };
  if (slash == std::string_view::npos) return {to_int(text), 1};
  return {to_int(text.substr(0, slash)), to_int(text.substr(slash + 1))};
}

QmodZ QmodZ::operator+(const QmodZ& o) const {
  int64_t l = den_ / gcd64(den_, o.den_) * o.den_;
  return {num_ * (l / den_) + o.num_ * (l / o.den_), l};
}

QmodZ QmodZ::operator-(const QmodZ& o) const { return *this + (-o); }

QmodZ QmodZ::operator-() const { return {den_ - num_, den_}; }

QmodZ QmodZ::operator*(int64_t k) const {
  return {static_cast<int64_t>(static_cast<__int128>(num_) * mod(k, den_) % den_), den_};
}

std::string QmodZ::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

std::string QmodZ::root_str() const {
  if (den_ == 1) return "+1";
  if (den_ == 2) return "-1";
  if (den_ == 4) return num_ == 1 ? "+i" : "-i";
  return str();
}

std::complex<double> complexify(const QmodZ& q) {
  double t = 2.0 * std::numbers::pi * static_cast<double>(q.num()) / static_cast<double>(q.den());
  return {std::cos(t), std::sin(t)};
}

bool match_fourth_root(std::complex<double> z, double tol, QmodZ& out) {
  for (int k = 0; k < 4; ++k) {
    QmodZ c(k, 4);
    if (std::abs(complexify(c) - z) < tol) {
      out = c;
      return true;
    }
  }
  return false;
}

}  // namespace acrn
