#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "acrn/qmodz.hpp"

namespace acrn {

enum class Kind { Split, Inert, Ramified };

std::string_view kind_name(Kind k);
Kind parse_kind(std::string_view s);

// x = pi^shift * (a + b*omega), or pi^shift * (a, b) for split algebras.
// (a, b) is a unit when prec > 0; prec counts the pi-adic digits of that unit
// that are known. prec == 0 means "x lies in pi^shift O" and nothing more.
struct RingElt {
  int64_t a = 0;
  int64_t b = 0;
  int shift = 0;
  int prec = 0;

  bool operator==(const RingElt&) const = default;
};

class QuadraticLocalAlgebra {
 public:
  QuadraticLocalAlgebra(int64_t p, Kind kind, int64_t D, int precision);

  int64_t p() const { return p_; }
  Kind kind() const { return kind_; }
  int64_t D() const { return D_; }
  int precision() const { return N_; }
  // Coordinates are residues modulo p^coord_digits().
  int coord_digits() const { return P_; }
  int64_t coord_modulus() const { return pP_; }
  // Ramified: D = p * D_unit. Split: a square root of -D modulo p^coord_digits().
  int64_t D_unit() const { return Du_; }
  int64_t sqrt_minus_D() const { return s_; }

  // Constructors treat integer inputs as exact, so they carry full relative precision.
  RingElt zero() const;
  RingElt one() const { return from_int(1); }
  RingElt from_int(int64_t n) const { return kind_ == Kind::Split ? make(n, n) : make(n, 0); }
  // Coordinates in the algebra's own representation (pair for split).
  RingElt make(int64_t a, int64_t b, int shift = 0) const;
  // a + b*sqrt(-D) in every kind.
  RingElt from_quadratic(int64_t a, int64_t b) const;
  RingElt omega() const { return from_quadratic(0, 1); }
  RingElt uniformizer() const { return pi_power(1); }
  RingElt pi_power(int v) const;

  RingElt mul(const RingElt& x, const RingElt& y) const;
  RingElt add(const RingElt& x, const RingElt& y) const;
  RingElt neg(const RingElt& x) const;
  RingElt sub(const RingElt& x, const RingElt& y) const { return add(x, neg(y)); }
  RingElt inv(const RingElt& x) const;
  RingElt pow(const RingElt& x, int64_t e) const;
  RingElt conj(const RingElt& x) const;
  RingElt trace(const RingElt& x) const { return add(x, conj(x)); }
  RingElt norm(const RingElt& x) const { return mul(x, conj(x)); }

  // pi-adic valuation; throws PrecisionExhausted when x is indistinguishable
  // from 0 and std::invalid_argument for split elements that are not a unit
  // times a power of pi.
  int valuation(const RingElt& x) const;
  bool is_zero(const RingElt& x) const { return x.prec == 0; }
  bool is_unit(const RingElt& x) const;
  // Equality as elements of O / pi^f (both inputs integral).
  bool congruent(const RingElt& x, const RingElt& y, int f) const;
  // True when x lies in the base copy of Q_p.
  bool in_base(const RingElt& x) const;

  // Coordinates of x in the algebra representation, reduced mod p^coord_digits;
  // x must be integral.
  std::pair<int64_t, int64_t> coordinates(const RingElt& x) const;
  // Split only: component i of x as (p-adic valuation, unit residue).
  std::pair<int, int64_t> split_component(const RingElt& x, int i) const;

  // {tr(x)} in Q/Z.
  QmodZ fractional_trace(const RingElt& x) const;

  // Residue classes of O / pi^f are indexed by keys in [0, class_count(f)).
  uint64_t class_count(int f) const;
  uint64_t class_key(const RingElt& x, int f) const;
  RingElt from_key(uint64_t key, int f) const;
  bool key_is_unit(uint64_t key, int f) const;
  // Order of (O / pi^f)^x from the closed formula.
  uint64_t unit_group_order(int f) const;

  bool operator==(const QuadraticLocalAlgebra& o) const {
    return p_ == o.p_ && kind_ == o.kind_ && D_ == o.D_ && N_ == o.N_;
  }

 private:
  RingElt normalize(int64_t a, int64_t b, int shift, int prec) const;
  // Multiply raw coordinates by pi^d (d >= 0) modulo p^P.
  std::pair<int64_t, int64_t> times_pi(int64_t a, int64_t b, int d) const;
  int raw_valuation(int64_t a, int64_t b) const;

  int64_t p_;
  Kind kind_;
  int64_t D_;
  int N_;
  int P_ = 0;
  int64_t pP_ = 1;
  int64_t Du_ = 0;
  int64_t s_ = 0;
};

inline QuadraticLocalAlgebra make_algebra(int64_t p, Kind kind, int64_t D, int precision) {
  return QuadraticLocalAlgebra(p, kind, D, precision);
}

// Representatives of (O / pi^f)^x in increasing key order. Random access lets
// callers split the enumeration by index range.
class UnitEnumeration {
 public:
  UnitEnumeration(const QuadraticLocalAlgebra& alg, int f);

  std::size_t size() const { return keys_.size(); }
  uint64_t key(std::size_t i) const { return keys_[i]; }
  RingElt operator[](std::size_t i) const { return alg_.from_key(keys_[i], f_); }
  const std::vector<uint64_t>& keys() const { return keys_; }

  class iterator {
   public:
    using value_type = RingElt;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    iterator(const UnitEnumeration* e, std::size_t i) : e_(e), i_(i) {}
    RingElt operator*() const { return (*e_)[i_]; }
    iterator& operator++() {
      ++i_;
      return *this;
    }
    iterator operator++(int) {
      auto t = *this;
      ++i_;
      return t;
    }
    bool operator==(const iterator& o) const { return i_ == o.i_; }

   private:
    const UnitEnumeration* e_ = nullptr;
    std::size_t i_ = 0;
  };
  iterator begin() const { return {this, 0}; }
  iterator end() const { return {this, keys_.size()}; }

 private:
  QuadraticLocalAlgebra alg_;
  int f_;
  std::vector<uint64_t> keys_;
};

inline UnitEnumeration enumerate_units(const QuadraticLocalAlgebra& alg, int f) {
  return UnitEnumeration(alg, f);
}

// Debug dump: residues as decimal strings.
std::string dump_json(const QuadraticLocalAlgebra& alg, const RingElt& x);

}  // namespace acrn
