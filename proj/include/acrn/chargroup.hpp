#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "acrn/qmodz.hpp"
#include "acrn/quadring.hpp"

namespace acrn {

struct CyclicFactor {
  uint64_t generator;  // element label, as used by the caller's multiplication
  int64_t order;
};

using GroupMul = std::function<uint64_t(uint64_t, uint64_t)>;

// Cyclic decomposition of a finite abelian q-group given by its member labels.
// Greedy: repeatedly take a member of largest order modulo the span so far,
// then correct it so its e-th power is trivial. Factors come out in
// non-increasing order of size.
std::vector<CyclicFactor> decompose_q_group(const std::vector<uint64_t>& members, int64_t q, const GroupMul& mul,
                                            uint64_t identity);

// Basis of (O / pi^f)^x with a full discrete-log table. Units are indexed in
// the order of UnitEnumeration (increasing class key).
class UnitGroup {
 public:
  // Cached per (algebra, f); safe to call from several threads.
  static std::shared_ptr<const UnitGroup> get(const QuadraticLocalAlgebra& alg, int f);
  static std::shared_ptr<const UnitGroup> build(const QuadraticLocalAlgebra& alg, int f);

  const QuadraticLocalAlgebra& algebra() const { return alg_; }
  int level() const { return f_; }
  uint64_t order() const { return units_.size(); }
  const std::vector<RingElt>& generators() const { return gens_; }
  const std::vector<int64_t>& orders() const { return orders_; }
  // Generators [0, prime_to_p_count()) span the prime-to-p part.
  std::size_t prime_to_p_count() const { return n_prime_to_p_; }

  const UnitEnumeration& units() const { return units_; }
  RingElt unit(std::size_t i) const { return units_[i]; }
  std::optional<std::size_t> index_of_key(uint64_t key) const;
  std::size_t index_of(const RingElt& unit) const;
  std::size_t mul_index(std::size_t i, std::size_t j) const;
  std::size_t identity_index() const { return identity_; }

  std::span<const int32_t> exponents(std::size_t i) const {
    return {dlog_.data() + i * gens_.size(), gens_.size()};
  }
  // Exponent vector of a unit; throws InvariantBreach on lookup failure.
  std::vector<int64_t> dlog(const RingElt& unit) const;
  RingElt element(std::span<const int64_t> exps) const;

  // Largest k <= f with unit i congruent to 1 mod pi^k.
  int depth(std::size_t i) const { return depth_[i]; }
  // Exponent vectors generating (1 + pi^k O) / (1 + pi^f O), 1 <= k < f.
  const std::vector<std::vector<int64_t>>& filtration_generators(int k) const { return filt_.at(k); }

 private:
  UnitGroup(const QuadraticLocalAlgebra& alg, int f);

  QuadraticLocalAlgebra alg_;
  int f_;
  UnitEnumeration units_;
  std::vector<int32_t> key_to_index_;
  std::size_t identity_ = 0;
  std::vector<RingElt> gens_;
  std::vector<int64_t> orders_;
  std::size_t n_prime_to_p_ = 0;
  std::vector<int32_t> dlog_;
  std::vector<int8_t> depth_;
  std::vector<std::vector<std::vector<int64_t>>> filt_;
};

inline std::shared_ptr<const UnitGroup> unit_group_basis(const QuadraticLocalAlgebra& alg, int f) {
  return UnitGroup::get(alg, f);
}

// Character of K_v^x: values on the generators of (O / pi^f)^x plus a value
// at the uniformizer.
class UnitCharacter {
 public:
  UnitCharacter(std::shared_ptr<const UnitGroup> group, std::vector<QmodZ> values,
                QmodZ at_uniformizer = QmodZ::zero());
  static UnitCharacter trivial(const QuadraticLocalAlgebra& alg);

  const UnitGroup& group() const { return *group_; }
  const std::shared_ptr<const UnitGroup>& group_ptr() const { return group_; }
  const QuadraticLocalAlgebra& algebra() const { return group_->algebra(); }
  int level() const { return group_->level(); }
  int conductor() const { return conductor_; }
  const std::vector<QmodZ>& values() const { return values_; }
  QmodZ at_uniformizer() const { return at_pi_; }
  // Order of the restriction to units.
  int64_t unit_order() const;

  QmodZ on_index(std::size_t unit_index) const;
  QmodZ operator()(const RingElt& x) const;

  UnitCharacter with_uniformizer_value(QmodZ v) const;
  UnitCharacter with_value(std::size_t generator, QmodZ v) const;
  // Same character expressed on a finer level of the same algebra.
  UnitCharacter lift(std::shared_ptr<const UnitGroup> finer) const;
  UnitCharacter operator*(const UnitCharacter& o) const;
  UnitCharacter inverse() const;

  bool operator==(const UnitCharacter& o) const;

 private:
  std::shared_ptr<const UnitGroup> group_;
  std::vector<QmodZ> values_;
  QmodZ at_pi_;
  int conductor_ = 0;
};

inline QmodZ char_eval(const UnitCharacter& chi, const RingElt& x) { return chi(x); }

enum class Restriction { None, Kappa, Trivial };

Restriction parse_restriction(std::string_view s);

// The local quadratic character kappa_v restricted to the generator of Z_p^x.
QmodZ kappa_on_units(const QuadraticLocalAlgebra& alg);
// Values chi(pi) compatible with chi restricted to Q_p^x being kappa_v,
// smallest first.
std::vector<QmodZ> kappa_uniformizer_values(const QuadraticLocalAlgebra& alg);

// Every character of (O / pi^f)^x whose restriction to the image of Z_p^x
// matches `constraint`, in lexicographic order of the value exponents. The
// uniformizer value is the first of kappa_uniformizer_values for Kappa, else 0.
std::vector<UnitCharacter> all_characters(const QuadraticLocalAlgebra& alg, int f, Restriction constraint);

struct AdditiveCharSpec {
  int m = 0;
};

// m of the canonical psi* = exp(2 pi i {tr}): 1 when ramified, else 0.
int canonical_m(const QuadraticLocalAlgebra& alg);
inline AdditiveCharSpec canonical_psi(const QuadraticLocalAlgebra& alg) { return {canonical_m(alg)}; }
// psi_m(x) = psi*(pi^(m - m*) x)
QmodZ additive_eval(const QuadraticLocalAlgebra& alg, AdditiveCharSpec psi, const RingElt& x);

// Character of Q_p^x: value on the primitive root g of Z_p^x (taken modulo
// p^level) and the value at p.
class BaseCharacter {
 public:
  BaseCharacter(int64_t p, int level, QmodZ at_generator, QmodZ at_p);

  int64_t p() const { return p_; }
  int level() const { return level_; }
  int conductor() const { return conductor_; }
  int64_t generator() const { return g_; }
  QmodZ at_generator() const { return at_g_; }
  QmodZ at_p() const { return at_p_; }
  // Value on p^v * u for a nonzero integer.
  QmodZ operator()(int64_t x) const;

 private:
  int64_t p_;
  int level_;
  int64_t g_;
  QmodZ at_g_;
  QmodZ at_p_;
  int conductor_ = 0;
  std::vector<int64_t> dlog_;  // indexed by residue mod p^level
};

// kappa_v as a character of Q_p^x.
BaseCharacter kappa_base(const QuadraticLocalAlgebra& alg);

// chi = chi_1 + chi_2 on a split algebra, with chi_1(p) = chi(pi) and chi_2(p) = 0.
std::pair<BaseCharacter, BaseCharacter> split_components(const UnitCharacter& chi);

std::string to_json(const UnitCharacter& chi);

}  // namespace acrn
