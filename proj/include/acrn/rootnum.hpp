#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include "acrn/arith.hpp"
#include "acrn/chargroup.hpp"
#include "acrn/localcft.hpp"
#include "acrn/qmodz.hpp"

namespace acrn {

inline constexpr double kUnitTolerance = 1e-9;

struct RootNumberValue {
  std::optional<QmodZ> exact;  // set when the value is a fourth root of unity
  std::complex<double> approx;
};

// Normalised Gauss sum. Unramified characters return chi(pi)^m exactly.
// Throws PrecisionExhausted when f + m + 1 exceeds the precision and
// InvariantBreach when the result is off the unit circle.
RootNumberValue root_number_oracle(const UnitCharacter& chi, AdditiveCharSpec psi);
// Same for a character of Q_p^x against psi_m(x) = exp(2 pi i {p^m x}).
RootNumberValue root_number_oracle_base(const BaseCharacter& chi, int m);
// W(chi, psi*_K) / W(kappa, psi*_F)
RootNumberValue relative_root_oracle(const UnitCharacter& chi);
RootNumberValue ratio(const RootNumberValue& a, const RootNumberValue& b);

// chi_2(-1); rejects chi_1 chi_2 != 1.
RootNumberValue relative_root_split(const BaseCharacter& chi1, const BaseCharacter& chi2);
RootNumberValue relative_root_split(const UnitCharacter& chi);

// l in [1, p-1] with chi(1 + pi^(f-1)) = l/p; needs f > 1.
int64_t l_class(const UnitCharacter& chi);

// Ramified relative root number in Q/Z from (p, f, l, chi(pi)); l ignored when f = 1.
QmodZ ramified_closed_form(int64_t p, int f, int64_t l, QmodZ chi_pi);

struct RamifiedClosed {
  QmodZ value;
  int f = 0;
  std::optional<int64_t> l;
};
RamifiedClosed relative_root_ramified_closed(const UnitCharacter& chi);

// (-1)^f * chi(sqrt(-D))^(-1) as a sign; chi(sqrt(-D)) must be 0 or 1/2.
int inert_sign_formula(int f, QmodZ chi_at_sqrt_minus_D);
int relative_root_inert_sign(const UnitCharacter& chi);

// Symbolic global data of phi.
struct TwistContext {
  Kind kind = Kind::Split;
  int64_t p = 3;
  int j = 0;
  int f_phi = 0;
  int W_phi = 1;
  std::optional<int64_t> l2;
  std::optional<QmodZ> phi_pi;
  int d = 1;
  std::optional<int> n0;
  // discriminant used when tower characters have to be built explicitly
  std::optional<int64_t> D;

  void validate() const;
  int stability_level() const { return n0 ? *n0 : j + f_phi + 1; }
  int64_t algebra_D() const;
};

struct LocalQuotient {
  int value = 1;
  std::string branch;
  bool uses_legendre = false;
};

// Quotient of relative root numbers at p from conductor data. f_chi is the
// conductor of phi*rho (predicted by the caller or measured).
LocalQuotient local_twist_quotient(Kind kind, int64_t p, int f_phi, int f_rho, int f_chi, std::optional<int64_t> l1,
                                   std::optional<int64_t> l2, std::optional<QmodZ> phi_pi);

// Conductor of phi*rho when it is determined by the two conductors alone.
int predicted_twist_conductor(int f_phi, int f_rho);

struct TwistOutcome {
  int quotient = 1;
  int W_chi = 1;
  std::string branch;
  bool table_discrepancy = false;
  bool uses_legendre = false;
};

// Quotient at level n from the context; l1 is the class of phi*rho.
LocalQuotient twist_quotient(const TwistContext& ctx, int n, std::optional<int64_t> l1 = std::nullopt);

// The global case table read literally; nullopt when it needs an absent l1.
std::optional<std::pair<int, std::string>> theorem_root_number(const TwistContext& ctx, int n,
                                                               std::optional<int64_t> l1);

// W(phi) times the quotient; flags levels where the literal table disagrees.
TwistOutcome global_twisted_root_number(const TwistContext& ctx, int n, std::optional<int64_t> l1 = std::nullopt);

struct ExplicitTwist {
  int quotient = 1;
  std::string branch;
  int f_phi = 0;
  int f_rho = 0;
  int f_chi = 0;
  std::optional<int64_t> l1, l2;
  bool conductor_drop = false;
  bool uses_legendre = false;
};

// Quotient from explicit local characters, using measured conductors. When the
// conductor of phi*rho falls below the two-conductor rule the local quotient tables do
// not apply and the closed forms of the two characters are divided instead.
ExplicitTwist twist_quotient_explicit(const UnitCharacter& phi, const UnitCharacter& rho);

}  // namespace acrn
