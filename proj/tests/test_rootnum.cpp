#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <set>

#include "acrn/arith.hpp"
#include "acrn/error.hpp"
#include "acrn/rootnum.hpp"

using namespace acrn;

namespace {

int brute_legendre(int64_t a, int64_t p) {
  a = mod(a, p);
  if (a == 0) return 0;
  for (int64_t x = 1; x < p; ++x)
    if (x * x % p == a) return 1;
  return -1;
}

// Oracle quotient as a sign; fails the test if it is not real.
int oracle_sign(const UnitCharacter& chi) {
  auto w = relative_root_oracle(chi);
  EXPECT_TRUE(w.exact.has_value());
  EXPECT_TRUE(!w.exact || w.exact->is_zero() || *w.exact == QmodZ::half()) << w.exact->str();
  return w.exact && w.exact->is_zero() ? 1 : -1;
}

std::vector<UnitCharacter> constrained(const QuadraticLocalAlgebra& alg, int f) {
  std::vector<UnitCharacter> out;
  for (const auto& c : all_characters(alg, f, Restriction::Kappa))
    for (QmodZ v : kappa_uniformizer_values(alg)) out.push_back(c.with_uniformizer_value(v));
  return out;
}

TwistContext ramified_ctx(int64_t p, int j, int f_phi, int W, std::optional<int64_t> l2, QmodZ phi_pi) {
  TwistContext c;
  c.kind = Kind::Ramified;
  c.p = p;
  c.j = j;
  c.f_phi = f_phi;
  c.W_phi = W;
  c.l2 = l2;
  c.phi_pi = phi_pi;
  return c;
}

TwistContext inert_ctx(int64_t p, int j, int f_phi, int W) {
  TwistContext c;
  c.kind = Kind::Inert;
  c.p = p;
  c.j = j;
  c.f_phi = f_phi;
  c.W_phi = W;
  return c;
}

}  // namespace

TEST(Legendre, MatchesSquares) {
  EXPECT_EQ(legendre(1, 7), 1);
  EXPECT_EQ(legendre(2, 7), 1);
  EXPECT_EQ(legendre(2, 3), -1);
  for (int64_t p : {3, 5, 7, 11, 13})
    for (int64_t a = -20; a <= 20; ++a) EXPECT_EQ(legendre(a, p), brute_legendre(a, p)) << a << " " << p;
}

TEST(Oracle, UnramifiedValues) {
  auto inert = make_algebra(3, Kind::Inert, 1, 6);
  auto triv = UnitCharacter::trivial(inert);
  EXPECT_EQ(root_number_oracle(triv, {0}).exact, QmodZ::zero());
  auto kappa = triv.with_uniformizer_value(QmodZ::half());
  auto w = root_number_oracle(kappa, {1});
  EXPECT_EQ(w.exact, QmodZ::half());
  EXPECT_NEAR(w.approx.real(), -1.0, 1e-12);
}

TEST(Oracle, QuadraticGaussSumModThree) {
  BaseCharacter leg(3, 1, QmodZ::half(), QmodZ::zero());
  std::complex<double> direct = 0;
  for (int a = 1; a <= 2; ++a) direct += static_cast<double>(brute_legendre(a, 3)) * std::polar(1.0, 2 * M_PI * a / 3.0);
  direct /= std::sqrt(3.0);
  auto w = root_number_oracle_base(leg, 0);
  EXPECT_NEAR(std::abs(w.approx - direct), 0.0, 1e-12);
  EXPECT_EQ(w.exact, QmodZ(1, 4));
}

TEST(Oracle, UnitModulusAndReality) {
  for (auto [p, kind, D] : {std::tuple{3, Kind::Inert, 1}, {5, Kind::Inert, 2}, {3, Kind::Ramified, 3},
                            {5, Kind::Ramified, 5}, {7, Kind::Ramified, 7}, {5, Kind::Split, 1}}) {
    auto alg = make_algebra(p, kind, D, 6);
    for (const auto& chi : constrained(alg, 2)) {
      auto w = root_number_oracle(chi, canonical_psi(alg));
      EXPECT_NEAR(std::abs(w.approx), 1.0, kUnitTolerance);
      oracle_sign(chi);
    }
  }
}

TEST(Oracle, PrecisionGuard) {
  auto alg = make_algebra(3, Kind::Ramified, 3, 4);
  auto chars = all_characters(alg, 4, Restriction::Kappa);
  for (const auto& c : chars) {
    if (c.conductor() == 4) {
      EXPECT_THROW(root_number_oracle(c, canonical_psi(alg)), PrecisionExhausted);
      break;
    }
  }
}

TEST(SplitRelative, QuadraticAndQuarticOnFive) {
  // (Z/5)^x is cyclic of order 4, so its quadratic character is the Legendre
  // symbol and (-1/5) = +1; the quartic characters send -1 to -1.
  BaseCharacter quad(5, 1, QmodZ::half(), QmodZ::zero());
  EXPECT_EQ(quad(-1), brute_legendre(-1, 5) == 1 ? QmodZ::zero() : QmodZ::half());
  EXPECT_EQ(relative_root_split(quad, quad).exact, QmodZ::zero());
  BaseCharacter quartic(5, 1, QmodZ(1, 4), QmodZ::zero());
  BaseCharacter quartic_inv(5, 1, QmodZ(3, 4), QmodZ::zero());
  EXPECT_EQ(relative_root_split(quartic_inv, quartic).exact, QmodZ::half());
  BaseCharacter triv(5, 0, QmodZ::zero(), QmodZ::zero());
  EXPECT_EQ(relative_root_split(triv, triv).exact, QmodZ::zero());
  EXPECT_THROW(relative_root_split(quartic, quartic), std::invalid_argument);
}

TEST(SplitRelative, MatchesOracle) {
  auto alg = make_algebra(5, Kind::Split, 1, 6);
  for (const auto& chi : constrained(alg, 2)) {
    auto w = relative_root_split(chi);
    EXPECT_EQ(w.exact, relative_root_oracle(chi).exact);
  }
}

TEST(RamifiedClosed, ConductorOneIsTwoOverP) {
  EXPECT_EQ(ramified_closed_form(3, 1, 0, QmodZ(1, 4)), QmodZ::half());
  EXPECT_EQ(ramified_closed_form(7, 1, 0, QmodZ(1, 4)), QmodZ::zero());
  EXPECT_EQ(ramified_closed_form(5, 1, 0, QmodZ::zero()), QmodZ::half());
}

TEST(RamifiedClosed, QuarterTwistWhenThreeModFour) {
  // p = 3, f = 2, l = 1: (-2/3) = +1, chi(pi) = 1/4, delta = 1
  EXPECT_EQ(ramified_closed_form(3, 2, 1, QmodZ(1, 4)), QmodZ::half());
  EXPECT_EQ(ramified_closed_form(5, 2, 1, QmodZ::zero()), QmodZ::half());  // (-2/5) = -1
  EXPECT_THROW(ramified_closed_form(3, 0, 1, QmodZ::zero()), std::invalid_argument);
  EXPECT_THROW(ramified_closed_form(3, 2, 3, QmodZ::zero()), std::invalid_argument);
}

TEST(RamifiedClosed, MatchesOracle) {
  for (auto [p, D] : {std::pair{3, 3}, {3, 6}, {5, 5}, {7, 7}}) {
    auto alg = make_algebra(p, Kind::Ramified, D, 8);
    std::set<int> seen;
    for (int f : {1, 2, 4}) {
      if (p == 7 && f == 4) continue;
      for (const auto& chi : constrained(alg, f)) {
        if (chi.conductor() == 0) continue;
        auto closed = relative_root_ramified_closed(chi);
        seen.insert(closed.f);
        EXPECT_EQ(closed.f, chi.conductor());
        EXPECT_EQ(closed.l.has_value(), closed.f > 1);
        auto w = relative_root_oracle(chi);
        ASSERT_TRUE(w.exact.has_value());
        EXPECT_EQ(closed.value, *w.exact) << "p=" << p << " D=" << D << " f=" << closed.f;
        EXPECT_LT(std::abs(complexify(closed.value) - w.approx), kUnitTolerance);
      }
    }
    EXPECT_EQ(seen, (p == 7 ? std::set<int>{1, 2} : std::set<int>{1, 2, 4})) << p << " " << D;
  }
}

TEST(RamifiedClosed, RejectsUnramified) {
  auto alg = make_algebra(5, Kind::Ramified, 5, 6);
  EXPECT_THROW(relative_root_ramified_closed(UnitCharacter::trivial(alg)), std::invalid_argument);
}

TEST(InertSign, Formula) {
  EXPECT_EQ(inert_sign_formula(2, QmodZ::zero()), 1);
  EXPECT_EQ(inert_sign_formula(1, QmodZ::zero()), -1);
  EXPECT_EQ(inert_sign_formula(3, QmodZ::half()), 1);
  EXPECT_THROW(inert_sign_formula(1, QmodZ(1, 4)), std::invalid_argument);
}

TEST(InertSign, MatchesOracle) {
  for (auto [p, D] : {std::pair{3, 1}, {5, 2}}) {
    auto alg = make_algebra(p, Kind::Inert, D, 6);
    std::set<int> seen;
    for (int f = 1; f <= (p == 3 ? 3 : 2); ++f) {
      for (const auto& chi : constrained(alg, f)) {
        if (chi.conductor() == 0) continue;
        seen.insert(chi.conductor());
        EXPECT_EQ(relative_root_inert_sign(chi), oracle_sign(chi)) << "p=" << p << " f=" << chi.conductor();
      }
    }
    EXPECT_EQ(seen.size(), p == 3 ? 3u : 2u);
  }
}

TEST(TwistContext, Validation) {
  EXPECT_NO_THROW(ramified_ctx(5, 0, 2, 1, 1, QmodZ::zero()).validate());
  EXPECT_THROW(ramified_ctx(5, 0, 3, 1, 1, QmodZ::zero()).validate(), std::invalid_argument);
  EXPECT_THROW(ramified_ctx(5, 0, 2, 1, std::nullopt, QmodZ::zero()).validate(), std::invalid_argument);
  EXPECT_THROW(ramified_ctx(5, 0, 2, 1, 1, QmodZ(1, 4)).validate(), std::invalid_argument);
  EXPECT_THROW(ramified_ctx(3, 0, 2, 1, 1, QmodZ::zero()).validate(), std::invalid_argument);
  EXPECT_THROW(ramified_ctx(5, 0, 2, 1, 5, QmodZ::zero()).validate(), std::invalid_argument);
  EXPECT_THROW(inert_ctx(9, 0, 1, 1).validate(), std::invalid_argument);
  EXPECT_THROW(inert_ctx(3, 0, 1, 2).validate(), std::invalid_argument);
  EXPECT_EQ(inert_ctx(3, 1, 2, 1).stability_level(), 4);
}

TEST(TwistQuotient, SplitAndInert) {
  TwistContext s;
  s.kind = Kind::Split;
  s.p = 5;
  for (int n = 0; n < 5; ++n) EXPECT_EQ(twist_quotient(s, n).value, 1);
  auto c = inert_ctx(3, 1, 2, -1);
  for (int n = 0; n <= c.j + c.f_phi - 1; ++n) EXPECT_EQ(twist_quotient(c, n).value, 1);
  // f(rho) = n - j + 1 exceeds f(phi) from n = j + f(phi) on
  EXPECT_EQ(twist_quotient(c, 3).value, -1);
  EXPECT_EQ(twist_quotient(c, 4).value, 1);
  EXPECT_EQ(twist_quotient(c, 5).value, -1);
}

TEST(TwistQuotient, RamifiedBranches) {
  auto c1 = ramified_ctx(5, 1, 2, 1, 2, QmodZ::half());
  EXPECT_EQ(twist_quotient(c1, 0).value, 1);
  EXPECT_EQ(twist_quotient(c1, 1).value, 1);
  EXPECT_THROW(twist_quotient(c1, 2), std::invalid_argument);
  // f(rho) = f(phi) = 2: (l1 l2^-1 / 5)
  EXPECT_EQ(twist_quotient(c1, 2, 2).value, 1);
  EXPECT_EQ(twist_quotient(c1, 2, 1).value, legendre(3, 5));
  EXPECT_EQ(twist_quotient(c1, 2, 4).branch, "ramified-equal");
  // p = 1 mod 4, f(rho) > f(phi) > 1
  EXPECT_EQ(twist_quotient(c1, 3, 4).value, legendre(2, 5));
  // p = 3 mod 4, f(rho) = 4 > f(phi) = 2: extra (-1)^((4-2)/2)
  auto c3 = ramified_ctx(3, 0, 2, 1, 1, QmodZ(1, 4));
  EXPECT_EQ(twist_quotient(c3, 2, 1).value, -1);
  EXPECT_EQ(twist_quotient(c3, 3, 1).value, 1);
  // f(rho) < f(phi)
  auto c4 = ramified_ctx(7, 0, 4, 1, 3, QmodZ(1, 4));
  EXPECT_EQ(twist_quotient(c4, 1, 5).value, 1);
  EXPECT_EQ(twist_quotient(c4, 1, 5).branch, "ramified-below");
  // f(phi) = 1
  auto f1p1 = ramified_ctx(5, 0, 1, 1, std::nullopt, QmodZ::half());
  EXPECT_EQ(twist_quotient(f1p1, 1, 1).value, -1);
  EXPECT_EQ(twist_quotient(f1p1, 1, 2).value, 1);
  auto f1p3 = ramified_ctx(3, 0, 1, 1, std::nullopt, QmodZ(1, 4));
  // i / phi(pi) = 1, (-1)^(f(rho)/2 + 1) = 1 at f(rho) = 2
  EXPECT_EQ(twist_quotient(f1p3, 1, 1).value, 1);
  EXPECT_EQ(twist_quotient(f1p3, 2, 1).value, -1);
  auto f1p3b = ramified_ctx(3, 0, 1, 1, std::nullopt, QmodZ(3, 4));
  EXPECT_EQ(twist_quotient(f1p3b, 1, 1).value, -1);
}

TEST(GlobalTwist, CaseTable) {
  TwistContext s;
  s.kind = Kind::Split;
  s.p = 7;
  s.W_phi = -1;
  EXPECT_EQ(global_twisted_root_number(s, 4).W_chi, -1);
  auto c = inert_ctx(5, 0, 1, 1);
  for (int n = 1; n < 6; ++n) {
    auto o = global_twisted_root_number(c, n);
    EXPECT_EQ(o.W_chi, ((n - 0 + 1 - 1) % 2 ? -1 : 1)) << n;
    EXPECT_FALSE(o.table_discrepancy);
  }
  auto r = ramified_ctx(5, 2, 2, -1, 1, QmodZ::zero());
  EXPECT_EQ(global_twisted_root_number(r, 1).W_chi, -1);
  EXPECT_EQ(global_twisted_root_number(r, 2).W_chi, -1);
  EXPECT_EQ(global_twisted_root_number(r, 3, 2).W_chi, -legendre(2, 5));
}

TEST(GlobalTwist, LiteralTableDiscrepancies) {
  // p = 1 mod 4, 2(n - j) < f(phi): the table prints 1, the quotient is 1
  auto r = ramified_ctx(5, 0, 4, -1, 1, QmodZ::zero());
  auto o = global_twisted_root_number(r, 1);
  EXPECT_EQ(o.W_chi, -1);
  EXPECT_TRUE(o.table_discrepancy);
  EXPECT_EQ(theorem_root_number(r, 1, std::nullopt)->first, 1);
  r.W_phi = 1;
  EXPECT_FALSE(global_twisted_root_number(r, 1).table_discrepancy);
  // unramified phi at p, n = j: rho is trivial, yet the high branch applies
  auto c = inert_ctx(3, 1, 0, 1);
  o = global_twisted_root_number(c, 1);
  EXPECT_EQ(o.W_chi, 1);
  EXPECT_TRUE(o.table_discrepancy);
  EXPECT_FALSE(global_twisted_root_number(c, 2).table_discrepancy);
}

TEST(ExplicitTwist, MatchesOracleQuotient) {
  for (auto [p, kind, D] :
       {std::tuple{3, Kind::Inert, 1}, {3, Kind::Ramified, 6}, {5, Kind::Ramified, 5}, {5, Kind::Inert, 2}}) {
    auto alg = make_algebra(p, kind, D, 8);
    std::set<std::string> branches;
    for (int n = 1; n <= (kind == Kind::Inert && p == 5 ? 1 : 2); ++n) {
      for (const auto& phi : constrained(alg, kind == Kind::Ramified ? 2 : 1)) {
        if (kind == Kind::Ramified && phi.conductor() == 0) continue;
        int phi_sign = oracle_sign(phi);
        for (int64_t s = 0; s < rho_count(p, n, 0); ++s) {
          auto rho = build_rho(alg, n, 0, s).rho;
          auto t = twist_quotient_explicit(phi, rho);
          branches.insert(t.branch);
          EXPECT_EQ(t.quotient, oracle_sign(phi * rho) * phi_sign)
              << kind_name(kind) << " p=" << p << " n=" << n << " seed=" << s << " " << t.branch;
        }
      }
    }
    EXPECT_GE(branches.size(), 1u);
  }
}
