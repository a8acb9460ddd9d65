#include "acrn/rootnum.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "acrn/error.hpp"

namespace acrn {

namespace {

RootNumberValue finish(std::complex<double> w) {
  if (std::abs(std::abs(w) - 1.0) > kUnitTolerance)
    throw InvariantBreach("root number off the unit circle: |W| = " + std::to_string(std::abs(w)));
  RootNumberValue r{std::nullopt, w};
  QmodZ q;
  if (match_fourth_root(w, kUnitTolerance, q)) r.exact = q;
  return r;
}

RootNumberValue exact_value(QmodZ q) { return {q, complexify(q)}; }

RootNumberValue product(const RootNumberValue& a, const RootNumberValue& b) {
  if (a.exact && b.exact) return {*a.exact + *b.exact, a.approx * b.approx};
  return finish(a.approx * b.approx);
}

// Sum of exp(2 pi i k / M) weighted by counts.
std::complex<double> weighted_roots(const std::vector<int64_t>& counts) {
  const double M = static_cast<double>(counts.size());
  std::complex<double> s = 0;
  for (std::size_t k = 0; k < counts.size(); ++k)
    if (counts[k]) s += static_cast<double>(counts[k]) * std::polar(1.0, 2.0 * M_PI * static_cast<double>(k) / M);
  return s;
}

// Numerators over p^(f + m*) of {tr(pi^-(f + m*) x)} for each unit x of the group.
std::shared_ptr<const std::vector<int64_t>> trace_table(const UnitGroup& G, int f) {
  const auto& alg = G.algebra();
  using Key = std::tuple<int64_t, int, int64_t, int, int, int>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const std::vector<int64_t>>> cache;
  Key key{alg.p(), static_cast<int>(alg.kind()), alg.D(), alg.precision(), G.level(), f};
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const int k = f + canonical_m(alg);
  const int64_t P = ipow(alg.p(), k);
  const RingElt shift = alg.pi_power(-k);
  auto t = std::make_shared<std::vector<int64_t>>(G.order());
  for (std::size_t i = 0; i < G.order(); ++i) {
    QmodZ v = alg.fractional_trace(alg.mul(shift, G.unit(i)));
    (*t)[i] = v.num() * (P / v.den());
  }
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(t)).first->second;
}

int sign_of(QmodZ q, const char* what) {
  if (q.is_zero()) return 1;
  if (q == QmodZ::half()) return -1;
  throw std::invalid_argument(std::string(what) + " is not +1 or -1");
}

QmodZ from_sign(int s) { return s == 1 ? QmodZ::zero() : QmodZ::half(); }

int leg_checked(int64_t a, int64_t p) {
  int s = legendre(a, p);
  if (s == 0) throw std::invalid_argument("Legendre symbol of a class divisible by p");
  return s;
}

}  // namespace

RootNumberValue ratio(const RootNumberValue& a, const RootNumberValue& b) {
  if (a.exact && b.exact) return {*a.exact - *b.exact, a.approx / b.approx};
  return finish(a.approx / b.approx);
}

RootNumberValue root_number_oracle(const UnitCharacter& chi, AdditiveCharSpec psi) {
  const auto& alg = chi.algebra();
  if (alg.kind() == Kind::Split) {
    auto [c1, c2] = split_components(chi);
    return product(root_number_oracle_base(c1, psi.m), root_number_oracle_base(c2, psi.m));
  }
  const int f = chi.conductor();
  if (f == 0) return exact_value(chi.at_uniformizer() * psi.m);
  if (f + psi.m + 1 > alg.precision()) throw PrecisionExhausted("root_number_oracle: need f + m + 1 <= N");

  const UnitGroup& G = chi.group();
  const int64_t p = alg.p();
  const int64_t P = ipow(p, f + canonical_m(alg));
  const int64_t M = std::lcm(P, chi.unit_order());
  auto tt = trace_table(G, f);
  std::vector<int64_t> a(chi.values().size());
  for (std::size_t g = 0; g < a.size(); ++g) a[g] = chi.values()[g].num() * (M / chi.values()[g].den());

  std::vector<int64_t> counts(M, 0);
  for (std::size_t i = 0; i < G.order(); ++i) {
    auto e = G.exponents(i);
    int64_t s = 0;
    for (std::size_t g = 0; g < a.size(); ++g) s = (s + e[g] * a[g]) % M;
    ++counts[mod((*tt)[i] * (M / P) - s, M)];
  }
  const double index = static_cast<double>(alg.unit_group_order(G.level()) / alg.unit_group_order(f));
  const double q = alg.kind() == Kind::Inert ? static_cast<double>(p * p) : static_cast<double>(p);
  std::complex<double> w = weighted_roots(counts) / index / std::pow(q, f / 2.0);
  return finish(w * complexify(chi.at_uniformizer() * (f + psi.m)));
}

RootNumberValue root_number_oracle_base(const BaseCharacter& chi, int m) {
  const int f = chi.conductor();
  if (f == 0) return exact_value(chi.at_p() * m);
  const int64_t p = chi.p();
  const int64_t P = ipow(p, f);
  int64_t M = P;
  for (int64_t a = 1; a < P; ++a)
    if (a % p) M = std::lcm(M, chi(a).den());
  std::vector<int64_t> counts(M, 0);
  for (int64_t a = 1; a < P; ++a) {
    if (a % p == 0) continue;
    QmodZ v = chi(a);
    ++counts[mod(a * (M / P) - v.num() * (M / v.den()), M)];
  }
  std::complex<double> w = weighted_roots(counts) / std::pow(static_cast<double>(p), f / 2.0);
  return finish(w * complexify(chi.at_p() * (f + m)));
}

RootNumberValue relative_root_oracle(const UnitCharacter& chi) {
  const auto& alg = chi.algebra();
  auto num = root_number_oracle(chi, canonical_psi(alg));
  return ratio(num, root_number_oracle_base(kappa_base(alg), 0));
}

RootNumberValue relative_root_split(const BaseCharacter& chi1, const BaseCharacter& chi2) {
  if (!(chi1.at_generator() + chi2.at_generator()).is_zero() || !(chi1.at_p() + chi2.at_p()).is_zero())
    throw std::invalid_argument("relative_root_split: chi_1 chi_2 is not trivial");
  return exact_value(chi2(-1));
}

RootNumberValue relative_root_split(const UnitCharacter& chi) {
  auto [c1, c2] = split_components(chi);
  // the second factor's value at p is not recorded by the algebra
  return relative_root_split(c1, BaseCharacter(c2.p(), c2.level(), c2.at_generator(), -c1.at_p()));
}

int64_t l_class(const UnitCharacter& chi) {
  const auto& alg = chi.algebra();
  const int f = chi.conductor();
  if (f <= 1) throw std::invalid_argument("l_class: needs conductor > 1");
  QmodZ v = chi(alg.add(alg.one(), alg.pi_power(f - 1)));
  if (v.den() != alg.p()) throw InvariantBreach("l_class: chi(1 + pi^(f-1)) is not of order p");
  return v.num();
}

QmodZ ramified_closed_form(int64_t p, int f, int64_t l, QmodZ chi_pi) {
  if (f < 1) throw std::invalid_argument("ramified_closed_form: unramified characters are excluded");
  if (f == 1) return from_sign(legendre(2, p));
  QmodZ delta = p % 4 == 3 ? QmodZ(1, 4) : QmodZ::zero();
  return from_sign(leg_checked(-2 * l, p)) + chi_pi * (f - 1) + delta;
}

RamifiedClosed relative_root_ramified_closed(const UnitCharacter& chi) {
  const auto& alg = chi.algebra();
  if (alg.kind() != Kind::Ramified) throw std::invalid_argument("relative_root_ramified_closed: algebra not ramified");
  RamifiedClosed r;
  r.f = chi.conductor();
  if (r.f == 0) throw std::invalid_argument("relative_root_ramified_closed: chi is unramified");
  if (r.f > 1) r.l = l_class(chi);
  r.value = ramified_closed_form(alg.p(), r.f, r.l.value_or(0), chi.at_uniformizer());
  return r;
}

int inert_sign_formula(int f, QmodZ chi_at_sqrt_minus_D) {
  int s = sign_of(chi_at_sqrt_minus_D, "chi(sqrt(-D))");
  return (f % 2 ? -1 : 1) * s;
}

int relative_root_inert_sign(const UnitCharacter& chi) {
  const auto& alg = chi.algebra();
  if (alg.kind() != Kind::Inert) throw std::invalid_argument("relative_root_inert_sign: algebra not inert");
  if (chi.conductor() == 0) throw std::invalid_argument("relative_root_inert_sign: chi is unramified");
  return inert_sign_formula(chi.conductor(), chi(alg.omega()));
}

// ---------------------------------------------------------------------------

void TwistContext::validate() const {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("TwistContext: p must be an odd prime");
  if (j < 0 || f_phi < 0) throw std::invalid_argument("TwistContext: j and f_phi must be nonnegative");
  if (W_phi != 1 && W_phi != -1) throw std::invalid_argument("TwistContext: W_phi must be +1 or -1");
  if (d < 1) throw std::invalid_argument("TwistContext: d must be positive");
  if (n0 && *n0 < 0) throw std::invalid_argument("TwistContext: n0 must be nonnegative");
  if (kind != Kind::Ramified) return;
  if (!(f_phi == 1 || (f_phi >= 2 && f_phi % 2 == 0)))
    throw std::invalid_argument("TwistContext: ramified f_phi must be 1 or even");
  if (!phi_pi) throw std::invalid_argument("TwistContext: ramified context needs phi_pi");
  QmodZ square = *phi_pi * 2;
  if (square != (p % 4 == 1 ? QmodZ::zero() : QmodZ::half()))
    throw std::invalid_argument("TwistContext: phi_pi^2 is inconsistent with p mod 4");
  if (f_phi > 1) {
    if (!l2) throw std::invalid_argument("TwistContext: f_phi > 1 needs l2");
    if (mod(*l2, p) == 0) throw std::invalid_argument("TwistContext: l2 must be invertible mod p");
  }
}

int64_t TwistContext::algebra_D() const {
  if (D) return *D;
  switch (kind) {
    case Kind::Ramified:
      // Q_3(sqrt(-3)) has a non-cyclic minus part; use Q_3(sqrt(-6)) instead
      return p == 3 ? 6 : p;
    case Kind::Inert:
      for (int64_t d = 1;; ++d)
        if (d % p && legendre(-d, p) == -1) return d;
    case Kind::Split:
      for (int64_t d = 1;; ++d)
        if (d % p && legendre(-d, p) == 1) return d;
  }
  throw std::logic_error("algebra_D: bad kind");
}

int predicted_twist_conductor(int f_phi, int f_rho) { return f_rho != f_phi ? std::max(f_phi, f_rho) : f_phi; }

LocalQuotient local_twist_quotient(Kind kind, int64_t p, int f_phi, int f_rho, int f_chi, std::optional<int64_t> l1,
                                   std::optional<int64_t> l2, std::optional<QmodZ> phi_pi) {
  switch (kind) {
    case Kind::Split:
      return {1, "split", false};
    case Kind::Inert:
      return {(f_chi - f_phi) % 2 ? -1 : 1, "inert", false};
    case Kind::Ramified:
      break;
  }
  if (f_rho == 0) return {1, "ramified-trivial-rho", false};
  const bool p1 = p % 4 == 1;
  auto need = [](const std::optional<int64_t>& l, const char* name) {
    if (!l) throw std::invalid_argument(std::string("twist quotient needs ") + name);
    return *l;
  };
  if (f_phi > 1) {
    if (f_rho < f_phi) return {1, "ramified-below", false};
    int s = leg_checked(need(l1, "l1") * inv_mod(need(l2, "l2"), p), p);
    if (f_rho == f_phi) return {s, "ramified-equal", true};
    if (p1) return {s, "ramified-above-p1", true};
    return {s * (((f_rho - f_phi) / 2) % 2 ? -1 : 1), "ramified-above-p3", true};
  }
  if (f_phi != 1) throw std::invalid_argument("twist quotient: ramified f_phi must be 1 or even");
  if (!phi_pi) throw std::invalid_argument("twist quotient needs phi_pi");
  int s = leg_checked(need(l1, "l1"), p);
  if (p1) return {s * sign_of(*phi_pi, "phi(pi)"), "ramified-f1-p1", true};
  int t = sign_of(QmodZ(1, 4) - *phi_pi, "i / phi(pi)");
  return {s * ((f_rho / 2 + 1) % 2 ? -1 : 1) * t, "ramified-f1-p3", true};
}

LocalQuotient twist_quotient(const TwistContext& ctx, int n, std::optional<int64_t> l1) {
  ctx.validate();
  if (ctx.kind == Kind::Split) return {1, "split", false};
  int f_rho = conductor_of_level(ctx.kind, n, ctx.j);
  return local_twist_quotient(ctx.kind, ctx.p, ctx.f_phi, f_rho, predicted_twist_conductor(ctx.f_phi, f_rho), l1,
                              ctx.l2, ctx.phi_pi);
}

std::optional<std::pair<int, std::string>> theorem_root_number(const TwistContext& ctx, int n,
                                                               std::optional<int64_t> l1) {
  ctx.validate();
  const int W = ctx.W_phi;
  const int j = ctx.j, f = ctx.f_phi;
  const int64_t p = ctx.p;
  auto sgn = [](int e) { return e % 2 ? -1 : 1; };
  switch (ctx.kind) {
    case Kind::Split:
      return std::pair{W, std::string("split")};
    case Kind::Inert:
      if (n <= j + f - 1) return std::pair{W, std::string("inert-low")};
      return std::pair{sgn(n - j + 1 - f) * W, std::string("inert-high")};
    case Kind::Ramified:
      break;
  }
  if (n <= j) return std::pair{W, std::string("ramified-trivial")};
  const int two = 2 * (n - j);
  auto leg_ratio = [&]() -> std::optional<int> {
    if (!l1) return std::nullopt;
    return leg_checked(*l1 * inv_mod(*ctx.l2, p), p);
  };
  if (p % 4 == 1) {
    if (f > 1 && two >= f) {
      auto s = leg_ratio();
      if (!s) return std::nullopt;
      return std::pair{W * *s, std::string("ramified-p1-at-or-above")};
    }
    if (f > 1) return std::pair{1, std::string("ramified-p1-below")};
    if (!l1) return std::nullopt;
    return std::pair{W * leg_checked(*l1, p) * sign_of(*ctx.phi_pi, "phi(pi)"), std::string("ramified-p1-f1")};
  }
  if (f > 1 && two > f) {
    auto s = leg_ratio();
    if (!s) return std::nullopt;
    return std::pair{W * *s * sgn(n - j + f / 2), std::string("ramified-p3-above")};
  }
  if (f > 1 && two == f) {
    auto s = leg_ratio();
    if (!s) return std::nullopt;
    return std::pair{W * *s, std::string("ramified-p3-equal")};
  }
  if (f > 1) return std::pair{W, std::string("ramified-p3-below")};
  if (!l1) return std::nullopt;
  int t = sign_of(QmodZ(1, 4) - *ctx.phi_pi, "i / phi(pi)");
  return std::pair{W * leg_checked(*l1, p) * sgn(n - j + 1) * t, std::string("ramified-p3-f1")};
}

TwistOutcome global_twisted_root_number(const TwistContext& ctx, int n, std::optional<int64_t> l1) {
  if (n < 0) throw std::invalid_argument("global_twisted_root_number: negative level");
  LocalQuotient q = twist_quotient(ctx, n, l1);
  TwistOutcome out;
  out.quotient = q.value;
  out.W_chi = ctx.W_phi * q.value;
  out.uses_legendre = q.uses_legendre;
  auto literal = theorem_root_number(ctx, n, l1);
  out.branch = (literal ? literal->second : std::string("theorem-needs-l1")) + "/" + q.branch;
  out.table_discrepancy = literal && literal->first != out.W_chi;
  return out;
}

ExplicitTwist twist_quotient_explicit(const UnitCharacter& phi, const UnitCharacter& rho) {
  const auto& alg = phi.algebra();
  if (!(rho.algebra() == alg)) throw std::invalid_argument("twist_quotient_explicit: characters on different algebras");
  UnitCharacter chi = phi * rho;
  ExplicitTwist t;
  t.f_phi = phi.conductor();
  t.f_rho = rho.conductor();
  t.f_chi = chi.conductor();
  t.conductor_drop = t.f_chi != predicted_twist_conductor(t.f_phi, t.f_rho);
  if (alg.kind() == Kind::Ramified) {
    if (t.f_chi > 1) t.l1 = l_class(chi);
    if (t.f_phi > 1) t.l2 = l_class(phi);
    if (t.conductor_drop) {
      QmodZ d = relative_root_ramified_closed(chi).value - relative_root_ramified_closed(phi).value;
      t.quotient = sign_of(d, "closed-form quotient");
      t.branch = "ramified-conductor-drop";
      t.uses_legendre = true;
      return t;
    }
  }
  LocalQuotient q =
      local_twist_quotient(alg.kind(), alg.p(), t.f_phi, t.f_rho, t.f_chi, t.l1, t.l2, phi.at_uniformizer());
  t.quotient = q.value;
  t.branch = q.branch + (t.conductor_drop ? "-conductor-drop" : "");
  t.uses_legendre = q.uses_legendre;
  return t;
}

}  // namespace acrn
