#include "acrn/predictor.hpp"

#include <algorithm>
#include <stdexcept>

#include "acrn/arith.hpp"
#include "acrn/error.hpp"
#include "acrn/localcft.hpp"

namespace acrn {

namespace {

Rational pow_rational(int64_t p, int e) { return Rational(boost::multiprecision::pow(boost::multiprecision::cpp_int(p), e)); }

// First level from which every branch of the case machine is in its final form.
int classifier_start(const TwistContext& ctx) { return std::max(ctx.stability_level(), ctx.j + ctx.f_phi + 1); }

int sign_after_drop(const TwistContext& ctx) { return ctx.W_phi; }

LevelCounts ramified_case_machine(const TwistContext& ctx, int n) {
  const int64_t p = ctx.p;
  const int64_t per_class = euler_phi_ppower(p, n) / (p - 1);
  const int f_rho = conductor_of_level(Kind::Ramified, n, ctx.j);
  LevelCounts c{n, 0, 0, false};
  for (int64_t l_rho = 1; l_rho < p; ++l_rho) {
    int64_t l1 = f_rho == ctx.f_phi && ctx.f_phi > 1 ? mod(*ctx.l2 + l_rho, p) : l_rho;
    // l1 = 0 means phi rho has a smaller conductor than either factor
    int s = l1 == 0 ? sign_after_drop(ctx) : global_twisted_root_number(ctx, n, l1).W_chi;
    (s == 1 ? c.plus : c.minus) += per_class;
  }
  return c;
}

LevelCounts enumerated(const TwistContext& ctx, int n) {
  const int64_t p = ctx.p;
  if (ctx.kind == Kind::Split) throw std::invalid_argument("enumerated mode: split places have no local tower character");
  if (n - ctx.j > 2) throw PrecisionExhausted("enumerated mode: explicit characters need n - j <= 2");
  const int F = conductor_of_level(ctx.kind, n, ctx.j);
  auto alg = make_algebra(p, ctx.kind, ctx.algebra_D(), F + 1);
  LevelCounts c{n, 0, 0, false};
  for (int64_t seed = 0; seed < rho_count(p, n, ctx.j); ++seed) {
    auto rho = build_rho(alg, n, ctx.j, seed).rho;
    const int f_rho = rho.conductor();
    std::optional<int64_t> l1;
    int s = 0;
    if (ctx.kind == Kind::Ramified) {
      int64_t l_rho = l_class(rho);
      if (f_rho > ctx.f_phi || ctx.f_phi == 1) l1 = l_rho;
      if (f_rho == ctx.f_phi && ctx.f_phi > 1) l1 = mod(*ctx.l2 + l_rho, p);
      if (l1 == 0) s = sign_after_drop(ctx);
    }
    if (s == 0) {
      int f_chi = predicted_twist_conductor(ctx.f_phi, f_rho);
      s = ctx.W_phi * local_twist_quotient(ctx.kind, p, ctx.f_phi, f_rho, f_chi, l1, ctx.l2, ctx.phi_pi).value;
    }
    ++(s == 1 ? c.plus : c.minus);
  }
  // seeds run over the faithful characters of D_n; each level-n character
  // of the tower restricts to one of them, p^(n - 1)(p - 1) / #seeds times
  const int64_t mult = euler_phi_ppower(p, n) / rho_count(p, n, ctx.j);
  c.plus *= mult;
  c.minus *= mult;
  return c;
}

}  // namespace

std::string rational_str(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

int64_t euler_phi_ppower(int64_t p, int n) {
  if (n < 0) throw std::invalid_argument("euler_phi_ppower: negative exponent");
  return n == 0 ? 1 : ipow(p, n - 1) * (p - 1);
}

int vanishing_order_parity(int W) {
  if (W != 1 && W != -1) throw std::invalid_argument("vanishing_order_parity: W must be +1 or -1");
  return (1 - W) / 2;
}

std::string regime_name(Regime r) { return r == Regime::Stable ? "stable" : "below-n0"; }

EpsilonSequence epsilon_sequence(const TwistContext& ctx, int n_from, int n_to) {
  ctx.validate();
  if (n_from < 1) throw std::invalid_argument("epsilon_sequence: n_from must be at least 1");
  EpsilonSequence seq{ctx, {}};
  const int tilde_w = vanishing_order_parity(ctx.W_phi);
  for (int n = n_from; n <= n_to; ++n) {
    EpsilonEntry e;
    e.n = n;
    switch (ctx.kind) {
      case Kind::Split:
        e.epsilon = ctx.W_phi == 1 ? 0 : 2 * ctx.d;
        break;
      case Kind::Inert: {
        bool on = (n % 2 == tilde_w) != ((ctx.j + ctx.f_phi) % 2 == 1);
        e.epsilon = on ? 2 * ctx.d : 0;
        break;
      }
      case Kind::Ramified:
        e.epsilon = ctx.d;
        break;
    }
    e.phi_pn = euler_phi_ppower(ctx.p, n);
    e.rank_delta = e.epsilon * e.phi_pn;
    e.regime = n < ctx.stability_level() ? Regime::BelowN0 : Regime::Stable;
    seq.entries.push_back(e);
  }
  return seq;
}

std::vector<int64_t> rank_sequence(const TwistContext& ctx, int64_t rank_base, int n_from, int n_to) {
  if (rank_base < 0) throw std::invalid_argument("rank_sequence: rank_base must be nonnegative");
  std::vector<int64_t> out;
  int64_t r = rank_base;
  for (const auto& e : epsilon_sequence(ctx, n_from, n_to).entries) {
    int64_t next = r + e.rank_delta;
    if ((next - r) % e.phi_pn) throw InvariantBreach("rank_sequence: increment not divisible by phi(p^n)");
    out.push_back(r = next);
  }
  return out;
}

bool mw_finitely_generated(const TwistContext& ctx) { return ctx.kind == Kind::Split && ctx.W_phi == 1; }

CountMode parse_count_mode(const std::string& s) {
  if (s == "case-machine") return CountMode::CaseMachine;
  if (s == "enumerated") return CountMode::Enumerated;
  throw std::invalid_argument("unknown mode '" + s + "' (case-machine|enumerated)");
}

LevelCounts level_counts(const TwistContext& ctx, int n, CountMode mode) {
  ctx.validate();
  if (n < 0) throw std::invalid_argument("level_counts: negative level");
  const int64_t weight = euler_phi_ppower(ctx.p, n);
  LevelCounts c{n, 0, 0, false};
  if (n == 0 || (ctx.kind != Kind::Split && n <= ctx.j)) {
    (ctx.W_phi == 1 ? c.plus : c.minus) = weight;
  } else if (mode == CountMode::Enumerated) {
    c = enumerated(ctx, n);
  } else if (ctx.kind == Kind::Ramified) {
    c = ramified_case_machine(ctx, n);
  } else {
    int s = global_twisted_root_number(ctx, n).W_chi;
    (s == 1 ? c.plus : c.minus) = weight;
  }
  c.assumed = n < ctx.stability_level();
  if (c.plus + c.minus != weight) throw InvariantBreach("level_counts: counts do not add up to phi(p^n)");
  return c;
}

Rational parity_mass(int64_t p, int N, int parity) {
  Rational s = 0;
  for (int n = parity; n <= N; n += 2) s += euler_phi_ppower(p, n);
  return s / pow_rational(p, N);
}

Rational parity_mass_closed(int64_t p, int N, int parity) {
  const Rational pp(p);
  const Rational tail = 1 / pow_rational(p, N);
  const bool even_N = N % 2 == 0;
  Rational head = parity == 0 ? (even_N ? pp : Rational(1)) : (even_N ? Rational(1) : pp);
  Rational num = parity == 0 ? Rational(head + tail) : Rational(head - tail);
  return num / (pp + 1);
}

LimitRecord published_table(const TwistContext& ctx) {
  const Rational pp(ctx.p);
  switch (ctx.kind) {
    case Kind::Split: {
      Rational plus = Rational(ctx.W_phi + 1) / 2, minus = Rational(-(ctx.W_phi - 1)) / 2;
      return {plus, plus, minus, minus};
    }
    case Kind::Ramified:
      return {Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)};
    case Kind::Inert:
      break;
  }
  const Rational lo = 1 / (pp + 1), hi = pp / (pp + 1);
  const bool even_row = (ctx.j + ctx.f_phi) % 2 == 0;
  // columns: P+_{2k+1}, P+_{2k}, P-_{2k+1}, P-_{2k}
  Rational cols[4];
  if (even_row == (ctx.W_phi == 1)) {
    cols[0] = lo, cols[1] = hi, cols[2] = hi, cols[3] = lo;
  } else {
    cols[0] = hi, cols[1] = lo, cols[2] = lo, cols[3] = hi;
  }
  return {cols[1], cols[0], cols[3], cols[2]};
}

Rational plus_model(const TwistContext& ctx, int N) {
  switch (ctx.kind) {
    case Kind::Split:
      return Rational(ctx.W_phi + 1) / 2;
    case Kind::Ramified:
      return Rational(1, 2);
    case Kind::Inert:
      break;
  }
  // stable sign W (-1)^(n - j + 1 - f) is +1 on this parity of n
  const int parity = mod(ctx.j + ctx.f_phi + 1 + vanishing_order_parity(ctx.W_phi), 2);
  return parity_mass_closed(ctx.p, N, parity);
}

std::optional<LimitRecord> classify_limits(const TwistContext& ctx, const std::vector<Rational>& P_plus,
                                           const std::vector<Rational>& P_minus) {
  const int N_max = static_cast<int>(P_plus.size()) - 1;
  const int start = classifier_start(ctx);
  const Rational pp(ctx.p);
  const int step = ctx.kind == Kind::Inert ? 2 : 1;
  const Rational q = step == 2 ? pp * pp : pp;
  auto extrapolate = [&](const std::vector<Rational>& P, int N) { return (q * P[N + step] - P[N]) / (q - 1); };
  // limit along N = parity mod step, from the last two usable windows
  auto limit = [&](const std::vector<Rational>& P, int parity) -> std::optional<Rational> {
    int N1 = N_max - step;
    while (N1 >= 0 && mod(N1, step) != parity % step) --N1;
    int N2 = N1 - step;
    if (N2 < start) return std::nullopt;
    Rational a = extrapolate(P, N1), b = extrapolate(P, N2);
    if (a != b) throw InvariantBreach("classify_limits: series is not of the form L + c p^-N");
    return a;
  };
  auto pe = limit(P_plus, 0), po = limit(P_plus, 1), me = limit(P_minus, 0), mo = limit(P_minus, 1);
  if (!pe || !po || !me || !mo) return std::nullopt;
  return LimitRecord{*pe, *po, *me, *mo};
}

DistributionSeries distribution_series(const TwistContext& ctx, int N_max, CountMode mode) {
  ctx.validate();
  if (N_max < 1) throw std::invalid_argument("distribution_series: N_max must be at least 1");
  DistributionSeries s;
  s.ctx = ctx;
  s.N_max = N_max;
  int64_t plus = 0, minus = 0;
  for (int N = 0; N <= N_max; ++N) {
    s.levels.push_back(level_counts(ctx, N, mode));
    plus += s.levels.back().plus;
    minus += s.levels.back().minus;
    const Rational total = pow_rational(ctx.p, N);
    if (plus + minus != total) throw InvariantBreach("distribution_series: level weights do not sum to p^N");
    s.P_plus.push_back(Rational(plus) / total);
    s.P_minus.push_back(Rational(minus) / total);
  }
  s.limits = classify_limits(ctx, s.P_plus, s.P_minus);
  s.matches_paper_table = s.limits && *s.limits == published_table(ctx);
  return s;
}

}  // namespace acrn
