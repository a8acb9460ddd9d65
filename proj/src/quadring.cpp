#include "acrn/quadring.hpp"

#include <algorithm>
#include <json.hpp>
#include <stdexcept>

#include "acrn/arith.hpp"
#include "acrn/error.hpp"

namespace acrn {

namespace {

// Largest class count enumerated anywhere (keys are walked linearly).
constexpr uint64_t kClassBudget = uint64_t{1} << 26;

int vp_capped(int64_t x, int64_t p, int cap) {
  if (x == 0) return cap;
  return std::min(vp(x, p), cap);
}

}  // namespace

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::Split:
      return "split";
    case Kind::Inert:
      return "inert";
    case Kind::Ramified:
      return "ramified";
  }
  return "?";
}

Kind parse_kind(std::string_view s) {
  std::string t(s);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "split") return Kind::Split;
  if (t == "inert") return Kind::Inert;
  if (t == "ramified") return Kind::Ramified;
  throw std::invalid_argument("unknown decomposition kind '" + std::string(s) + "'");
}

QuadraticLocalAlgebra::QuadraticLocalAlgebra(int64_t p, Kind kind, int64_t D, int precision)
    : p_(p), kind_(kind), D_(D), N_(precision) {
  if (p == 2) throw std::invalid_argument("p = 2 is not supported");
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
  if (D <= 0) throw std::invalid_argument("D must be positive");
  if (precision < 1) throw std::invalid_argument("precision must be positive");
  switch (kind) {
    case Kind::Inert:
      if (D % p == 0 || legendre(-D, p) != -1)
        throw std::invalid_argument("inert algebra needs -D a unit non-residue mod p");
      P_ = N_;
      break;
    case Kind::Ramified:
      if (vp(D, p) != 1) throw std::invalid_argument("ramified algebra needs v_p(D) = 1");
      P_ = (N_ + 1) / 2;
      Du_ = D / p;
      break;
    case Kind::Split:
      if (D % p == 0 || legendre(-D, p) != 1)
        throw std::invalid_argument("split algebra needs -D a nonzero square mod p");
      P_ = N_;
      break;
  }
  // keep products of residues comfortably inside 128-bit intermediates
  pP_ = 1;
  for (int i = 0; i < P_; ++i) {
    pP_ *= p_;
    if (pP_ > (int64_t{1} << 40)) throw std::invalid_argument("precision too large for int64 residues");
  }
  if (kind == Kind::Split) {
    int64_t s = 0;
    for (int64_t t = 1; t < p_; ++t)
      if (mod(t * t + D_, p_) == 0) {
        s = t;
        break;
      }
    // Hensel: s <- s - (s^2 + D) / (2s)
    for (int i = 0; i < P_ + 1; ++i) {
      int64_t f = mod(mul_mod(s, s, pP_) + D_, pP_);
      s = mod(s - mul_mod(f, inv_mod(2 * s, pP_), pP_), pP_);
    }
    s_ = s;
  }
}

RingElt QuadraticLocalAlgebra::zero() const { return {0, 0, N_, 0}; }

int QuadraticLocalAlgebra::raw_valuation(int64_t a, int64_t b) const {
  int va = vp_capped(a, p_, P_), vb = vp_capped(b, p_, P_);
  if (kind_ == Kind::Ramified) return std::min(2 * va, 2 * vb + 1);
  return std::min(va, vb);
}

std::pair<int64_t, int64_t> QuadraticLocalAlgebra::times_pi(int64_t a, int64_t b, int d) const {
  if (kind_ != Kind::Ramified) {
    int64_t m = d >= P_ ? 0 : ipow(p_, d);
    return {mul_mod(a, m, pP_), mul_mod(b, m, pP_)};
  }
  int t = d / 2;
  int64_t m = t >= P_ ? 0 : pow_mod(-D_, t, pP_);
  a = mul_mod(a, m, pP_);
  b = mul_mod(b, m, pP_);
  if (d % 2) return {mod(-mul_mod(D_, b, pP_), pP_), a};
  return {a, b};
}

RingElt QuadraticLocalAlgebra::normalize(int64_t a, int64_t b, int shift, int prec) const {
  a = mod(a, pP_);
  b = mod(b, pP_);
  prec = std::min(prec, N_);
  if (prec <= 0) return {0, 0, shift + std::max(prec, 0), 0};
  int v = raw_valuation(a, b);
  if (v >= prec) return {0, 0, shift + prec, 0};
  if (v == 0) return {a, b, shift, prec};
  if (kind_ != Kind::Ramified) {
    int64_t pv = ipow(p_, v);
    return {a / pv, b / pv, shift + v, prec - v};
  }
  int t = v / 2;
  int64_t pt = ipow(p_, t);
  a /= pt;
  b /= pt;
  int64_t u = inv_mod(pow_mod(-Du_, t, pP_), pP_);
  a = mul_mod(a, u, pP_);
  b = mul_mod(b, u, pP_);
  if (v % 2) {
    // (a + b w) / w = b - (a/p) / Du * w
    int64_t na = b;
    int64_t nb = mod(-mul_mod(a / p_, inv_mod(Du_, pP_), pP_), pP_);
    a = na;
    b = nb;
  }
  return {a, b, shift + v, prec - v};
}

RingElt QuadraticLocalAlgebra::make(int64_t a, int64_t b, int shift) const {
  if (a == 0 && b == 0) return {0, 0, shift + N_, 0};
  // Strip p-powers over the integers first so exact inputs keep full precision.
  if (kind_ == Kind::Ramified) {
    int va = a == 0 ? 1 << 20 : vp(a, p_);
    int vb = b == 0 ? 1 << 20 : vp(b, p_);
    int v = std::min(2 * va, 2 * vb + 1);
    int t = v / 2;
    int64_t pt = ipow(p_, t);
    a /= pt;
    b /= pt;
    if (v % 2) {
      // (a + b w) / w = b - (a/p) / Du * w, with a/p exact here
      int64_t na = b;
      int64_t nb = -mul_mod(a / p_, inv_mod(Du_, pP_), pP_);
      a = na;
      b = nb;
    }
    int64_t u = inv_mod(pow_mod(-Du_, t, pP_), pP_);
    return {mul_mod(a, u, pP_), mul_mod(b, u, pP_), shift + v, N_};
  }
  int va = a == 0 ? 1 << 20 : vp(a, p_);
  int vb = b == 0 ? 1 << 20 : vp(b, p_);
  int v = std::min(va, vb);
  int64_t pv = ipow(p_, v);
  return normalize(a / pv, b / pv, shift + v, N_);
}

RingElt QuadraticLocalAlgebra::from_quadratic(int64_t a, int64_t b) const {
  if (kind_ != Kind::Split) return make(a, b);
  return normalize(a + mul_mod(b, s_, pP_), a - mul_mod(b, s_, pP_), 0, N_);
}

RingElt QuadraticLocalAlgebra::pi_power(int v) const {
  return kind_ == Kind::Split ? RingElt{1, 1, v, N_} : RingElt{1, 0, v, N_};
}

RingElt QuadraticLocalAlgebra::mul(const RingElt& x, const RingElt& y) const {
  int64_t a, b;
  if (kind_ == Kind::Split) {
    a = mul_mod(x.a, y.a, pP_);
    b = mul_mod(x.b, y.b, pP_);
  } else {
    a = mod(mul_mod(x.a, y.a, pP_) - mul_mod(D_, mul_mod(x.b, y.b, pP_), pP_), pP_);
    b = mod(mul_mod(x.a, y.b, pP_) + mul_mod(x.b, y.a, pP_), pP_);
  }
  return normalize(a, b, x.shift + y.shift, std::min(x.prec, y.prec));
}

RingElt QuadraticLocalAlgebra::add(const RingElt& x, const RingElt& y) const {
  int s = std::min(x.shift, y.shift);
  int dx = x.shift - s, dy = y.shift - s;
  auto [ax, bx] = times_pi(x.a, x.b, dx);
  auto [ay, by] = times_pi(y.a, y.b, dy);
  return normalize(ax + ay, bx + by, s, std::min(x.prec + dx, y.prec + dy));
}

RingElt QuadraticLocalAlgebra::neg(const RingElt& x) const {
  return {mod(-x.a, pP_), mod(-x.b, pP_), x.shift, x.prec};
}

RingElt QuadraticLocalAlgebra::inv(const RingElt& x) const {
  if (x.prec == 0) throw PrecisionExhausted("inv: element indistinguishable from 0 at precision");
  if (kind_ == Kind::Split) {
    if (x.a % p_ == 0 || x.b % p_ == 0)
      throw std::invalid_argument("inv: split element is not a unit times a power of pi");
    return {inv_mod(x.a, pP_), inv_mod(x.b, pP_), -x.shift, x.prec};
  }
  int64_t n = mod(mul_mod(x.a, x.a, pP_) + mul_mod(D_, mul_mod(x.b, x.b, pP_), pP_), pP_);
  int64_t ni = inv_mod(n, pP_);
  return {mul_mod(x.a, ni, pP_), mod(-mul_mod(x.b, ni, pP_), pP_), -x.shift, x.prec};
}

RingElt QuadraticLocalAlgebra::pow(const RingElt& x, int64_t e) const {
  if (e < 0) return pow(inv(x), -e);
  RingElt r = one(), base = x;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

RingElt QuadraticLocalAlgebra::conj(const RingElt& x) const {
  if (kind_ == Kind::Split) return {x.b, x.a, x.shift, x.prec};
  RingElt r{x.a, mod(-x.b, pP_), x.shift, x.prec};
  // conj(pi) = -pi when pi = sqrt(-D)
  if (kind_ == Kind::Ramified && (x.shift % 2 != 0)) r = neg(r);
  return r;
}

int QuadraticLocalAlgebra::valuation(const RingElt& x) const {
  if (x.prec == 0) throw PrecisionExhausted("valuation: element indistinguishable from 0 at precision");
  if (kind_ == Kind::Split && (x.a % p_ == 0 || x.b % p_ == 0))
    throw std::invalid_argument("valuation: split components have different valuations");
  return x.shift;
}

bool QuadraticLocalAlgebra::is_unit(const RingElt& x) const {
  if (x.prec == 0 || x.shift != 0) return false;
  if (kind_ == Kind::Split) return x.a % p_ != 0 && x.b % p_ != 0;
  return true;
}

bool QuadraticLocalAlgebra::congruent(const RingElt& x, const RingElt& y, int f) const {
  return class_key(x, f) == class_key(y, f);
}

bool QuadraticLocalAlgebra::in_base(const RingElt& x) const { return is_zero(sub(x, conj(x))); }

std::pair<int64_t, int64_t> QuadraticLocalAlgebra::coordinates(const RingElt& x) const {
  if (x.shift < 0) throw std::invalid_argument("coordinates: element is not integral");
  if (x.prec == 0) return {0, 0};
  return times_pi(x.a, x.b, x.shift);
}

std::pair<int, int64_t> QuadraticLocalAlgebra::split_component(const RingElt& x, int i) const {
  if (kind_ != Kind::Split) throw std::invalid_argument("split_component: algebra is not split");
  if (i != 0 && i != 1) throw std::invalid_argument("split_component: index must be 0 or 1");
  int64_t c = i == 0 ? x.a : x.b;
  if (x.prec == 0 || c == 0) throw PrecisionExhausted("split_component: component indistinguishable from 0");
  int v = vp(c, p_);
  return {x.shift + v, c / ipow(p_, v)};
}

QmodZ QuadraticLocalAlgebra::fractional_trace(const RingElt& x) const {
  if (x.shift >= 0) return QmodZ::zero();
  int k = -x.shift;
  if (x.prec < k) throw PrecisionExhausted("fractional_trace: precision too low to resolve the fractional part");
  switch (kind_) {
    case Kind::Inert:
      return {2 * mod(x.a, ipow(p_, k)), ipow(p_, k)};
    case Kind::Split:
      return {mod(x.a + x.b, ipow(p_, k)), ipow(p_, k)};
    case Kind::Ramified: {
      // tr(pi^-2t (a + b w)) = 2a / (-D)^t ; tr(pi^-(2t+1) (a + b w)) = 2b / (-D)^t
      int t = k / 2;
      int64_t pt = ipow(p_, t);
      if (t == 0) return QmodZ::zero();
      int64_t c = (k % 2 == 0) ? x.a : x.b;
      int64_t u = inv_mod(pow_mod(-Du_, t, pt), pt);
      return {mul_mod(2 * c, u, pt), pt};
    }
  }
  return QmodZ::zero();
}

uint64_t QuadraticLocalAlgebra::class_count(int f) const {
  if (f < 0) throw std::invalid_argument("class_count: negative level");
  uint64_t n = 1;
  int digits = kind_ == Kind::Ramified ? f : 2 * f;
  for (int i = 0; i < digits; ++i) {
    n *= static_cast<uint64_t>(p_);
    if (n > kClassBudget) throw PrecisionExhausted("class_count: enumeration budget exceeded");
  }
  return n;
}

uint64_t QuadraticLocalAlgebra::class_key(const RingElt& x, int f) const {
  if (f == 0) return 0;
  if (x.shift < 0) throw std::invalid_argument("class_key: element is not integral");
  if (x.prec > 0 && x.shift + x.prec < f) throw PrecisionExhausted("class_key: element not known mod pi^f");
  if (x.prec == 0 && x.shift < f) throw PrecisionExhausted("class_key: element not known mod pi^f");
  auto [A, B] = coordinates(x);
  int fa = kind_ == Kind::Ramified ? (f + 1) / 2 : f;
  int fb = kind_ == Kind::Ramified ? f / 2 : f;
  int64_t ma = ipow(p_, fa), mb = ipow(p_, fb);
  return static_cast<uint64_t>(mod(A, ma)) + static_cast<uint64_t>(ma) * static_cast<uint64_t>(mod(B, mb));
}

RingElt QuadraticLocalAlgebra::from_key(uint64_t key, int f) const {
  if (f == 0) return one();
  int fa = kind_ == Kind::Ramified ? (f + 1) / 2 : f;
  int64_t ma = ipow(p_, fa);
  return make(static_cast<int64_t>(key % ma), static_cast<int64_t>(key / ma));
}

bool QuadraticLocalAlgebra::key_is_unit(uint64_t key, int f) const {
  if (f == 0) return true;
  int fa = kind_ == Kind::Ramified ? (f + 1) / 2 : f;
  uint64_t ma = static_cast<uint64_t>(ipow(p_, fa));
  uint64_t A = key % ma, B = key / ma;
  uint64_t p = static_cast<uint64_t>(p_);
  switch (kind_) {
    case Kind::Inert:
      return A % p != 0 || B % p != 0;
    case Kind::Ramified:
      return A % p != 0;
    case Kind::Split:
      return A % p != 0 && B % p != 0;
  }
  return false;
}

uint64_t QuadraticLocalAlgebra::unit_group_order(int f) const {
  if (f == 0) return 1;
  uint64_t p = static_cast<uint64_t>(p_);
  uint64_t pf1 = 1;
  for (int i = 1; i < f; ++i) pf1 *= p;
  switch (kind_) {
    case Kind::Inert:
      return pf1 * pf1 * (p * p - 1);
    case Kind::Ramified:
      return (p - 1) * pf1;
    case Kind::Split:
      return (p - 1) * pf1 * (p - 1) * pf1;
  }
  return 0;
}

UnitEnumeration::UnitEnumeration(const QuadraticLocalAlgebra& alg, int f) : alg_(alg), f_(f) {
  if (f < 0 || f > alg.precision()) throw std::invalid_argument("enumerate_units: need 0 <= f <= precision");
  uint64_t n = alg.class_count(f);
  keys_.reserve(alg.unit_group_order(f));
  for (uint64_t k = 0; k < n; ++k)
    if (alg.key_is_unit(k, f)) keys_.push_back(k);
}

std::string dump_json(const QuadraticLocalAlgebra& alg, const RingElt& x) {
  nlohmann::json j;
  j["kind"] = kind_name(alg.kind());
  j["p"] = alg.p();
  j["D"] = alg.D();
  j["a"] = std::to_string(x.a);
  j["b"] = std::to_string(x.b);
  j["valuation"] = x.shift;
  j["relative_precision"] = x.prec;
  return j.dump();
}

}  // namespace acrn
