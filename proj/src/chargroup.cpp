#include "acrn/chargroup.hpp"

#include <algorithm>
#include <json.hpp>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "acrn/arith.hpp"
#include "acrn/error.hpp"

namespace acrn {

namespace {

uint64_t pow_label(uint64_t x, int64_t e, uint64_t identity, const GroupMul& mul) {
  uint64_t r = identity;
  while (e > 0) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

}  // namespace

std::vector<CyclicFactor> decompose_q_group(const std::vector<uint64_t>& members, int64_t q, const GroupMul& mul,
                                            uint64_t identity) {
  std::unordered_map<uint64_t, std::size_t> pos;
  std::vector<uint64_t> span{identity};
  std::vector<std::vector<int64_t>> coords{{}};
  pos.emplace(identity, 0);
  std::vector<CyclicFactor> out;

  auto in_span = [&](uint64_t x) { return pos.count(x) > 0; };

  while (span.size() < members.size()) {
    uint64_t best = identity;
    int64_t best_e = 0;
    for (uint64_t h : members) {
      if (in_span(h)) continue;
      int64_t e = 1;
      uint64_t y = h;
      while (!in_span(y)) {
        y = pow_label(y, q, identity, mul);
        e *= q;
        if (e > static_cast<int64_t>(members.size()))
          throw InvariantBreach("decompose_q_group: member set is not a q-group");
      }
      if (e > best_e) {
        best_e = e;
        best = h;
      }
    }
    if (best_e == 0) throw InvariantBreach("decompose_q_group: no element outside the span");

    // h^e lies in the span; every coordinate of it is divisible by e, so
    // dividing them out gives a complement generator of exact order e.
    const auto& c = coords[pos.at(pow_label(best, best_e, identity, mul))];
    uint64_t h = best;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] % best_e != 0) throw InvariantBreach("decompose_q_group: lift failed");
      int64_t k = (c[i] / best_e) % out[i].order;
      h = mul(h, pow_label(out[i].generator, (out[i].order - k) % out[i].order, identity, mul));
    }
    if (pow_label(h, best_e, identity, mul) != identity)
      throw InvariantBreach("decompose_q_group: corrected generator has wrong order");

    std::size_t old = span.size();
    for (auto& v : coords) v.push_back(0);
    uint64_t hk = h;
    for (int64_t k = 1; k < best_e; ++k) {
      for (std::size_t s = 0; s < old; ++s) {
        uint64_t z = mul(span[s], hk);
        if (!pos.emplace(z, span.size()).second)
          throw InvariantBreach("decompose_q_group: generators are not independent");
        span.push_back(z);
        auto v = coords[s];
        v.back() = k;
        coords.push_back(std::move(v));
      }
      hk = mul(hk, h);
    }
    out.push_back({h, best_e});
  }
  if (span.size() != members.size()) throw InvariantBreach("decompose_q_group: span exceeds member set");
  return out;
}

// ---------------------------------------------------------------------------

std::shared_ptr<const UnitGroup> UnitGroup::build(const QuadraticLocalAlgebra& alg, int f) {
  return std::shared_ptr<const UnitGroup>(new UnitGroup(alg, f));
}

std::shared_ptr<const UnitGroup> UnitGroup::get(const QuadraticLocalAlgebra& alg, int f) {
  using Key = std::tuple<int64_t, int, int64_t, int, int>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const UnitGroup>> cache;
  Key key{alg.p(), static_cast<int>(alg.kind()), alg.D(), alg.precision(), f};
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto g = build(alg, f);
  std::lock_guard lock(mu);
  return cache.emplace(key, g).first->second;
}

UnitGroup::UnitGroup(const QuadraticLocalAlgebra& alg, int f) : alg_(alg), f_(f), units_(alg, f) {
  const std::size_t n = units_.size();
  if (n != alg.unit_group_order(f)) throw InvariantBreach("unit enumeration disagrees with the closed order formula");
  key_to_index_.assign(alg.class_count(f), -1);
  for (std::size_t i = 0; i < n; ++i) key_to_index_[units_.key(i)] = static_cast<int32_t>(i);
  identity_ = index_of_key(alg.class_key(alg.one(), f)).value();

  std::vector<RingElt> elems(n);
  for (std::size_t i = 0; i < n; ++i) elems[i] = units_[i];
  GroupMul mul = [&](uint64_t i, uint64_t j) -> uint64_t {
    return static_cast<uint64_t>(key_to_index_[alg_.class_key(alg_.mul(elems[i], elems[j]), f_)]);
  };

  // Sylow parts, each decomposed greedily.
  std::vector<std::pair<int64_t, std::vector<CyclicFactor>>> parts;
  for (auto [q, a] : factorize(static_cast<int64_t>(n))) {
    int64_t cofactor = static_cast<int64_t>(n) / ipow(q, a);
    std::vector<char> seen(n, 0);
    std::vector<uint64_t> members;
    for (std::size_t i = 0; i < n; ++i) {
      uint64_t y = pow_label(i, cofactor, identity_, mul);
      if (!seen[y]) {
        seen[y] = 1;
        members.push_back(y);
      }
    }
    std::sort(members.begin(), members.end());
    parts.emplace_back(q, decompose_q_group(members, q, mul, identity_));
  }

  // Prime-to-p factors merged into invariant factors; p-factors kept separate.
  std::vector<CyclicFactor> tame, wild;
  for (auto& [q, fs] : parts) {
    if (q == alg.p()) {
      wild = fs;
      continue;
    }
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (i >= tame.size()) tame.push_back({identity_, 1});
      tame[i].generator = mul(tame[i].generator, fs[i].generator);
      tame[i].order *= fs[i].order;
    }
  }
  for (auto& c : tame) {
    gens_.push_back(elems[c.generator]);
    orders_.push_back(c.order);
  }
  n_prime_to_p_ = tame.size();
  for (auto& c : wild) {
    gens_.push_back(elems[c.generator]);
    orders_.push_back(c.order);
  }

  // Discrete logs: walk every exponent vector and demand a bijection.
  const std::size_t r = gens_.size();
  std::vector<uint64_t> walk{identity_};
  for (std::size_t g = 0; g < r; ++g) {
    uint64_t gi = static_cast<uint64_t>(index_of(gens_[g]));
    std::size_t old = walk.size();
    uint64_t step = gi;
    for (int64_t k = 1; k < orders_[g]; ++k) {
      for (std::size_t s = 0; s < old; ++s) walk.push_back(mul(walk[s], step));
      step = mul(step, gi);
    }
  }
  if (walk.size() != n) throw InvariantBreach("basis orders do not multiply to the group order");
  dlog_.assign(n * r, -1);
  std::vector<char> hit(n, 0);
  for (std::size_t pos = 0; pos < n; ++pos) {
    uint64_t x = walk[pos];
    if (hit[x]) throw InvariantBreach("basis is not independent");
    hit[x] = 1;
    std::size_t rest = pos;
    for (std::size_t g = 0; g < r; ++g) {
      dlog_[x * r + g] = static_cast<int32_t>(rest % orders_[g]);
      rest /= orders_[g];
    }
  }

  // Depth in the principal-unit filtration.
  depth_.assign(n, 0);
  std::vector<uint64_t> one_keys(f + 1);
  for (int k = 0; k <= f; ++k) one_keys[k] = alg.class_key(alg.one(), k);
  for (std::size_t i = 0; i < n; ++i) {
    int d = 0;
    for (int k = 1; k <= f; ++k) {
      if (alg.class_key(elems[i], k) != one_keys[k]) break;
      d = k;
    }
    depth_[i] = static_cast<int8_t>(d);
  }
  filt_.resize(std::max(f, 1));
  for (int k = 1; k < f; ++k) {
    std::vector<uint64_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (depth_[i] >= k) members.push_back(i);
    for (auto& c : decompose_q_group(members, alg.p(), mul, identity_)) {
      auto e = exponents(c.generator);
      filt_[k].emplace_back(e.begin(), e.end());
    }
  }
}

std::optional<std::size_t> UnitGroup::index_of_key(uint64_t key) const {
  if (key >= key_to_index_.size() || key_to_index_[key] < 0) return std::nullopt;
  return static_cast<std::size_t>(key_to_index_[key]);
}

std::size_t UnitGroup::index_of(const RingElt& unit) const {
  if (!alg_.is_unit(unit)) throw std::invalid_argument("index_of: not a unit");
  auto i = index_of_key(alg_.class_key(unit, f_));
  if (!i) throw InvariantBreach("discrete-log lookup failed (stale basis)");
  return *i;
}

std::size_t UnitGroup::mul_index(std::size_t i, std::size_t j) const {
  return index_of(alg_.mul(units_[i], units_[j]));
}

std::vector<int64_t> UnitGroup::dlog(const RingElt& unit) const {
  auto e = exponents(index_of(unit));
  return {e.begin(), e.end()};
}

RingElt UnitGroup::element(std::span<const int64_t> exps) const {
  if (exps.size() != gens_.size()) throw std::invalid_argument("element: exponent vector has wrong length");
  RingElt x = alg_.one();
  for (std::size_t g = 0; g < gens_.size(); ++g) x = alg_.mul(x, alg_.pow(gens_[g], mod(exps[g], orders_[g])));
  return x;
}

// ---------------------------------------------------------------------------

UnitCharacter::UnitCharacter(std::shared_ptr<const UnitGroup> group, std::vector<QmodZ> values, QmodZ at_uniformizer)
    : group_(std::move(group)), values_(std::move(values)), at_pi_(at_uniformizer) {
  const auto& ord = group_->orders();
  if (values_.size() != ord.size()) throw std::invalid_argument("UnitCharacter: one value per generator required");
  for (std::size_t g = 0; g < ord.size(); ++g)
    if (!(values_[g] * ord[g]).is_zero())
      throw std::invalid_argument("UnitCharacter: value order does not divide generator order");

  auto trivial_on = [&](const std::vector<int64_t>& e) {
    QmodZ s;
    for (std::size_t g = 0; g < e.size(); ++g) s += values_[g] * e[g];
    return s.is_zero();
  };
  if (std::all_of(values_.begin(), values_.end(), [](const QmodZ& v) { return v.is_zero(); })) {
    conductor_ = 0;
    return;
  }
  const int f = group_->level();
  conductor_ = f;
  for (int k = 1; k < f; ++k) {
    const auto& gens = group_->filtration_generators(k);
    if (std::all_of(gens.begin(), gens.end(), trivial_on)) {
      conductor_ = k;
      break;
    }
  }
}

UnitCharacter UnitCharacter::trivial(const QuadraticLocalAlgebra& alg) { return {UnitGroup::get(alg, 0), {}}; }

int64_t UnitCharacter::unit_order() const {
  int64_t o = 1;
  for (auto& v : values_) o = std::lcm(o, v.order());
  return o;
}

QmodZ UnitCharacter::on_index(std::size_t i) const {
  auto e = group_->exponents(i);
  QmodZ s;
  for (std::size_t g = 0; g < e.size(); ++g) s += values_[g] * e[g];
  return s;
}

QmodZ UnitCharacter::operator()(const RingElt& x) const {
  const auto& alg = algebra();
  int v = alg.valuation(x);
  QmodZ s = at_pi_ * v;
  if (level() == 0) return s;
  RingElt u = alg.mul(x, alg.pi_power(-v));
  return s + on_index(group_->index_of(u));
}

UnitCharacter UnitCharacter::with_uniformizer_value(QmodZ v) const { return {group_, values_, v}; }

UnitCharacter UnitCharacter::with_value(std::size_t generator, QmodZ v) const {
  auto vals = values_;
  vals.at(generator) = v;
  return {group_, std::move(vals), at_pi_};
}

UnitCharacter UnitCharacter::lift(std::shared_ptr<const UnitGroup> finer) const {
  if (!(finer->algebra() == algebra()) || finer->level() < level())
    throw std::invalid_argument("lift: target must be a finer level of the same algebra");
  std::vector<QmodZ> vals;
  vals.reserve(finer->generators().size());
  for (const auto& g : finer->generators()) vals.push_back((*this)(g));
  return {std::move(finer), std::move(vals), at_pi_};
}

UnitCharacter UnitCharacter::operator*(const UnitCharacter& o) const {
  if (!(algebra() == o.algebra())) throw std::invalid_argument("product of characters on different algebras");
  if (level() < o.level()) return lift(o.group_) * o;
  if (o.level() < level()) return *this * o.lift(group_);
  std::vector<QmodZ> vals(values_.size());
  for (std::size_t g = 0; g < vals.size(); ++g) vals[g] = values_[g] + o.values_[g];
  return {group_, std::move(vals), at_pi_ + o.at_pi_};
}

UnitCharacter UnitCharacter::inverse() const {
  std::vector<QmodZ> vals(values_.size());
  for (std::size_t g = 0; g < vals.size(); ++g) vals[g] = -values_[g];
  return {group_, std::move(vals), -at_pi_};
}

bool UnitCharacter::operator==(const UnitCharacter& o) const {
  return group_ == o.group_ && values_ == o.values_ && at_pi_ == o.at_pi_;
}

// ---------------------------------------------------------------------------

Restriction parse_restriction(std::string_view s) {
  if (s == "none") return Restriction::None;
  if (s == "kappa" || s == "restricts-to-kappa") return Restriction::Kappa;
  if (s == "trivial" || s == "restricts-to-trivial") return Restriction::Trivial;
  throw std::invalid_argument("unknown restriction '" + std::string(s) + "'");
}

QmodZ kappa_on_units(const QuadraticLocalAlgebra& alg) {
  // the primitive root is a non-residue, so the ramified kappa sends it to -1
  return alg.kind() == Kind::Ramified ? QmodZ::half() : QmodZ::zero();
}

std::vector<QmodZ> kappa_uniformizer_values(const QuadraticLocalAlgebra& alg) {
  switch (alg.kind()) {
    case Kind::Inert:
      return {QmodZ::half()};
    case Kind::Split:
      return {QmodZ::zero()};
    case Kind::Ramified:
      // chi(pi)^2 = kappa(-D) = (-1/p)
      if (alg.p() % 4 == 1) return {QmodZ(0, 1), QmodZ(1, 2)};
      return {QmodZ(1, 4), QmodZ(3, 4)};
  }
  return {};
}

std::vector<UnitCharacter> all_characters(const QuadraticLocalAlgebra& alg, int f, Restriction constraint) {
  auto group = UnitGroup::get(alg, f);
  const auto& ord = group->orders();
  const std::size_t r = ord.size();
  // exponent vector of the image of the primitive root of Z_p^x
  std::vector<int64_t> zp_gen(r, 0);
  if (f > 0) zp_gen = group->dlog(alg.from_int(primitive_root_p2(alg.p())));
  QmodZ target = constraint == Restriction::Kappa ? kappa_on_units(alg) : QmodZ::zero();
  QmodZ at_pi = constraint == Restriction::Kappa ? kappa_uniformizer_values(alg).front() : QmodZ::zero();

  std::vector<UnitCharacter> out;
  std::vector<int64_t> k(r, 0);
  while (true) {
    std::vector<QmodZ> vals(r);
    QmodZ on_zp;
    for (std::size_t g = 0; g < r; ++g) {
      vals[g] = QmodZ(k[g], ord[g]);
      on_zp += vals[g] * zp_gen[g];
    }
    if (constraint == Restriction::None || on_zp == target) out.emplace_back(group, std::move(vals), at_pi);
    std::size_t g = r;
    while (g > 0) {
      --g;
      if (++k[g] < ord[g]) break;
      k[g] = 0;
      if (g == 0) return out;
    }
    if (r == 0) return out;
  }
}

int canonical_m(const QuadraticLocalAlgebra& alg) { return alg.kind() == Kind::Ramified ? 1 : 0; }

QmodZ additive_eval(const QuadraticLocalAlgebra& alg, AdditiveCharSpec psi, const RingElt& x) {
  return alg.fractional_trace(alg.mul(alg.pi_power(psi.m - canonical_m(alg)), x));
}

// ---------------------------------------------------------------------------

BaseCharacter::BaseCharacter(int64_t p, int level, QmodZ at_generator, QmodZ at_p)
    : p_(p), level_(level), g_(primitive_root_p2(p)), at_g_(at_generator), at_p_(at_p) {
  if (level < 0) throw std::invalid_argument("BaseCharacter: negative level");
  int64_t m = ipow(p, level);
  int64_t group_order = level == 0 ? 1 : (p - 1) * ipow(p, level - 1);
  if (!(at_g_ * group_order).is_zero())
    throw std::invalid_argument("BaseCharacter: value order does not divide the unit group order");
  dlog_.assign(m, -1);
  int64_t x = 1 % m;
  for (int64_t e = 0; e < group_order; ++e) {
    dlog_[x] = e;
    x = mul_mod(x, g_, m);
  }
  if (at_g_.is_zero()) {
    conductor_ = 0;
  } else {
    conductor_ = level;
    for (int k = 1; k < level; ++k)
      if ((at_g_ * ((p - 1) * ipow(p, k - 1))).is_zero()) {
        conductor_ = k;
        break;
      }
  }
}

QmodZ BaseCharacter::operator()(int64_t x) const {
  int v = vp(x, p_);
  int64_t u = x / ipow(p_, v);
  QmodZ s = at_p_ * v;
  if (level_ == 0) return s;
  return s + at_g_ * dlog_[mod(u, ipow(p_, level_))];
}

BaseCharacter kappa_base(const QuadraticLocalAlgebra& alg) {
  const int64_t p = alg.p();
  switch (alg.kind()) {
    case Kind::Split:
      return {p, 0, QmodZ::zero(), QmodZ::zero()};
    case Kind::Inert:
      return {p, 0, QmodZ::zero(), QmodZ::half()};
    case Kind::Ramified: {
      // kappa(D) = kappa(N(pi)) = 1, so kappa(p) = kappa(D_unit)
      int s = legendre(alg.D_unit(), p);
      return {p, 1, QmodZ::half(), s == 1 ? QmodZ::zero() : QmodZ::half()};
    }
  }
  throw std::logic_error("kappa_base: bad kind");
}

std::pair<BaseCharacter, BaseCharacter> split_components(const UnitCharacter& chi) {
  const auto& alg = chi.algebra();
  if (alg.kind() != Kind::Split) throw std::invalid_argument("split_components: algebra is not split");
  const int f = chi.level();
  int64_t g = primitive_root_p2(alg.p());
  QmodZ a1 = f == 0 ? QmodZ::zero() : chi(alg.make(g, 1));
  QmodZ a2 = f == 0 ? QmodZ::zero() : chi(alg.make(1, g));
  return {BaseCharacter(alg.p(), f, a1, chi.at_uniformizer()), BaseCharacter(alg.p(), f, a2, QmodZ::zero())};
}

std::string to_json(const UnitCharacter& chi) {
  const auto& alg = chi.algebra();
  nlohmann::json j;
  j["kind"] = kind_name(alg.kind());
  j["p"] = alg.p();
  j["D"] = alg.D();
  j["f"] = chi.conductor();
  j["level"] = chi.level();
  nlohmann::json gens = nlohmann::json::array();
  for (std::size_t g = 0; g < chi.values().size(); ++g) {
    auto [a, b] = alg.coordinates(chi.group().generators()[g]);
    gens.push_back({{"a", std::to_string(a)}, {"b", std::to_string(b)}, {"order", chi.group().orders()[g]}});
  }
  j["generators"] = gens;
  nlohmann::json vals = nlohmann::json::array();
  for (auto& v : chi.values()) vals.push_back(v.str());
  j["values"] = vals;
  j["value_at_uniformizer"] = chi.at_uniformizer().str();
  return j.dump();
}

}  // namespace acrn
