#include "acrn/localcft.hpp"

#include <json.hpp>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "acrn/arith.hpp"
#include "acrn/error.hpp"

namespace acrn {

namespace {

std::vector<int64_t> factor_orders(const QuadraticLocalAlgebra& alg, int k, const std::vector<uint64_t>& members,
                                   uint64_t one) {
  GroupMul mul = [&](uint64_t a, uint64_t b) {
    return alg.class_key(alg.mul(alg.from_key(a, k), alg.from_key(b, k)), k);
  };
  std::vector<int64_t> out;
  for (auto& c : decompose_q_group(members, alg.p(), mul, one)) out.push_back(c.order);
  return out;
}

QkStructure compute_qk(const QuadraticLocalAlgebra& alg, int k) {
  QkStructure q;
  q.k = k;
  if (k <= 1) return q;
  const RingElt one = alg.one();
  const RingElt pi = alg.uniformizer();
  const uint64_t one_key = alg.class_key(one, k);
  std::vector<uint64_t> plus, minus;
  const uint64_t total = alg.class_count(k - 1);
  for (uint64_t y = 0; y < total; ++y) {
    RingElt x = alg.add(one, alg.mul(pi, alg.from_key(y, k - 1)));
    RingElt c = alg.conj(x);
    uint64_t kx = alg.class_key(x, k);
    if (alg.class_key(c, k) == kx) plus.push_back(kx);
    if (alg.class_key(alg.mul(x, c), k) == one_key) minus.push_back(kx);
  }
  if (static_cast<uint64_t>(plus.size()) * minus.size() != total)
    throw InvariantBreach("Q_k is not the product of its eigenspaces");
  q.plus_orders = factor_orders(alg, k, plus, one_key);
  q.minus_orders = factor_orders(alg, k, minus, one_key);
  return q;
}

}  // namespace

QkStructure qk_structure(const QuadraticLocalAlgebra& alg, int k) {
  if (alg.kind() == Kind::Split) throw std::invalid_argument("qk_structure: split algebras have no conjugation eigenspaces");
  if (k < 1) throw std::invalid_argument("qk_structure: k must be positive");
  if (k > alg.precision()) throw PrecisionExhausted("qk_structure: depth exceeds the algebra precision");
  using Key = std::tuple<int64_t, int, int64_t, int, int>;
  static std::mutex mu;
  static std::map<Key, QkStructure> cache;
  Key key{alg.p(), static_cast<int>(alg.kind()), alg.D(), alg.precision(), k};
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  QkStructure q = compute_qk(alg, k);
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(q)).first->second;
}

int conductor_of_level(Kind kind, int n, int j) {
  if (kind == Kind::Split) throw std::invalid_argument("conductor_of_level: not defined for split p");
  if (n < 0 || j < 0) throw std::invalid_argument("conductor_of_level: n and j must be nonnegative");
  if (n <= j) return 0;
  return kind == Kind::Inert ? n - j + 1 : 2 * (n - j);
}

int64_t decomposition_group_order(Kind kind, int64_t p, int n, int j) {
  if (kind == Kind::Split) throw std::invalid_argument("decomposition_group_order: inert or ramified p only");
  return n > j ? ipow(p, n - j) : 1;
}

int64_t rho_count(int64_t p, int n, int j) {
  if (n <= j) return 1;
  return ipow(p, n - j - 1) * (p - 1);
}

GaloisCharLocal build_rho(const QuadraticLocalAlgebra& alg, int n, int j, int64_t seed) {
  const int64_t p = alg.p();
  if (alg.kind() == Kind::Split) throw std::invalid_argument("build_rho: split places carry no local tower character");
  if (seed < 0 || seed >= rho_count(p, n, j)) throw std::out_of_range("build_rho: seed out of range");
  if (n <= j) return {UnitCharacter::trivial(alg), n, j, 0, 1};

  const int F = conductor_of_level(alg.kind(), n, j);
  if (F > alg.precision()) throw PrecisionExhausted("build_rho: conductor exceeds the algebra precision");
  const int64_t pe = ipow(p, n - j);
  // seed-th positive integer prime to p
  const int64_t k = seed + seed / (p - 1) + 1;

  auto G = UnitGroup::get(alg, F);
  const RingElt one = alg.one();
  const uint64_t one_key = alg.class_key(one, F);

  // minus part of Q_F: cyclic of order p^(n-j); least-key generator
  std::optional<RingElt> z;
  for (std::size_t i = 0; i < G->order() && !z; ++i) {
    if (G->depth(i) < 1) continue;
    RingElt x = G->unit(i);
    if (alg.class_key(alg.mul(x, alg.conj(x)), F) != one_key) continue;
    if (alg.class_key(alg.pow(x, pe / p), F) != one_key) z = x;
  }
  // Fails exactly when K_v contains the p-th roots of unity (Q_3(sqrt(-3))).
  if (!z) throw std::domain_error("build_rho: minus part of Q_F is not cyclic of order p^(n-j)");
  std::unordered_map<uint64_t, int64_t> zlog;
  RingElt y = one;
  for (int64_t a = 0; a < pe; ++a) {
    zlog.emplace(alg.class_key(y, F), a);
    y = alg.mul(y, *z);
  }

  std::vector<QmodZ> values(G->generators().size());
  for (std::size_t g = G->prime_to_p_count(); g < values.size(); ++g) {
    const RingElt& b = G->generators()[g];
    auto it = zlog.find(alg.class_key(alg.mul(b, alg.inv(alg.conj(b))), F));
    if (it == zlog.end()) throw InvariantBreach("build_rho: b / conj(b) left the minus eigenspace");
    values[g] = QmodZ(mod(k * it->second, pe), pe);
  }
  UnitCharacter rho(G, std::move(values), QmodZ::zero());
  if (rho.conductor() != F || rho.unit_order() != pe)
    throw InvariantBreach("build_rho: character has the wrong conductor or order");
  return {std::move(rho), n, j, F, pe};
}

std::string to_json(const QkStructure& q, const QuadraticLocalAlgebra& alg) {
  nlohmann::json j;
  j["p"] = alg.p();
  j["kind"] = kind_name(alg.kind());
  j["k"] = q.k;
  j["plus"] = q.plus_orders;
  j["minus"] = q.minus_orders;
  return j.dump();
}

}  // namespace acrn
