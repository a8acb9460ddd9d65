#include "acrn/verify.hpp"

#include <functional>
#include <json.hpp>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "acrn/arith.hpp"
#include "acrn/error.hpp"
#include "acrn/localcft.hpp"
#include "acrn/predictor.hpp"
#include "acrn/rootnum.hpp"

namespace acrn {

namespace {

constexpr int kPrecision = 8;
constexpr int kSeriesLength = 12;

bool is(const Mutation& m, MutationKind k) { return m.kind == k; }
int shift(const Mutation& m, MutationKind k) { return is(m, k) ? m.delta : 0; }

// Runs one comparison; the body returns an empty string on agreement.
void record(SuiteReport& r, std::string key, const std::function<std::string()>& body) {
  Instance in{std::move(key), Status::Pass, ""};
  try {
    in.detail = body();
    if (!in.detail.empty()) in.status = Status::Mismatch;
  } catch (const PrecisionExhausted& e) {
    in.status = Status::Exhausted;
    in.detail = e.what();
  } catch (const std::exception& e) {
    in.status = Status::Error;
    in.detail = e.what();
  }
  r.instances.push_back(std::move(in));
}

int sign_from(QmodZ q) {
  if (q.is_zero()) return 1;
  if (q == QmodZ::half()) return -1;
  throw std::domain_error("value " + q.str() + " is not a sign");
}

// Relative root number from the Gauss-sum oracle, required to be +1 or -1.
int oracle_sign(const UnitCharacter& chi) {
  auto w = relative_root_oracle(chi);
  if (!w.exact) throw std::domain_error("oracle value is not a fourth root of unity");
  return sign_from(*w.exact);
}

std::string char_key(std::size_t index, QmodZ at_pi) {
  return "char=" + std::to_string(index) + " pi=" + at_pi.str();
}

// Constrained characters of exact conductor f, each with every admissible chi(pi).
template <typename F>
void for_each_constrained(const QuadraticLocalAlgebra& alg, int level, bool exact_conductor, F&& fn) {
  auto chars = all_characters(alg, level, Restriction::Kappa);
  for (std::size_t i = 0; i < chars.size(); ++i) {
    if (exact_conductor && chars[i].conductor() != level) continue;
    for (QmodZ v : kappa_uniformizer_values(alg)) fn(i, chars[i].with_uniformizer_value(v));
  }
}

std::vector<int64_t> cyclic(int64_t p, std::initializer_list<int> exps) {
  std::vector<int64_t> out;
  for (int e : exps)
    if (e > 0) out.push_back(ipow(p, e));
  return out;
}

std::string orders_str(const std::vector<int64_t>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "]";
  return os.str();
}

// Twist quotient rebuilt from the measured data of an explicit pair, with the
// mutation applied to its inputs.
int mutated_twist(const QuadraticLocalAlgebra& alg, const ExplicitTwist& t, QmodZ phi_pi, const Mutation& m) {
  const int64_t p = alg.p();
  const int f_phi = t.f_phi + shift(m, MutationKind::Conductor);
  const int f_rho = t.f_rho + shift(m, MutationKind::LevelConductor);
  std::optional<int64_t> l1 = t.l1;
  if (l1 && is(m, MutationKind::LClass)) l1 = mod(*l1 + 1, p);
  if (is(m, MutationKind::UniformizerValue)) phi_pi += QmodZ::half();
  int q = 0;
  bool legendre_used = true;
  if (t.conductor_drop && alg.kind() == Kind::Ramified) {
    q = sign_from(ramified_closed_form(p, t.f_chi, l1.value_or(0), phi_pi) -
                  ramified_closed_form(p, f_phi, t.l2.value_or(0), phi_pi));
  } else {
    const int f_chi = t.conductor_drop ? t.f_chi : predicted_twist_conductor(f_phi, f_rho);
    auto lq = local_twist_quotient(alg.kind(), p, f_phi, f_rho, f_chi, l1, t.l2, phi_pi);
    q = lq.value;
    legendre_used = lq.uses_legendre;
  }
  if (is(m, MutationKind::LegendreFlip) && legendre_used) q = -q;
  return q;
}

TwistContext series_ctx(Kind kind, int64_t p, int j, int f_phi, int W) {
  TwistContext c;
  c.kind = kind;
  c.p = p;
  c.j = j;
  c.f_phi = f_phi;
  c.W_phi = W;
  if (kind == Kind::Ramified) {
    c.phi_pi = p % 4 == 1 ? QmodZ::zero() : QmodZ(1, 4);
    if (f_phi > 1) c.l2 = 1;
  }
  return c;
}

TwistContext mutate(TwistContext c, const Mutation& m) {
  c.f_phi += shift(m, MutationKind::Conductor);
  c.j += shift(m, MutationKind::LevelConductor);
  if (is(m, MutationKind::RootSign)) c.W_phi = -c.W_phi;
  if (is(m, MutationKind::LClass) && c.l2) c.l2 = mod(*c.l2 + 1, c.p);
  return c;
}

std::string ctx_key(const TwistContext& c) {
  std::ostringstream os;
  os << kind_name(c.kind) << " p=" << c.p << " j=" << c.j << " f=" << c.f_phi << " W=" << (c.W_phi > 0 ? "+1" : "-1");
  return os.str();
}

std::string limits_str(const LimitRecord& l) {
  return "P+even=" + rational_str(l.plus_even) + " P+odd=" + rational_str(l.plus_odd) +
         " P-even=" + rational_str(l.minus_even) + " P-odd=" + rational_str(l.minus_odd);
}

}  // namespace

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Mismatch:
      return "mismatch";
    case Status::Exhausted:
      return "precision-exhausted";
    case Status::Error:
      return "error";
  }
  return "?";
}

std::size_t SuiteReport::count(Status s) const {
  std::size_t c = 0;
  for (const auto& i : instances) c += i.status == s;
  return c;
}

int SuiteReport::exit_code() const {
  if (count(Status::Mismatch) || count(Status::Error)) return 1;
  if (count(Status::Exhausted)) return 3;
  return 0;
}

std::string mutation_name(MutationKind k) {
  switch (k) {
    case MutationKind::None:
      return "none";
    case MutationKind::LClass:
      return "l-class";
    case MutationKind::UniformizerValue:
      return "uniformizer-value";
    case MutationKind::SqrtMinusD:
      return "sqrt-minus-D-value";
    case MutationKind::LegendreFlip:
      return "legendre-flip";
    case MutationKind::Conductor:
      return "conductor";
    case MutationKind::LevelConductor:
      return "level-conductor";
    case MutationKind::RootSign:
      return "root-sign";
  }
  return "?";
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"gauss", "inert-sign", "tower", "twist", "distribution"};
  return names;
}

std::vector<MutationKind> applicable_mutations(const std::string& suite) {
  using M = MutationKind;
  if (suite == "gauss") return {M::LClass, M::UniformizerValue, M::LegendreFlip, M::Conductor};
  if (suite == "inert-sign") return {M::SqrtMinusD, M::Conductor};
  if (suite == "tower") return {M::Conductor, M::LevelConductor};
  if (suite == "twist") return {M::LClass, M::UniformizerValue, M::LegendreFlip, M::Conductor, M::LevelConductor};
  // l2 and phi(pi) only permute the signs within a level, so the counts cannot see them
  if (suite == "distribution") return {M::Conductor, M::LevelConductor, M::RootSign};
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

SuiteReport verify_gauss(const Mutation& m) {
  SuiteReport r{"gauss", {}};
  for (auto [p, D] : {std::pair{3, 3}, {3, 6}, {5, 5}, {7, 7}}) {
    auto alg = make_algebra(p, Kind::Ramified, D, kPrecision);
    for (int f : {1, 2, 4}) {
      for_each_constrained(alg, f, true, [&](std::size_t i, const UnitCharacter& chi) {
        std::string key = "p=" + std::to_string(p) + " D=" + std::to_string(D) + " f=" + std::to_string(f) + " " +
                          char_key(i, chi.at_uniformizer());
        record(r, key, [&]() -> std::string {
          auto closed = relative_root_ramified_closed(chi);
          std::optional<int64_t> l = closed.l;
          if (l && is(m, MutationKind::LClass)) l = *l + 1;
          QmodZ pi = chi.at_uniformizer() + (is(m, MutationKind::UniformizerValue) ? QmodZ::half() : QmodZ::zero());
          QmodZ value = ramified_closed_form(p, closed.f + shift(m, MutationKind::Conductor), l.value_or(0), pi);
          if (is(m, MutationKind::LegendreFlip)) value += QmodZ::half();
          auto w = relative_root_oracle(chi);
          if (!w.exact || *w.exact != value || std::abs(complexify(value) - w.approx) >= kUnitTolerance)
            return "closed " + value.root_str() + " oracle " + (w.exact ? w.exact->root_str() : std::string("non-root"));
          return "";
        });
      });
    }
  }
  return r;
}

SuiteReport verify_inert_sign(const Mutation& m) {
  SuiteReport r{"inert-sign", {}};
  for (auto [p, D] : {std::pair{3, 1}, {5, 2}}) {
    auto alg = make_algebra(p, Kind::Inert, D, kPrecision);
    for (int f = 1; f <= 3; ++f) {
      for_each_constrained(alg, f, true, [&](std::size_t i, const UnitCharacter& chi) {
        std::string key = "p=" + std::to_string(p) + " D=" + std::to_string(D) + " f=" + std::to_string(f) + " " +
                          char_key(i, chi.at_uniformizer());
        record(r, key, [&]() -> std::string {
          QmodZ at_root = chi(alg.omega()) + (is(m, MutationKind::SqrtMinusD) ? QmodZ::half() : QmodZ::zero());
          int closed = inert_sign_formula(chi.conductor() + shift(m, MutationKind::Conductor), at_root);
          if (m.kind == MutationKind::None && closed != relative_root_inert_sign(chi))
            throw InvariantBreach("inert sign formula disagrees with relative_root_inert_sign");
          int oracle = oracle_sign(chi);
          if (closed != oracle) return "closed " + std::to_string(closed) + " oracle " + std::to_string(oracle);
          return "";
        });
      });
    }
  }
  return r;
}

SuiteReport verify_tower(const Mutation& m) {
  SuiteReport r{"tower", {}};
  const int dk = shift(m, MutationKind::Conductor);
  for (auto [p, kind, D] : {std::tuple{3, Kind::Inert, 1}, {5, Kind::Inert, 2}, {7, Kind::Inert, 1},
                            {3, Kind::Ramified, 3}, {3, Kind::Ramified, 6}, {5, Kind::Ramified, 5},
                            {7, Kind::Ramified, 7}}) {
    auto alg = make_algebra(p, kind, D, kPrecision);
    for (int k = 1; k <= 5; ++k) {
      std::ostringstream key;
      key << "qk " << kind_name(kind) << " p=" << p << " D=" << D << " k=" << k;
      record(r, key.str(), [&]() -> std::string {
        auto q = qk_structure(alg, k);
        const int ke = k + dk;
        std::vector<int64_t> plus, minus;
        if (kind == Kind::Inert) {
          plus = minus = cyclic(p, {ke - 1});
        } else {
          const int h = ke / 2;
          plus = cyclic(p, {ke % 2 ? h : h - 1});
          minus = cyclic(p, {h});
        }
        if (q.plus_orders != plus || q.minus_orders != minus)
          return "plus " + orders_str(q.plus_orders) + " minus " + orders_str(q.minus_orders) + " expected plus " +
                 orders_str(plus) + " minus " + orders_str(minus);
        return "";
      });
    }
  }
  for (Kind kind : {Kind::Inert, Kind::Ramified}) {
    for (int n = 0; n <= 6; ++n) {
      for (int j = 0; j <= 6; ++j) {
        std::ostringstream key;
        key << "conductor " << kind_name(kind) << " n=" << n << " j=" << j;
        record(r, key.str(), [&]() -> std::string {
          int got = conductor_of_level(kind, n, j) + shift(m, MutationKind::LevelConductor);
          int want = n <= j ? 0 : kind == Kind::Inert ? n - j + 1 : 2 * (n - j);
          if (got != want) return "got " + std::to_string(got) + " expected " + std::to_string(want);
          return "";
        });
      }
    }
  }
  return r;
}

SuiteReport verify_twist(const Mutation& m) {
  SuiteReport r{"twist", {}};
  for (auto [p, kind, D] :
       {std::tuple{3, Kind::Inert, 1}, {5, Kind::Inert, 2}, {3, Kind::Ramified, 6}, {5, Kind::Ramified, 5}}) {
    auto alg = make_algebra(p, kind, D, kPrecision);
    std::map<std::pair<int, int64_t>, UnitCharacter> rhos;
    for (int n = 1; n <= 2; ++n)
      for (int64_t s = 0; s < rho_count(p, n, 0); ++s) rhos.emplace(std::pair{n, s}, build_rho(alg, n, 0, s).rho);
    for_each_constrained(alg, 3, false, [&](std::size_t i, const UnitCharacter& phi) {
      std::optional<int> phi_sign;
      for (const auto& [ns, rho] : rhos) {
        std::ostringstream key;
        key << kind_name(kind) << " p=" << p << " D=" << D << " n=" << ns.first << " seed=" << ns.second << " phi "
            << char_key(i, phi.at_uniformizer());
        record(r, key.str(), [&]() -> std::string {
          auto t = twist_quotient_explicit(phi, rho);
          int closed = mutated_twist(alg, t, phi.at_uniformizer(), m);
          if (m.kind == MutationKind::None && closed != t.quotient)
            throw InvariantBreach("rebuilt twist quotient disagrees with twist_quotient_explicit");
          if (!phi_sign) phi_sign = oracle_sign(phi);
          int oracle = oracle_sign(phi * rho) * *phi_sign;
          if (closed != oracle)
            return "branch " + t.branch + " closed " + std::to_string(closed) + " oracle " + std::to_string(oracle);
          return "";
        });
      }
    });
  }
  return r;
}

SuiteReport verify_distribution(const Mutation& m) {
  SuiteReport r{"distribution", {}};
  for (int64_t p : {3, 5, 7})
    for (int N = 0; N <= kSeriesLength; ++N)
      for (int par : {0, 1}) {
        std::string key = "mass p=" + std::to_string(p) + " N=" + std::to_string(N) + " parity=" + std::to_string(par);
        record(r, key, [&]() -> std::string {
          Rational direct = parity_mass(p, N, par), closed = parity_mass_closed(p, N, par);
          if (direct != closed) return "direct " + rational_str(direct) + " closed " + rational_str(closed);
          return "";
        });
      }

  std::vector<TwistContext> grid;
  for (int64_t p : {3, 5, 7}) {
    for (int W : {1, -1}) grid.push_back(series_ctx(Kind::Split, p, 0, 0, W));
    for (int jf : {0, 1})
      for (int W : {1, -1}) grid.push_back(series_ctx(Kind::Inert, p, jf, 2, W));
    for (int f : {1, 2})
      for (int W : {1, -1}) grid.push_back(series_ctx(Kind::Ramified, p, 0, f, W));
  }
  for (const auto& c : grid) {
    const TwistContext mc = mutate(c, m);
    std::optional<DistributionSeries> series;
    record(r, "series " + ctx_key(c), [&]() -> std::string {
      series = distribution_series(mc, kSeriesLength, CountMode::CaseMachine);
      std::optional<Rational> offset;
      for (int N = 0; N <= kSeriesLength; ++N) {
        if (series->P_plus[N] + series->P_minus[N] != 1) return "P+ + P- != 1 at N=" + std::to_string(N);
        if (N < c.stability_level()) continue;
        Rational pN(boost::multiprecision::pow(boost::multiprecision::cpp_int(c.p), N));
        Rational o = pN * (series->P_plus[N] - plus_model(c, N));
        if (!offset) offset = o;
        if (o != *offset) return "P+ leaves the partial-sum model at N=" + std::to_string(N);
      }
      return "";
    });
    record(r, "table " + ctx_key(c), [&]() -> std::string {
      if (!series) series = distribution_series(mc, kSeriesLength, CountMode::CaseMachine);
      auto limits = classify_limits(c, series->P_plus, series->P_minus);
      if (!limits) return "series too short to classify";
      auto table = published_table(c);
      if (!(*limits == table)) return "computed " + limits_str(*limits) + " table " + limits_str(table);
      return "";
    });
  }

  for (int64_t p : {3, 5})
    for (Kind kind : {Kind::Inert, Kind::Ramified})
      for (int j : {0, 1})
        for (int f : {1, 2})
          for (int W : {1, -1}) {
            const TwistContext c = series_ctx(kind, p, j, f, W);
            const TwistContext mc = mutate(c, m);
            for (int n = j + 1; n <= j + 2; ++n) {
              record(r, "enumerated " + ctx_key(c) + " n=" + std::to_string(n), [&]() -> std::string {
                auto a = level_counts(c, n, CountMode::Enumerated);
                auto b = level_counts(mc, n, CountMode::CaseMachine);
                if (a.plus != b.plus || a.minus != b.minus)
                  return "enumerated " + std::to_string(a.plus) + "/" + std::to_string(a.minus) + " case machine " +
                         std::to_string(b.plus) + "/" + std::to_string(b.minus);
                return "";
              });
              if (kind != Kind::Ramified || conductor_of_level(kind, n, j) <= f) continue;
              record(r, "zero-sum " + ctx_key(c) + " n=" + std::to_string(n), [&]() -> std::string {
                auto a = level_counts(c, n, CountMode::Enumerated);
                const int64_t half = euler_phi_ppower(p, n) / 2;
                if (a.plus != half || a.minus != half)
                  return "plus " + std::to_string(a.plus) + " minus " + std::to_string(a.minus);
                return "";
              });
            }
          }
  return r;
}

SuiteReport run_suite(const std::string& suite, const Mutation& m) {
  if (suite == "gauss") return verify_gauss(m);
  if (suite == "inert-sign") return verify_inert_sign(m);
  if (suite == "tower") return verify_tower(m);
  if (suite == "twist") return verify_twist(m);
  if (suite == "distribution") return verify_distribution(m);
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

std::vector<MutationResult> mutation_check(const SuiteReport& baseline, int draws, uint64_t seed) {
  const auto catalogue = applicable_mutations(baseline.suite);
  std::map<std::string, Status> base;
  for (const auto& i : baseline.instances) base[i.key] = i.status;
  std::mt19937_64 rng(seed);
  std::vector<MutationResult> out;
  for (int d = 0; d < draws; ++d) {
    Mutation m{catalogue[rng() % catalogue.size()], rng() % 2 ? 1 : -1};
    MutationResult res{baseline.suite, m, 0};
    for (const auto& i : run_suite(baseline.suite, m).instances) {
      auto it = base.find(i.key);
      if (i.status != Status::Pass && (it == base.end() || it->second == Status::Pass)) ++res.new_failures;
    }
    out.push_back(res);
  }
  return out;
}

std::string to_json(const SuiteReport& r) {
  nlohmann::json j;
  j["suite"] = r.suite;
  j["instances"] = nlohmann::json::array();
  for (const auto& i : r.instances)
    j["instances"].push_back({{"key", i.key}, {"status", status_name(i.status)}, {"detail", i.detail}});
  j["summary"] = {{"pass", r.count(Status::Pass)},
                  {"mismatch", r.count(Status::Mismatch)},
                  {"precision_exhausted", r.count(Status::Exhausted)},
                  {"error", r.count(Status::Error)}};
  j["exit_code"] = r.exit_code();
  return j.dump(2);
}

}  // namespace acrn
