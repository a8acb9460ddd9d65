// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "acrn/predictor.hpp"
#include "acrn/rootnum.hpp"
#include "acrn/verify.hpp"

using namespace acrn;

namespace {

constexpr double kTolerance = 1e-9;  // complex comparison in the gauss and twist suites
static_assert(kTolerance == kUnitTolerance);
constexpr double kGaussBudget = 60.0;
constexpr double kInertBudget = 60.0;
constexpr double kTwistBudget = 300.0;
constexpr int kMutationDraws = 10;
constexpr uint64_t kMutationSeed = 20261015;

struct Verdict {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Reports first few failing instances whose key starts with one of the prefixes.
Verdict instances_pass(const SuiteReport& r, const std::vector<std::string>& prefixes, std::size_t min_count) {
  std::size_t n = 0, bad = 0;
  std::string first;
  for (const auto& i : r.instances) {
    bool hit = prefixes.empty();
    for (const auto& p : prefixes) hit = hit || i.key.rfind(p, 0) == 0;
    if (!hit) continue;
    ++n;
    if (i.status != Status::Pass) {
      if (bad < 3) first += " [" + i.key + ": " + status_name(i.status) + " " + i.detail + "]";
      ++bad;
    }
  }
  std::string detail = std::to_string(n - bad) + "/" + std::to_string(n) + " instances pass" + first;
  if (n < min_count) return {false, detail + " (expected at least " + std::to_string(min_count) + ")"};
  return {bad == 0, detail};
}

// Per-level coefficient from the rank-growth theorem, written out case by case.
int expected_epsilon(const TwistContext& c, int n) {
  const int wt = (1 - c.W_phi) / 2;
  switch (c.kind) {
    case Kind::Split:
      return c.W_phi == 1 ? 0 : 2 * c.d;
    case Kind::Inert: {
      const bool jf_even = (c.j + c.f_phi) % 2 == 0;
      const bool n_matches = n % 2 == wt;
      return (jf_even == n_matches) ? 2 * c.d : 0;
    }
    case Kind::Ramified:
      return c.d;
  }
  return -1;
}

Verdict epsilon_table() {
  std::size_t checked = 0, rank_checked = 0;
  std::vector<TwistContext> grid;
  for (int64_t p : {3, 5, 7})
    for (int d : {1, 2})
      for (int W : {1, -1}) {
        TwistContext s;
        s.kind = Kind::Split;
        s.p = p;
        s.d = d;
        s.W_phi = W;
        grid.push_back(s);
        for (int j : {0, 1, 2})
          for (int f : {0, 1, 2}) {
            TwistContext c = s;
            c.kind = Kind::Inert;
            c.j = j;
            c.f_phi = f;
            grid.push_back(c);
            if (f == 0) continue;
            c.kind = Kind::Ramified;
            c.phi_pi = p % 4 == 1 ? QmodZ::zero() : QmodZ(1, 4);
            if (f > 1) c.l2 = 1;
            grid.push_back(c);
          }
      }
  for (const auto& c : grid) {
    const int n0 = c.stability_level();
    auto seq = epsilon_sequence(c, 1, n0 + 6);
    for (const auto& e : seq.entries) {
      if (e.n < n0) continue;
      ++checked;
      if (e.epsilon != expected_epsilon(c, e.n))
        return {false, "epsilon mismatch " + std::string(kind_name(c.kind)) + " p=" + std::to_string(c.p) +
                           " n=" + std::to_string(e.n)};
      if (e.rank_delta != e.epsilon * e.phi_pn) return {false, "rank delta differs from epsilon * phi(p^n)"};
      // epsilon is d times one minus the mean sign at this level
      if (c.kind != Kind::Split) {
        auto lc = level_counts(c, e.n, CountMode::CaseMachine);
        if (c.d * (lc.plus + lc.minus - (lc.plus - lc.minus)) != e.epsilon * (lc.plus + lc.minus))
          return {false, "epsilon disagrees with sign counts at n=" + std::to_string(e.n)};
      }
    }
    for (int64_t base : {0, 7}) {
      auto ranks = rank_sequence(c, base, 1, n0 + 6);
      int64_t prev = base;
      for (std::size_t i = 0; i < ranks.size(); ++i) {
        const int n = 1 + static_cast<int>(i);
        if ((ranks[i] - prev) % euler_phi_ppower(c.p, n) != 0)
          return {false, "rank congruence fails at n=" + std::to_string(n)};
        prev = ranks[i];
        ++rank_checked;
      }
    }
  }
  // parity alternation: inert epsilon must flip between consecutive stable levels
  for (int jf : {0, 1}) {
    TwistContext c;
    c.kind = Kind::Inert;
    c.p = 5;
    c.j = jf;
    c.f_phi = 2;
    auto seq = epsilon_sequence(c, c.stability_level(), c.stability_level() + 4);
    for (std::size_t i = 1; i < seq.entries.size(); ++i)
      if ((seq.entries[i].epsilon == 0) == (seq.entries[i - 1].epsilon == 0))
        return {false, "inert epsilon does not alternate"};
  }
  return {true, std::to_string(checked) + " epsilon values and " + std::to_string(rank_checked) +
                    " rank steps checked over " + std::to_string(grid.size()) + " contexts"};
}

}  // namespace

int main() {
  std::map<std::string, SuiteReport> reports;
  std::map<std::string, double> runtime;
  for (const auto& s : suite_names()) {
    auto t0 = std::chrono::steady_clock::now();
    reports.emplace(s, run_suite(s));
    runtime[s] = seconds_since(t0);
  }

  struct Row {
    int id;
    std::string name;
    std::function<Verdict()> check;
  };
  auto timed = [&](const std::string& suite, double budget, Verdict v) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "; %.2fs (budget %.0fs)", runtime[suite], budget);
    v.detail += buf;
    if (runtime[suite] > budget) v.pass = false;
    return v;
  };

  std::vector<Row> rows{
      {1, "ramified Gauss sums vs closed form",
       [&] { return timed("gauss", kGaussBudget, instances_pass(reports["gauss"], {}, 100)); }},
      {2, "inert sign law", [&] { return timed("inert-sign", kInertBudget, instances_pass(reports["inert-sign"], {}, 50)); }},
      {3, "tower structure and level conductors",
       [&] { return instances_pass(reports["tower"], {"qk ", "conductor "}, 35 + 98); }},
      {4, "twist quotient vs explicit characters",
       [&] { return timed("twist", kTwistBudget, instances_pass(reports["twist"], {}, 100)); }},
      {5, "ramified zero-sum at stable levels",
       [&] { return instances_pass(reports["distribution"], {"zero-sum ramified p=3", "zero-sum ramified p=5"}, 4); }},
      {6, "distribution series and limit table",
       [&] { return instances_pass(reports["distribution"], {"mass ", "series ", "table "}, 3 * 13 * 2 + 2 * 30); }},
      {7, "rank-growth coefficients and congruence", [&] { return epsilon_table(); }},
      {8, "negative controls",
       [&] {
         std::size_t total = 0, killed = 0;
         std::string survivors;
         auto t0 = std::chrono::steady_clock::now();
         for (const auto& s : suite_names())
           for (const auto& m : mutation_check(reports[s], kMutationDraws, kMutationSeed)) {
             ++total;
             if (m.killed()) ++killed;
             else survivors += " [" + s + " " + mutation_name(m.mutation.kind) + "]";
           }
         char buf[64];
         std::snprintf(buf, sizeof buf, "; %.2fs", seconds_since(t0));
         return Verdict{killed == total && total == kMutationDraws * suite_names().size(),
                        std::to_string(killed) + "/" + std::to_string(total) + " mutants killed" + survivors + buf};
       }},
  };

  std::printf("tolerance %.0e, mutation draws %d per suite, seed %llu\n", kTolerance, kMutationDraws,
              static_cast<unsigned long long>(kMutationSeed));
  int failures = 0;
  for (const auto& row : rows) {
    Verdict v = row.check();
    failures += !v.pass;
    std::printf("criterion %d %s: %s (%s)\n", row.id, v.pass ? "PASS" : "FAIL", row.name.c_str(), v.detail.c_str());
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(rows.size()) - failures, rows.size());
  return failures == 0 ? 0 : 1;
}
