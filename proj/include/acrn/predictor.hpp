#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "acrn/rootnum.hpp"

namespace acrn {

using Rational = boost::multiprecision::cpp_rational;

// "num/den", always with an explicit denominator.
std::string rational_str(const Rational& r);

// p^(n-1)(p-1), and 1 at n = 0.
int64_t euler_phi_ppower(int64_t p, int n);

// (1 - W) / 2
int vanishing_order_parity(int W);

enum class Regime { Stable, BelowN0 };
std::string regime_name(Regime r);

struct EpsilonEntry {
  int n = 0;
  int epsilon = 0;
  int64_t phi_pn = 0;
  int64_t rank_delta = 0;
  Regime regime = Regime::Stable;
};

struct EpsilonSequence {
  TwistContext ctx;
  std::vector<EpsilonEntry> entries;
};

EpsilonSequence epsilon_sequence(const TwistContext& ctx, int n_from, int n_to);

// rank_base is the rank at level n_from - 1; returns ranks for n_from..n_to.
std::vector<int64_t> rank_sequence(const TwistContext& ctx, int64_t rank_base, int n_from, int n_to);

bool mw_finitely_generated(const TwistContext& ctx);

enum class CountMode { CaseMachine, Enumerated };
CountMode parse_count_mode(const std::string& s);

// Number of level-n characters rho (exact level, phi(p^n) of them) whose twist
// has root number +1 and -1.
struct LevelCounts {
  int n = 0;
  int64_t plus = 0;
  int64_t minus = 0;
  bool assumed = false;  // below the stability level
};

// Enumerated mode builds every local rho explicitly and needs n - j <= 2;
// beyond that it throws PrecisionExhausted.
LevelCounts level_counts(const TwistContext& ctx, int n, CountMode mode);

// Sum of phi(p^n) over 0 <= n <= N with n of the given parity, divided by p^N,
// by direct summation and by the closed form.
Rational parity_mass(int64_t p, int N, int parity);
Rational parity_mass_closed(int64_t p, int N, int parity);

// Subsequence limits of P+ and P- along even and odd N.
struct LimitRecord {
  Rational plus_even, plus_odd, minus_even, minus_odd;
  bool operator==(const LimitRecord&) const = default;
};

// The limits as tabulated for the context's kind, transcribed cell by cell.
LimitRecord published_table(const TwistContext& ctx);

struct DistributionSeries {
  TwistContext ctx;
  int N_max = 0;
  std::vector<LevelCounts> levels;
  std::vector<Rational> P_plus, P_minus;  // indexed by N
  std::optional<LimitRecord> limits;       // absent when N_max leaves too few stable terms
  bool matches_paper_table = false;
};

DistributionSeries distribution_series(const TwistContext& ctx, int N_max, CountMode mode);

// Limits from the exact series, assuming P_N = L + c / p^N along each parity
// class (inert) or along all N (otherwise) from the stability level on. The
// extrapolation is checked on two windows; a mismatch throws InvariantBreach.
std::optional<LimitRecord> classify_limits(const TwistContext& ctx, const std::vector<Rational>& P_plus,
                                           const std::vector<Rational>& P_minus);

// Asymptotic P+ model: (W+1)/2 split, 1/2 ramified, the mass of the levels with
// stable sign +1 when inert.
Rational plus_model(const TwistContext& ctx, int N);

}  // namespace acrn
