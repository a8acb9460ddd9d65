#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "acrn/chargroup.hpp"
#include "acrn/quadring.hpp"

namespace acrn {

// Cyclic factor orders of the conjugation eigenspaces of
// Q_k = (1 + pi O) / (1 + pi^k O), largest first.
struct QkStructure {
  int k = 0;
  std::vector<int64_t> plus_orders;
  std::vector<int64_t> minus_orders;
};

// Brute-force enumeration of Q_k; cached per (algebra, k). Inert or ramified only.
QkStructure qk_structure(const QuadraticLocalAlgebra& alg, int k);

// Conductor exponent of the local component at p of a level-n tower character.
int conductor_of_level(Kind kind, int n, int j);

// Order of the decomposition group D_n.
int64_t decomposition_group_order(Kind kind, int64_t p, int n, int j);

// Number of distinct local characters of exact level n (one per seed).
int64_t rho_count(int64_t p, int n, int j);

struct GaloisCharLocal {
  UnitCharacter rho;
  int n = 0;
  int j = 0;
  int conductor = 0;
  int64_t order = 1;
};

// Local component at p of a level-n character of the anticyclotomic tower:
// trivial on pi, on the plus eigenspace and on Z_p^x, of exact order p^(n-j).
// seed in [0, rho_count) picks the faithful character of D_n.
GaloisCharLocal build_rho(const QuadraticLocalAlgebra& alg, int n, int j, int64_t seed);

std::string to_json(const QkStructure& q, const QuadraticLocalAlgebra& alg);

}  // namespace acrn
