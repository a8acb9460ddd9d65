#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace acrn {

enum class Status { Pass, Mismatch, Exhausted, Error };
std::string status_name(Status s);

struct Instance {
  std::string key;
  Status status = Status::Pass;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<Instance> instances;

  std::size_t count(Status s) const;
  bool ok() const { return count(Status::Pass) == instances.size(); }
  // 0 clean, 1 mismatch or error, 3 precision exhausted only
  int exit_code() const;
};

// Perturbations of the closed-form side of a suite, applied to every instance.
enum class MutationKind {
  None,
  LClass,            // l + 1
  UniformizerValue,  // chi(pi) + 1/2
  SqrtMinusD,        // chi(sqrt(-D)) + 1/2
  LegendreFlip,      // negate every Legendre-dependent value
  Conductor,         // f(chi) or f(phi) + delta
  LevelConductor,    // conductor of the tower character (or j) + delta
  RootSign,          // W(phi) negated
};
std::string mutation_name(MutationKind k);

struct Mutation {
  MutationKind kind = MutationKind::None;
  int delta = 1;
};

const std::vector<std::string>& suite_names();
std::vector<MutationKind> applicable_mutations(const std::string& suite);

SuiteReport verify_gauss(const Mutation& m = {});
SuiteReport verify_inert_sign(const Mutation& m = {});
SuiteReport verify_tower(const Mutation& m = {});
SuiteReport verify_twist(const Mutation& m = {});
SuiteReport verify_distribution(const Mutation& m = {});
SuiteReport run_suite(const std::string& suite, const Mutation& m = {});

struct MutationResult {
  std::string suite;
  Mutation mutation;
  std::size_t new_failures = 0;
  bool killed() const { return new_failures > 0; }
};

// `draws` mutants per suite from its catalogue, drawn with a seeded generator.
// A mutant is killed when some instance fails that passes in `baseline`.
std::vector<MutationResult> mutation_check(const SuiteReport& baseline, int draws, uint64_t seed);

std::string to_json(const SuiteReport& r);

}  // namespace acrn
