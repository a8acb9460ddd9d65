#pragma once

#include <stdexcept>
#include <string>

namespace acrn {

// Raised when a computation needs more pi-adic digits (or a larger enumeration
// budget) than the algebra carries.
class PrecisionExhausted : public std::runtime_error {
 public:
  explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

// Internal consistency failure: stale discrete-log table, non-unit Gauss sum,
// basis search that did not produce a bijection.
class InvariantBreach : public std::logic_error {
 public:
  explicit InvariantBreach(const std::string& what) : std::logic_error(what) {}
};

}  // namespace acrn
