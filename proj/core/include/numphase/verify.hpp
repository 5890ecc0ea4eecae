#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "numphase/fock.hpp"

namespace numphase {

struct CheckResult {
  std::string name;
  bool pass = false;
  double max_error = 0.0;
  double tolerance = 0.0;
};

struct VerifyOptions {
  int dim = 16;
  std::uint64_t seed = 1;
  int random_states = 10;
  // Added to the random corpus of the exact checks when present.
  std::optional<DensityMatrix> extra_state;
  // Flips the sign of the largest entry (and its mirror) of the first corpus
  // state after it is recorded as the reference. The round-trip check must fail.
  bool inject_corruption = false;
};

// Runs the invariant suite: marginals, uniqueness round trip, ladder identities,
// Weyl duality, Husimi identity, Wigner vacuum value, inverse Cahill-Glauber map,
// both number-phase bridges, and the n = 0 positivity of coherent phase states.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

bool all_passed(const std::vector<CheckResult>& results);

// {"check": {"pass": bool, "max_error": x, "tolerance": t}, ...}
std::string verification_report_json(const std::vector<CheckResult>& results);

}  // namespace numphase
