#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "numphase/fock.hpp"
#include "numphase/states.hpp"

namespace numphase::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kUsageError = 2,
  kNumericError = 3,
};

struct RunConfig {
  int dim = 0;  // 0: take the dimension from the input file
  std::optional<int> grid_points;
  std::string state;
  std::optional<double> s;
  std::string in;
  std::string out = "-";
  std::string ref;
  std::string report;
  std::string ladder;
  std::vector<int> rows;
  std::optional<double> r_max;
  std::optional<int> n_r;
  std::optional<int> m_gamma;
  std::optional<double> tol;
  bool allow_tail = false;  // accept states whose truncated tail exceeds the policy
  std::uint64_t seed = 1;
  std::string path = "direct";
  bool inject_corruption = false;
};

// "number:n", "coherent:re,im", "cps:abs,phi", "thermal:nbar".
DensityMatrix parse_state_descriptor(std::string_view descriptor, Truncation t,
                                     const TailPolicy& policy = {});

// Streams stand in for "-" paths.
struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

int cmd_state(const RunConfig& cfg, Streams io);
int cmd_npw(const RunConfig& cfg, Streams io);
int cmd_reconstruct(const RunConfig& cfg, Streams io);
int cmd_cg(const RunConfig& cfg, Streams io);
int cmd_bridge(const RunConfig& cfg, Streams io);
int cmd_pbridge(const RunConfig& cfg, Streams io);
int cmd_verify(const RunConfig& cfg, Streams io);

// Parses argv and dispatches; never throws.
int run(int argc, char** argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace numphase::cli
