#pragma once

#include <string>

#include "json.hpp"
#include "mtype/report.hpp"
#include "mtype/target.hpp"

namespace mtype {

enum class Command { quantize, sweep, bounds, oracle };
enum class MethodChoice { vd, id, both };

// Everything one CLI invocation needs.
struct RunConfig {
  Command command = Command::quantize;
  std::string input_path;  // explicit probabilities file; mutually exclusive with family
  std::string family;      // family shorthand like yule-simon:0.2
  long long M = 0;         // single-precision commands
  long long M_start = 0;   // sweep range
  long long M_end = 0;
  long long M_step = 1;
  MethodChoice method = MethodChoice::both;
  BaseUnit base = BaseUnit::bits;
  bool normalize = false;
  std::string output_path;  // empty writes to stdout
};

// Load the configured target, materializing families deep enough for M_hint.
Target load_target(const RunConfig& cfg, long long M_hint);

// Quantize with the requested method(s); JSON report with metrics and bounds.
nlohmann::ordered_json cmd_quantize(const RunConfig& cfg);

// Evaluate a family over a precision range; CSV, one row per M.
std::string cmd_sweep(const RunConfig& cfg);

// Quantize with both methods and report every closed-form guarantee.
nlohmann::ordered_json cmd_bounds(const RunConfig& cfg);

// Compare algorithm output against the exhaustive minimum.
nlohmann::ordered_json cmd_oracle(const RunConfig& cfg);

// Parse argv, dispatch, write output.  Exit codes: 0 success, 2 parse failure,
// 3 invalid values, 4 file I/O failure, 5 guard refusal.
int run_cli(int argc, const char* const* argv);

}  // namespace mtype
