#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "mtype/approx.hpp"
#include "mtype/bounds.hpp"
#include "mtype/target.hpp"

namespace mtype {

enum class BaseUnit { bits, nats };

std::string base_name(BaseUnit base);

// Convert a divergence from internal nats to the display base.
double in_base(double nats, BaseUnit base);

// Decimal rendering with enough digits to round-trip a double exactly.
std::string format_float(double value);

// Counts mapped back to the caller's original input order, stripped zeros restored.
std::vector<long long> expand_counts(const MTypeApprox& approx, const Target& t);

// JSON block describing one method's output and its quality metrics.
nlohmann::ordered_json method_block(const MTypeApprox& approx, const Target& t, BaseUnit base);

// JSON rendering of a bound report; divergence-valued numbers converted to `base`.
nlohmann::ordered_json bounds_block(const BoundReport& report, BaseUnit base);

// Both quantizers evaluated at one precision M.
struct SweepRow {
  long long M = 0;
  std::size_t k_vd = 0;
  std::size_t k_id = 0;
  double vd_vd = 0.0;       // distance of the variational quantizer's output
  double vd_id = 0.0;       // distance of the greedy quantizer's output
  double id_vd_nats = 0.0;  // divergence of the variational quantizer's output
  double id_id_nats = 0.0;  // divergence of the greedy quantizer's output
};

SweepRow sweep_row(const Target& t, long long M);

// Evaluate every precision in [start, end] at the given stride.  Rows are
// independent, so evaluation may fan out over threads; results always come back
// in ascending-M order regardless of completion order.
std::vector<SweepRow> run_sweep(const Target& t, long long start, long long end, long long step);

// Render rows as CSV under the fixed header M,k_vd,k_id,vd_vd,vd_id,D_vd,D_id.
std::string sweep_csv(const std::vector<SweepRow>& rows, BaseUnit base);

}  // namespace mtype
