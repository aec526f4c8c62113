#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mtype/approx.hpp"
#include "mtype/metrics.hpp"
#include "mtype/target.hpp"

namespace mtype {

// ---- Closed-form guarantees -------------------------------------------------
// All divergence-valued bounds are in nats; conversion to bits is presentation.

// Coarse distance bound for a finite target of support size n: n / M.
double vd_bound_simple(std::size_t n, long long M);

// Distance bound for the variational quantizer.  Finite targets with n <= M get
// n / (2M); otherwise the bound uses the achieved support size k and the tail
// mass T_k beyond it: (k / 2M) * (1 + M*T_k / k)^2.
double vd_bound(std::size_t n, long long M, std::size_t k, double T_k);

// Distance guarantee for quantizing a k-entry sub-probability prefix with the
// full budget M (requires k <= M).  All three numbers bound the L1 error summed
// over the k entries themselves — the missing mass T_k is bookkeeping, not an
// extra distance term.
struct SubprobBound {
  double general = 0.0;                // k/(2M) + M*T_k^2/(2k), valid for every T_k
  std::optional<double> equality_case; // = T_k when T_k >= k/M; the error is then exactly T_k
  double loose = 0.0;                  // k/(2M) + T_k, a weaker consequence of the two cases
};
SubprobBound vd_subprob_bound(std::size_t k, long long M, double T_k);

// Coarse divergence bound for a finite target: 1 / (t_n * M) nats, t_n the
// smallest probability.
double id_bound_simple(double t_n, long long M);

// Divergence bound for the greedy quantizer.  Finite targets with n <= M get
// ln(1 + n / (2 t_n M^2)); otherwise the reverse-Pinsker form
// (1/2) (r ln r / (r-1)) (k/(2M) + 2 T_k) with r = 1/(1 - T_k) + e/t_1,
// where k is the achieved support size and T_k the tail mass beyond it.
double id_bound(std::size_t n, long long M, std::size_t k, double T_k, double t_n, double t_1);

// Convergence floor for the Yule-Simon family: no M-type approximation built on
// the first M entries can get closer than the tail T_M = M * B(M, rho+1), and a
// Stirling argument lower-bounds that tail by K(rho) / (M + rho)^rho with
// K(rho) = Gamma(rho+1) / (4 * sqrt(2) * sqrt(1 + rho)).
struct YuleFloor {
  double exact_tail = 0.0;  // T_M = M * B(M, rho+1)
  double floor = 0.0;       // K(rho) / (M + rho)^rho, always <= exact_tail
};
YuleFloor yule_simon_vd_floor(double rho, long long M);

// ---- Elementwise guarantees -------------------------------------------------

// Per-entry quality of an approximation: the worst absolute deviation against
// the 1/M guarantee of the variational quantizer, and the worst ratio p_i/t_i
// against the e/t_1 guarantee of the greedy quantizer.
struct ElementwiseReport {
  double max_abs_error = 0.0;   // max_i |t_i - p_i|
  double abs_threshold = 0.0;   // 1 / M
  bool within_abs = false;
  double max_ratio = 0.0;       // max over p_i > 0 of p_i / t_i
  double ratio_threshold = 0.0; // e / t_1
  bool within_ratio = false;
};
ElementwiseReport check_elementwise(const MTypeApprox& approx, const Target& t);

// ---- Combined report --------------------------------------------------------

enum class BoundDirection { upper, lower, equal };

// One evaluated guarantee.  Inapplicable bounds (precondition unmet) carry no
// value rather than a misleading number.
struct BoundEntry {
  std::string name;
  std::string metric;                  // which achieved number it constrains: distance_vd,
                                       // distance_id, divergence_vd, or divergence_id
  BoundDirection direction = BoundDirection::upper;
  bool applicable = false;
  std::optional<double> value;
  bool satisfied = false;              // meaningful only when applicable
};

// Every applicable closed-form guarantee evaluated against the achieved metrics
// of one variational-optimal and one divergence-optimal approximation.  The
// bounds that need the achieved support size k are certificates: they are
// computed after quantization, from the output they certify.
struct BoundReport {
  long long M = 0;
  double achieved_vd = 0.0;        // distance of the variational quantizer's output
  double achieved_id = 0.0;        // divergence (nats) of the greedy quantizer's output
  double vd_of_id = 0.0;           // distance of the greedy quantizer's output
  double id_of_vd = 0.0;           // divergence (nats) of the variational quantizer's output
  double achieved_vd_prefix = 0.0; // L1 error of the variational output over the materialized
                                   // entries only, tail mass not added (what the
                                   // sub-probability guarantees constrain)
  std::size_t k_vd = 0;
  std::size_t k_id = 0;
  std::vector<BoundEntry> entries;
};

// Evaluate all guarantees for a pair of approximations of t.  Pass the family's
// rho to include the Yule-Simon floor rows.
BoundReport evaluate_bounds(const Target& t, const MTypeApprox& vd_approx,
                            const MTypeApprox& id_approx,
                            std::optional<double> yule_rho = std::nullopt);

}  // namespace mtype
