#pragma once

#include <utility>

#include "mtype/approx.hpp"
#include "mtype/target.hpp"

namespace mtype {

// Marginal cost, in nats, of raising a count on an entry of probability t_i from
// k-1 to k in the divergence objective: k ln k - (k-1) ln(k-1) + ln(1/t_i), with
// the k = 1 convention 0 ln 0 = 0.  Strictly increasing in k, strictly decreasing
// in t_i, and at least ln(k-1) for k > 1.
double increment_cost(double t_i, long long k);

// Variational-distance-optimal M-type approximation via largest remainders:
// floor M*t_i to get a pre-approximation, then hand the L leftover units to the
// L largest flooring errors, smallest index first on ties.
//
// Also accepts sub-probability targets (tail_mass carrying the missing mass), in
// which case entries may absorb several leftover units.
MTypeApprox quantize_vd(const Target& t, long long M);

// Divergence-optimal M-type approximation: M greedy unit increments, each to the
// entry whose next increment is cheapest, smallest index first on ties.  The
// returned trace records the increment order for prefix reconstruction.
std::pair<MTypeApprox, IncrementTrace> quantize_id(const Target& t, long long M);

// Allocation after the first m steps of a trace: the optimal m-type approximation.
MTypeApprox prefix_allocation(const IncrementTrace& trace, long long m);

// Exhaustive minimum over every allocation of M units to the target's prefix.
// Refuses instances with more than a million candidate allocations.  Ties keep
// the lexicographically largest allocation so results are reproducible.
std::pair<MTypeApprox, double> oracle_min(const Target& t, long long M, Criterion criterion);

}  // namespace mtype
