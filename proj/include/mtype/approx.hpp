#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace mtype {

// Which procedure produced an approximation.
enum class Method { vd, id, oracle_vd, oracle_id };

// Optimization criterion: variational distance or informational divergence.
enum class Criterion { vd, id };

// An M-type approximation of a target: probabilities counts[i] / M over the
// target's materialized prefix.  counts always sums to exactly M.
struct MTypeApprox {
  long long M = 0;
  std::vector<long long> counts;  // one entry per target prefix position
  Method method = Method::vd;
  std::size_t support_size = 0;   // number of positive counts
};

// The order in which the greedy divergence quantizer applied its unit increments,
// with the marginal cost paid at each step.  Every prefix of length m is itself
// the optimal m-type allocation, so one trace encodes all coarser precisions.
struct IncrementTrace {
  std::vector<std::size_t> order;  // target index chosen at each step; length M
  std::vector<double> costs;       // marginal cost (nats) of each step
  std::size_t target_size = 0;     // prefix length of the target it was built for
};

std::size_t count_support(const std::vector<long long>& counts);

std::string method_name(Method m);

}  // namespace mtype
