#pragma once

#include <numbers>

#include "mtype/approx.hpp"
#include "mtype/target.hpp"

namespace mtype {

// A divergence measured in nats; convert to bits only for display.
struct DivergenceValue {
  double nats = 0.0;
  double bits() const { return nats / std::numbers::ln2; }
};

// L1 distance between the approximation and the target over the materialized
// prefix, plus the tail mass (the approximation is identically zero there).
// Symmetric in its two distributions; always in [0, 2].
double variational_distance(const MTypeApprox& p, const Target& t);

// Kullback-Leibler divergence D(p || t) with the expectation taken under the
// approximation p.  Finite whenever p's support lies inside t's, which both
// quantizers guarantee; the tail contributes nothing since p is zero there.
DivergenceValue informational_divergence(const MTypeApprox& p, const Target& t);

// Kullback-Leibler divergence D(t || p) with the expectation under the target.
// Returns +infinity when the target has mass where p has none — in particular
// for every truncated infinite-support target, which is why this direction is
// unusable as a quantization criterion there.
DivergenceValue reverse_divergence(const Target& t, const MTypeApprox& p);

// sqrt(2 * D(p||t)): by Pinsker's inequality an upper limit on the variational
// distance achievable by p, hence a floor on D for a given distance.
double pinsker_floor(const MTypeApprox& p, const Target& t);

// Distribution-dependent reverse Pinsker bound: with r = max_{p_i>0} p_i / t_i,
// D(p||t) <= (1/2) * (r ln r / (r - 1)) * ||p - t||_1.  The factor tends to 1
// as r -> 1, which is returned exactly in that case.
double reverse_pinsker_bound(const MTypeApprox& p, const Target& t);

// Pearson chi-square distance sum (p_i - t_i)^2 / t_i over t's support, tail
// included (each tail term degenerates to t_i).  Satisfies D <= ln(1 + chi2).
double chi_square(const MTypeApprox& p, const Target& t);

}  // namespace mtype
