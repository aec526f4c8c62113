#include "mtype/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mtype/neumaier.hpp"

namespace mtype {

namespace {

void require_same_index_space(const MTypeApprox& p, const Target& t) {
  if (p.counts.size() != t.n()) {
    throw std::invalid_argument("approximation and target cover different index spaces");
  }
}

}  // namespace

double variational_distance(const MTypeApprox& p, const Target& t) {
  require_same_index_space(p, t);
  const double M = static_cast<double>(p.M);
  NeumaierSum sum;
  for (std::size_t i = 0; i < t.n(); ++i) {
    sum.add(std::abs(t.probs[i] - static_cast<double>(p.counts[i]) / M));
  }
  sum.add(t.tail_mass);
  return sum.value();
}

DivergenceValue informational_divergence(const MTypeApprox& p, const Target& t) {
  require_same_index_space(p, t);
  const double M = static_cast<double>(p.M);
  NeumaierSum sum;
  for (std::size_t i = 0; i < t.n(); ++i) {
    if (p.counts[i] == 0) continue;  // 0 * ln 0 contributes nothing
    const double pi = static_cast<double>(p.counts[i]) / M;
    sum.add(pi * std::log(pi / t.probs[i]));
  }
  return DivergenceValue{sum.value()};
}

DivergenceValue reverse_divergence(const Target& t, const MTypeApprox& p) {
  require_same_index_space(p, t);
  if (t.tail_mass > 0.0) {
    // The target has mass the finite approximation cannot cover.
    return DivergenceValue{std::numeric_limits<double>::infinity()};
  }
  const double M = static_cast<double>(p.M);
  NeumaierSum sum;
  for (std::size_t i = 0; i < t.n(); ++i) {
    if (p.counts[i] == 0) {
      return DivergenceValue{std::numeric_limits<double>::infinity()};
    }
    const double pi = static_cast<double>(p.counts[i]) / M;
    sum.add(t.probs[i] * std::log(t.probs[i] / pi));
  }
  return DivergenceValue{sum.value()};
}

double pinsker_floor(const MTypeApprox& p, const Target& t) {
  return std::sqrt(2.0 * informational_divergence(p, t).nats);
}

double reverse_pinsker_bound(const MTypeApprox& p, const Target& t) {
  require_same_index_space(p, t);
  const double M = static_cast<double>(p.M);
  double r = 1.0;
  for (std::size_t i = 0; i < t.n(); ++i) {
    if (p.counts[i] == 0) continue;
    r = std::max(r, static_cast<double>(p.counts[i]) / M / t.probs[i]);
  }
  // r ln r / (r - 1) tends to 1 as r -> 1; return the limit exactly there.
  const double factor = (r == 1.0) ? 1.0 : r * std::log(r) / (r - 1.0);
  return 0.5 * factor * variational_distance(p, t);
}

double chi_square(const MTypeApprox& p, const Target& t) {
  require_same_index_space(p, t);
  const double M = static_cast<double>(p.M);
  NeumaierSum sum;
  for (std::size_t i = 0; i < t.n(); ++i) {
    const double diff = static_cast<double>(p.counts[i]) / M - t.probs[i];
    sum.add(diff * diff / t.probs[i]);
  }
  // The approximation is zero on the tail, so each tail term (0 - t_i)^2 / t_i
  // collapses to t_i and the whole tail contributes its mass.
  sum.add(t.tail_mass);
  return sum.value();
}

}  // namespace mtype
