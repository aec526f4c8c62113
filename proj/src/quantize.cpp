#include "mtype/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mtype/errors.hpp"
#include "mtype/neumaier.hpp"

namespace mtype {

namespace {

// Snap window for flooring M * t_i: a product within this distance of an integer
// is treated as that integer, so targets that are exactly expressible at
// precision M leave no rest mass despite decimal-to-binary rounding.
constexpr double kSnapTolerance = 1e-9;

// Upper limit on exhaustive-search candidates and on the unit-increment count.
constexpr unsigned long long kOracleGuard = 1'000'000;
constexpr long long kIncrementGuard = 10'000'000;

long long snap_floor(double y) {
  const double nearest = std::round(y);
  if (std::abs(y - nearest) <= kSnapTolerance) return static_cast<long long>(nearest);
  return static_cast<long long>(std::floor(y));
}

void require_quantizable(const Target& t, long long M) {
  if (t.n() == 0) throw std::invalid_argument("cannot quantize an empty target");
  if (M < 1) throw std::invalid_argument("precision M must be at least 1");
}

}  // namespace

std::size_t count_support(const std::vector<long long>& counts) {
  return static_cast<std::size_t>(
      std::count_if(counts.begin(), counts.end(), [](long long c) { return c > 0; }));
}

std::string method_name(Method m) {
  switch (m) {
    case Method::vd: return "vd";
    case Method::id: return "id";
    case Method::oracle_vd: return "oracle-vd";
    case Method::oracle_id: return "oracle-id";
  }
  return "unknown";
}

double increment_cost(double t_i, long long k) {
  if (!(t_i > 0.0) || t_i > 1.0) throw std::domain_error("increment cost needs t_i in (0, 1]");
  if (k < 1) throw std::invalid_argument("increment cost needs k >= 1");
  if (k == 1) return std::log(1.0 / t_i);
  const double kd = static_cast<double>(k);
  return kd * std::log(kd) - (kd - 1.0) * std::log(kd - 1.0) + std::log(1.0 / t_i);
}

MTypeApprox quantize_vd(const Target& t, long long M) {
  require_quantizable(t, M);
  const std::size_t n = t.n();
  const double Md = static_cast<double>(M);

  MTypeApprox out;
  out.M = M;
  out.method = Method::vd;
  out.counts.assign(n, 0);

  long long assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    out.counts[i] = snap_floor(Md * t.probs[i]);
    assigned += out.counts[i];
  }
  long long rest = M - assigned;
  if (rest < 0) {
    // Cannot happen for (sub-)probability inputs: each snapped floor overshoots
    // the exact product by less than the snap window, and those add to < 1 unit.
    throw std::logic_error("rest mass went negative; target mass exceeds 1");
  }

  if (rest > 0) {
    std::vector<std::pair<double, std::size_t>> errors;
    errors.reserve(n);
    bool any_negative = false;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = t.probs[i] - static_cast<double>(out.counts[i]) / Md;
      any_negative = any_negative || e < 0.0;
      errors.emplace_back(e, i);
    }

    // Largest error wins a unit; equal errors fall to the smaller index.
    auto larger_error_first = [](const std::pair<double, std::size_t>& a,
                                 const std::pair<double, std::size_t>& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    };

    if (static_cast<unsigned long long>(rest) <= n && !any_negative) {
      // One unit each to the `rest` largest errors.  A partial selection is
      // enough: an incremented entry's error drops below every untouched one,
      // so no entry could earn a second unit before the rest mass runs out.
      std::nth_element(errors.begin(), errors.begin() + (rest - 1), errors.end(),
                       larger_error_first);
      for (long long j = 0; j < rest; ++j) ++out.counts[errors[j].second];
    } else {
      // General case (sub-probability prefixes, or snapped floors that overshot):
      // repeatedly push one unit onto the entry with the largest current error.
      auto heap_less = [](const std::pair<double, std::size_t>& a,
                          const std::pair<double, std::size_t>& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second > b.second;
      };
      std::priority_queue<std::pair<double, std::size_t>,
                          std::vector<std::pair<double, std::size_t>>, decltype(heap_less)>
          heap(heap_less, std::move(errors));
      for (long long j = 0; j < rest; ++j) {
        const auto [e, i] = heap.top();
        heap.pop();
        ++out.counts[i];
        heap.emplace(t.probs[i] - static_cast<double>(out.counts[i]) / Md, i);
      }
    }
  }

  out.support_size = count_support(out.counts);
  return out;
}

std::pair<MTypeApprox, IncrementTrace> quantize_id(const Target& t, long long M) {
  require_quantizable(t, M);
  if (M > kIncrementGuard) {
    throw GuardExceeded("precision exceeds the unit-increment guard");
  }
  const std::size_t n = t.n();
  // Only the first min(n, M) entries can ever receive a unit: an entry gets its
  // first unit only after every entry before it (at least as probable, and
  // cheaper or equal to open) already has one.
  const std::size_t cand = std::min(n, static_cast<std::size_t>(M));

  MTypeApprox out;
  out.M = M;
  out.method = Method::id;
  out.counts.assign(n, 0);
  IncrementTrace trace;
  trace.target_size = n;
  trace.order.reserve(static_cast<std::size_t>(M));
  trace.costs.reserve(static_cast<std::size_t>(M));

  // Min-heap keyed by (next increment cost, index): cheapest increment first,
  // smaller index on exact cost ties.
  std::priority_queue<std::pair<double, std::size_t>,
                      std::vector<std::pair<double, std::size_t>>,
                      std::greater<std::pair<double, std::size_t>>>
      heap;
  for (std::size_t i = 0; i < cand; ++i) {
    heap.emplace(increment_cost(t.probs[i], 1), i);
  }
  for (long long step = 0; step < M; ++step) {
    const auto [cost, i] = heap.top();
    heap.pop();
    ++out.counts[i];
    trace.order.push_back(i);
    trace.costs.push_back(cost);
    heap.emplace(increment_cost(t.probs[i], out.counts[i] + 1), i);
  }

  out.support_size = count_support(out.counts);
  return {std::move(out), std::move(trace)};
}

MTypeApprox prefix_allocation(const IncrementTrace& trace, long long m) {
  if (m < 1 || static_cast<unsigned long long>(m) > trace.order.size()) {
    throw std::out_of_range("trace prefix length must lie in [1, M]");
  }
  MTypeApprox out;
  out.M = m;
  out.method = Method::id;
  out.counts.assign(trace.target_size, 0);
  for (long long j = 0; j < m; ++j) ++out.counts[trace.order[static_cast<std::size_t>(j)]];
  out.support_size = count_support(out.counts);
  return out;
}

std::pair<MTypeApprox, double> oracle_min(const Target& t, long long M, Criterion criterion) {
  require_quantizable(t, M);
  const std::size_t n = t.n();

  // Number of candidate allocations is C(M + n - 1, n - 1); refuse large instances.
  unsigned long long combos = 1;
  for (std::size_t j = 1; j < n; ++j) {
    combos = combos * static_cast<unsigned long long>(M + static_cast<long long>(j)) / j;
    if (combos > kOracleGuard) {
      throw GuardExceeded("exhaustive search would visit more than 10^6 allocations");
    }
  }

  const double Md = static_cast<double>(M);
  auto evaluate = [&](const std::vector<long long>& c) {
    NeumaierSum sum;
    if (criterion == Criterion::vd) {
      for (std::size_t i = 0; i < n; ++i) {
        sum.add(std::abs(t.probs[i] - static_cast<double>(c[i]) / Md));
      }
      sum.add(t.tail_mass);
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        if (c[i] == 0) continue;
        const double pi = static_cast<double>(c[i]) / Md;
        sum.add(pi * std::log(pi / t.probs[i]));
      }
    }
    return sum.value();
  };

  std::vector<long long> cur(n, 0);
  std::vector<long long> best_counts;
  double best = std::numeric_limits<double>::infinity();

  // Assign each position from `left` downward, i.e. enumerate allocations in
  // lexicographically descending order; keeping only strict improvements makes
  // the reported minimizer the lexicographically largest one.
  std::function<void(std::size_t, long long)> descend = [&](std::size_t pos, long long left) {
    if (pos + 1 == n) {
      cur[pos] = left;
      const double value = evaluate(cur);
      if (value < best) {
        best = value;
        best_counts = cur;
      }
      return;
    }
    for (long long c = left; c >= 0; --c) {
      cur[pos] = c;
      descend(pos + 1, left - c);
    }
  };
  descend(0, M);

  MTypeApprox out;
  out.M = M;
  out.counts = std::move(best_counts);
  out.method = criterion == Criterion::vd ? Method::oracle_vd : Method::oracle_id;
  out.support_size = count_support(out.counts);
  return {std::move(out), best};
}

}  // namespace mtype
