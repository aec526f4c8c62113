#include "mtype/report.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "mtype/metrics.hpp"
#include "mtype/quantize.hpp"

namespace mtype {

std::string base_name(BaseUnit base) {
  return base == BaseUnit::bits ? "bits" : "nats";
}

double in_base(double nats, BaseUnit base) {
  return base == BaseUnit::bits ? nats / std::numbers::ln2 : nats;
}

std::string format_float(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::vector<long long> expand_counts(const MTypeApprox& approx, const Target& t) {
  if (approx.counts.size() != t.n()) {
    throw std::invalid_argument("approximation and target cover different index spaces");
  }
  std::vector<long long> out(t.original_size, 0);
  for (std::size_t i = 0; i < t.n(); ++i) {
    out[t.original_order[i]] = approx.counts[i];
  }
  return out;
}

nlohmann::ordered_json method_block(const MTypeApprox& approx, const Target& t, BaseUnit base) {
  const ElementwiseReport ew = check_elementwise(approx, t);
  nlohmann::ordered_json elementwise;
  elementwise["max_abs_error"] = ew.max_abs_error;
  elementwise["abs_threshold"] = ew.abs_threshold;
  elementwise["within_abs"] = ew.within_abs;
  elementwise["max_ratio"] = ew.max_ratio;
  elementwise["ratio_threshold"] = ew.ratio_threshold;
  elementwise["within_ratio"] = ew.within_ratio;

  nlohmann::ordered_json j;
  j["method"] = method_name(approx.method);
  j["counts"] = expand_counts(approx, t);
  j["support_size"] = approx.support_size;
  j["variational_distance"] = variational_distance(approx, t);
  j["divergence"] = in_base(informational_divergence(approx, t).nats, base);
  j["elementwise"] = elementwise;
  return j;
}

nlohmann::ordered_json bounds_block(const BoundReport& report, BaseUnit base) {
  nlohmann::ordered_json achieved;
  achieved["distance_vd"] = report.achieved_vd;
  achieved["distance_id"] = report.vd_of_id;
  achieved["distance_vd_prefix"] = report.achieved_vd_prefix;
  achieved["divergence_vd"] = in_base(report.id_of_vd, base);
  achieved["divergence_id"] = in_base(report.achieved_id, base);

  nlohmann::ordered_json supports;
  supports["k_vd"] = report.k_vd;
  supports["k_id"] = report.k_id;

  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const BoundEntry& entry : report.entries) {
    nlohmann::ordered_json e;
    e["name"] = entry.name;
    e["metric"] = entry.metric;
    switch (entry.direction) {
      case BoundDirection::upper: e["direction"] = "upper"; break;
      case BoundDirection::lower: e["direction"] = "lower"; break;
      case BoundDirection::equal: e["direction"] = "equal"; break;
    }
    e["applicable"] = entry.applicable;
    if (entry.applicable && entry.value.has_value()) {
      const bool divergence_metric = entry.metric.rfind("divergence", 0) == 0;
      e["value"] = divergence_metric ? in_base(*entry.value, base) : *entry.value;
      e["satisfied"] = entry.satisfied;
    } else {
      e["value"] = nullptr;
      e["satisfied"] = nullptr;
    }
    entries.push_back(std::move(e));
  }

  nlohmann::ordered_json j;
  j["M"] = report.M;
  j["base"] = base_name(base);
  j["achieved"] = achieved;
  j["support_sizes"] = supports;
  j["entries"] = entries;
  return j;
}

SweepRow sweep_row(const Target& t, long long M) {
  SweepRow row;
  row.M = M;
  const MTypeApprox vd = quantize_vd(t, M);
  const auto [id, trace] = quantize_id(t, M);
  row.k_vd = vd.support_size;
  row.k_id = id.support_size;
  row.vd_vd = variational_distance(vd, t);
  row.vd_id = variational_distance(id, t);
  row.id_vd_nats = informational_divergence(vd, t).nats;
  row.id_id_nats = informational_divergence(id, t).nats;
  return row;
}

std::vector<SweepRow> run_sweep(const Target& t, long long start, long long end, long long step) {
  if (start < 1 || end < start || step < 1) {
    throw std::invalid_argument("sweep range must satisfy 1 <= start <= end with step >= 1");
  }
  std::vector<long long> precisions;
  for (long long M = start; M <= end; M += step) precisions.push_back(M);

  std::vector<SweepRow> rows(precisions.size());
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min({precisions.size(), hw, std::size_t{8}});

  if (workers <= 1) {
    for (std::size_t i = 0; i < precisions.size(); ++i) rows[i] = sweep_row(t, precisions[i]);
    return rows;
  }

  // Rows are pure functions of (t, M); hand out indices and store by position so
  // the output order never depends on scheduling.
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::size_t i = next.fetch_add(1); i < precisions.size(); i = next.fetch_add(1)) {
          rows[i] = sweep_row(t, precisions[i]);
        }
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows, BaseUnit base) {
  std::string out = "M,k_vd,k_id,vd_vd,vd_id,D_vd,D_id\n";
  for (const SweepRow& row : rows) {
    out += std::to_string(row.M);
    out += ',';
    out += std::to_string(row.k_vd);
    out += ',';
    out += std::to_string(row.k_id);
    out += ',';
    out += format_float(row.vd_vd);
    out += ',';
    out += format_float(row.vd_id);
    out += ',';
    out += format_float(in_base(row.id_vd_nats, base));
    out += ',';
    out += format_float(in_base(row.id_id_nats, base));
    out += '\n';
  }
  return out;
}

}  // namespace mtype
