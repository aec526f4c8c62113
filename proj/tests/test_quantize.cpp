#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "mtype/errors.hpp"
#include "mtype/metrics.hpp"
#include "mtype/quantize.hpp"
#include "mtype/target.hpp"

using namespace mtype;

TEST_CASE("increment cost closed form and input validation") {
  CHECK(increment_cost(0.8, 1) == doctest::Approx(std::log(1.25)).epsilon(1e-15));
  CHECK(increment_cost(0.2, 1) == doctest::Approx(std::log(5.0)).epsilon(1e-15));
  CHECK(increment_cost(1.0, 1) == 0.0);
  CHECK(increment_cost(0.25, 2) ==
        doctest::Approx(2.0 * std::log(2.0) + std::log(4.0)).epsilon(1e-15));
  CHECK_THROWS_AS(increment_cost(0.0, 1), std::domain_error);
  CHECK_THROWS_AS(increment_cost(-0.5, 1), std::domain_error);
  CHECK_THROWS_AS(increment_cost(1.5, 1), std::domain_error);
  CHECK_THROWS_AS(increment_cost(0.5, 0), std::invalid_argument);
}

TEST_CASE("increment cost ties are exact in floating point when the math says so") {
  // Raising 0.8 from one to two units costs exactly as much as opening 0.2:
  // 2 ln 2 + ln(1/0.8) = ln 5 = ln(1/0.2).  Both sides evaluate through the same
  // expression shape, so the tie must hold bitwise, not just approximately.
  CHECK(increment_cost(0.8, 2) == increment_cost(0.2, 1));
}

TEST_CASE("increment cost grows in k, shrinks in t_i, and dominates ln(k-1)") {
  for (double t : {1.0, 0.5, 0.1, 1e-6}) {
    for (long long k = 1; k <= 50; ++k) {
      CHECK(increment_cost(t, k + 1) > increment_cost(t, k));
      if (k >= 2) CHECK(increment_cost(t, k) > std::log(static_cast<double>(k - 1)));
    }
  }
  CHECK(increment_cost(0.2, 1) > increment_cost(0.8, 1));
}

TEST_CASE("largest-remainder quantizer reproduces the four-entry worked example") {
  const Target t = make_target({0.97, 0.01, 0.01, 0.01}, false);
  const MTypeApprox a = quantize_vd(t, 256);
  CHECK(a.counts == std::vector<long long>{248, 3, 3, 2});
  CHECK(a.support_size == 4);
  CHECK(a.M == 256);
  CHECK(a.method == Method::vd);
  CHECK(variational_distance(a, t) == doctest::Approx(0.006875).epsilon(1e-12));
}

TEST_CASE("exactly representable targets leave no rest mass (snap window)") {
  // 3 * (1/3) lands within one ulp of 1, not exactly on it; the snap treats the
  // products as the integer 1 so no spurious unit moves around.
  const Target t = make_family(uniform_family(3), 2);
  const MTypeApprox a = quantize_vd(t, 3);
  CHECK(a.counts == std::vector<long long>{1, 1, 1});
}

TEST_CASE("rest units go to the largest flooring errors, ties to smaller indices") {
  const Target u3 = make_family(uniform_family(3), 2);
  CHECK(quantize_vd(u3, 4).counts == std::vector<long long>{2, 1, 1});

  const Target u2 = make_family(uniform_family(2), 2);
  const MTypeApprox a = quantize_vd(u2, 3);
  CHECK(a.counts == std::vector<long long>{2, 1});
  CHECK(variational_distance(a, u2) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("seven-entry instance with two leftover units") {
  const double a = 4.0 / 15.0;
  const double b = 1.0 / 20.0;
  const Target t = make_target({a, a, a, b, b, b, b}, true);
  const MTypeApprox q = quantize_vd(t, 5);
  CHECK(q.counts == std::vector<long long>{2, 2, 1, 0, 0, 0, 0});
  CHECK(variational_distance(q, t) == doctest::Approx(8.0 / 15.0).epsilon(1e-12));
}

TEST_CASE("sub-probability prefixes may hand several units to one entry") {
  // A one-entry prefix keeping a tenth of the mass: all ten units pile onto it.
  std::vector<double> tenth(10, 0.1);
  const Target p = prefix_target(make_target(tenth, false), 1);
  const MTypeApprox a = quantize_vd(p, 10);
  CHECK(a.counts == std::vector<long long>{10});
  CHECK(variational_distance(a, p) == doctest::Approx(1.8).epsilon(1e-12));
}

TEST_CASE("quantizers reject empty budgets") {
  const Target t = make_target({0.8, 0.2}, false);
  CHECK_THROWS_AS(quantize_vd(t, 0), std::invalid_argument);
  CHECK_THROWS_AS(quantize_vd(t, -3), std::invalid_argument);
  CHECK_THROWS_AS(quantize_id(t, 0), std::invalid_argument);
  CHECK_THROWS_AS(quantize_id(t, 20'000'000), GuardExceeded);
}

TEST_CASE("greedy quantizer reproduces the four-entry worked example") {
  const Target t = make_target({0.97, 0.01, 0.01, 0.01}, false);
  const auto [a, trace] = quantize_id(t, 256);
  CHECK(a.counts == std::vector<long long>{247, 3, 3, 3});
  CHECK(a.method == Method::id);
  CHECK(trace.order.size() == 256);
  CHECK(trace.costs.size() == 256);
}

TEST_CASE("greedy quantizer two-point example, including the exact-tie step") {
  const Target t = make_target({0.8, 0.2}, false);
  const auto [a, trace] = quantize_id(t, 2);
  CHECK(a.counts == std::vector<long long>{2, 0});
  // Second step is an exact cost tie between raising the first entry again and
  // opening the second; the smaller index wins.
  CHECK(trace.order == std::vector<std::size_t>{0, 0});
  CHECK(trace.costs[0] == doctest::Approx(std::log(1.25)).epsilon(1e-15));
  CHECK(trace.costs[1] == doctest::Approx(std::log(5.0)).epsilon(1e-15));
  CHECK(informational_divergence(a, t).nats == doctest::Approx(std::log(1.25)).epsilon(1e-15));
}

TEST_CASE("greedy quantizer spreads units over a uniform target") {
  const Target t = make_family(uniform_family(4), 2);
  const auto [a, trace] = quantize_id(t, 4);
  CHECK(a.counts == std::vector<long long>{1, 1, 1, 1});
  CHECK(trace.order == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(informational_divergence(a, t).nats == 0.0);
}

TEST_CASE("at most M entries can ever be opened") {
  const Target t = make_family(uniform_family(10), 2);
  const auto [a, trace] = quantize_id(t, 3);
  CHECK(a.counts == std::vector<long long>{1, 1, 1, 0, 0, 0, 0, 0, 0, 0});
  CHECK(a.support_size == 3);
  CHECK(informational_divergence(a, t).nats ==
        doctest::Approx(std::log(10.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("every trace prefix is itself the optimal coarser allocation") {
  const Target t = make_target({0.4, 0.3, 0.2, 0.1}, false);
  const auto [full, trace] = quantize_id(t, 12);
  for (long long m = 1; m <= 12; ++m) {
    const MTypeApprox from_trace = prefix_allocation(trace, m);
    const auto [direct, direct_trace] = quantize_id(t, m);
    (void)direct_trace;
    CHECK(from_trace.counts == direct.counts);
    CHECK(from_trace.M == m);
  }
  CHECK(prefix_allocation(trace, 12).counts == full.counts);
  CHECK_THROWS_AS(prefix_allocation(trace, 0), std::out_of_range);
  CHECK_THROWS_AS(prefix_allocation(trace, 13), std::out_of_range);
}

TEST_CASE("exhaustive search agrees with both algorithms on the two-point example") {
  const Target t = make_target({0.8, 0.2}, false);

  const auto [ovd, vd_val] = oracle_min(t, 2, Criterion::vd);
  CHECK(ovd.counts == std::vector<long long>{2, 0});
  CHECK(ovd.method == Method::oracle_vd);
  CHECK(vd_val == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(variational_distance(quantize_vd(t, 2), t) == doctest::Approx(vd_val).epsilon(1e-12));

  const auto [oid, id_val] = oracle_min(t, 2, Criterion::id);
  CHECK(oid.counts == std::vector<long long>{2, 0});
  CHECK(oid.method == Method::oracle_id);
  CHECK(id_val == doctest::Approx(std::log(1.25)).epsilon(1e-15));
}

TEST_CASE("exhaustive-search ties keep the lexicographically largest allocation") {
  const Target t = make_family(uniform_family(2), 1);
  const auto [ovd, vd_val] = oracle_min(t, 1, Criterion::vd);
  CHECK(ovd.counts == std::vector<long long>{1, 0});  // (0,1) scores the same
  CHECK(vd_val == doctest::Approx(1.0).epsilon(1e-15));
  const auto [oid, id_val] = oracle_min(t, 1, Criterion::id);
  CHECK(oid.counts == std::vector<long long>{1, 0});
  CHECK(id_val == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("exhaustive search refuses oversized instances") {
  const Target t = make_family(uniform_family(30), 2);
  CHECK_THROWS_AS(oracle_min(t, 40, Criterion::vd), GuardExceeded);
}

TEST_CASE("both quantizers are deterministic") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  std::vector<double> w(6);
  for (double& x : w) x = weight(rng);
  const Target t = make_target(w, true);
  const MTypeApprox a1 = quantize_vd(t, 37);
  const MTypeApprox a2 = quantize_vd(t, 37);
  CHECK(a1.counts == a2.counts);
  const auto r1 = quantize_id(t, 37);
  const auto r2 = quantize_id(t, 37);
  CHECK(r1.first.counts == r2.first.counts);
  CHECK(r1.second.order == r2.second.order);
}

TEST_CASE("random small instances: algorithms meet the exhaustive optimum") {
  std::mt19937_64 rng(20240818);
  std::uniform_int_distribution<std::size_t> pick_n(2, 5);
  std::uniform_int_distribution<long long> pick_M(1, 10);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  for (int round = 0; round < 25; ++round) {
    const std::size_t n = pick_n(rng);
    std::vector<double> w(n);
    for (double& x : w) x = weight(rng);
    const Target t = make_target(w, true);
    const long long M = pick_M(rng);

    const auto [ovd, best_vd] = oracle_min(t, M, Criterion::vd);
    (void)ovd;
    CHECK(variational_distance(quantize_vd(t, M), t) ==
          doctest::Approx(best_vd).epsilon(1e-12));

    const auto [oid, best_id] = oracle_min(t, M, Criterion::id);
    const auto [id, trace] = quantize_id(t, M);
    (void)oid;
    (void)trace;
    CHECK(informational_divergence(id, t).nats == doctest::Approx(best_id).epsilon(1e-12));
  }
}
