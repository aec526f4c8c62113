#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "mtype/metrics.hpp"
#include "mtype/quantize.hpp"
#include "mtype/target.hpp"

using namespace mtype;

namespace {

MTypeApprox approx_of(long long M, std::vector<long long> counts) {
  MTypeApprox a;
  a.M = M;
  a.support_size = count_support(counts);
  a.counts = std::move(counts);
  return a;
}

}  // namespace

TEST_CASE("variational distance sums per-entry L1 error plus the missing tail") {
  const Target t = make_target({0.75, 0.25}, false);
  CHECK(variational_distance(approx_of(4, {3, 1}), t) == 0.0);
  CHECK(variational_distance(approx_of(4, {4, 0}), t) == doctest::Approx(0.5).epsilon(1e-15));

  // A truncated target: the approximation is identically zero on the tail, so
  // the tail mass enters the distance unchanged.
  const Target p = prefix_target(make_target({0.5, 0.3, 0.2}, false), 2);
  CHECK(variational_distance(approx_of(4, {2, 2}), p) == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("divergence of an exact representation is zero, in both directions") {
  const Target t = make_target({0.75, 0.25}, false);
  const MTypeApprox exact = approx_of(4, {3, 1});
  CHECK(informational_divergence(exact, t).nats == 0.0);
  CHECK(reverse_divergence(t, exact).nats == 0.0);
  CHECK(pinsker_floor(exact, t) == 0.0);
  CHECK(reverse_pinsker_bound(exact, t) == 0.0);  // ratio 1 takes the limit factor 1
  CHECK(chi_square(exact, t) == 0.0);
}

TEST_CASE("divergence on the two-point example is exactly ln(5/4)") {
  const Target t = make_target({0.8, 0.2}, false);
  const MTypeApprox a = approx_of(2, {2, 0});
  const DivergenceValue d = informational_divergence(a, t);
  CHECK(d.nats == doctest::Approx(std::log(1.25)).epsilon(1e-15));
  CHECK(d.bits() == doctest::Approx(std::log2(1.25)).epsilon(1e-15));
  CHECK(variational_distance(a, t) == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("blocked dyadic family at M = 2 yields exactly one bit") {
  const Target t = make_family(adversarial_family(3), 2);
  const MTypeApprox a = quantize_vd(t, 2);
  CHECK(a.counts[0] == 1);
  CHECK(a.counts[1] == 1);
  CHECK(a.support_size == 2);
  CHECK(variational_distance(a, t) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(informational_divergence(a, t).bits() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("reverse divergence blows up when target mass has no image") {
  const Target t = make_target({0.8, 0.2}, false);
  CHECK(std::isinf(reverse_divergence(t, approx_of(2, {2, 0})).nats));

  // Any truncated target makes the reverse direction infinite outright.
  const Target p = prefix_target(make_target({0.5, 0.3, 0.2}, false), 2);
  CHECK(std::isinf(reverse_divergence(p, approx_of(4, {2, 2})).nats));
}

TEST_CASE("reverse divergence on a finite overlap case") {
  const Target t = make_target({0.75, 0.25}, false);
  const MTypeApprox a = approx_of(4, {2, 2});
  const double expected = 0.75 * std::log(1.5) - 0.25 * std::log(2.0);
  CHECK(reverse_divergence(t, a).nats == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("pinsker floor dominates the achieved distance") {
  const Target t = make_target({0.8, 0.2}, false);
  const MTypeApprox a = approx_of(2, {2, 0});
  CHECK(pinsker_floor(a, t) == doctest::Approx(std::sqrt(2.0 * std::log(1.25))).epsilon(1e-14));
  CHECK(variational_distance(a, t) <= pinsker_floor(a, t));

  const Target adv = make_family(adversarial_family(3), 2);
  const MTypeApprox b = quantize_vd(adv, 2);
  CHECK(pinsker_floor(b, adv) == doctest::Approx(std::sqrt(2.0 * std::log(2.0))).epsilon(1e-14));
  CHECK(variational_distance(b, adv) <= pinsker_floor(b, adv));
}

TEST_CASE("reverse pinsker bound is tight on the two worked cases") {
  // Two-point target: ratio r = 1.25 and distance 0.4 reproduce ln(5/4) exactly.
  const Target t = make_target({0.8, 0.2}, false);
  const MTypeApprox a = approx_of(2, {2, 0});
  CHECK(reverse_pinsker_bound(a, t) == doctest::Approx(std::log(1.25)).epsilon(1e-14));
  CHECK(informational_divergence(a, t).nats <= reverse_pinsker_bound(a, t) + 1e-15);

  // Blocked family: ratio r = 4 and distance 3/4 reproduce ln 2 exactly.
  const Target adv = make_family(adversarial_family(3), 2);
  const MTypeApprox b = quantize_vd(adv, 2);
  CHECK(reverse_pinsker_bound(b, adv) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("chi-square distance and the log chain bound") {
  const Target t = make_target({0.8, 0.2}, false);
  const MTypeApprox a = approx_of(2, {2, 0});
  CHECK(chi_square(a, t) == doctest::Approx(0.25).epsilon(1e-14));
  // The chain D <= ln(1 + chi2) is exactly tight here.
  CHECK(informational_divergence(a, t).nats ==
        doctest::Approx(std::log1p(chi_square(a, t))).epsilon(1e-14));

  const Target u = make_target({0.75, 0.25}, false);
  const MTypeApprox b = approx_of(4, {2, 2});
  CHECK(chi_square(b, u) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(informational_divergence(b, u).nats <= std::log1p(chi_square(b, u)));

  // Truncation: each tail entry contributes its own mass to the distance.
  const Target p = prefix_target(make_target({0.5, 0.3, 0.2}, false), 2);
  const MTypeApprox c = approx_of(4, {2, 2});
  CHECK(chi_square(c, p) == doctest::Approx(0.04 / 0.3 + 0.2).epsilon(1e-14));
}

TEST_CASE("metrics reject counts that do not match the target prefix") {
  const Target t = make_target({0.8, 0.2}, false);
  const MTypeApprox wrong = approx_of(2, {1, 1, 0});
  CHECK_THROWS_AS(variational_distance(wrong, t), std::invalid_argument);
  CHECK_THROWS_AS(informational_divergence(wrong, t), std::invalid_argument);
  CHECK_THROWS_AS(reverse_divergence(t, wrong), std::invalid_argument);
  CHECK_THROWS_AS(pinsker_floor(wrong, t), std::invalid_argument);
  CHECK_THROWS_AS(reverse_pinsker_bound(wrong, t), std::invalid_argument);
  CHECK_THROWS_AS(chi_square(wrong, t), std::invalid_argument);
}

TEST_CASE("random targets keep every inequality chain intact") {
  std::mt19937_64 rng(20240817);
  std::uniform_int_distribution<std::size_t> pick_n(2, 8);
  std::uniform_int_distribution<long long> pick_M(1, 20);
  std::uniform_real_distribution<double> weight(0.05, 1.0);

  for (int round = 0; round < 50; ++round) {
    const std::size_t n = pick_n(rng);
    std::vector<double> w(n);
    for (double& x : w) x = weight(rng);
    const Target t = make_target(w, true);
    const long long M = pick_M(rng);

    const MTypeApprox vd = quantize_vd(t, M);
    const auto [id, trace] = quantize_id(t, M);
    (void)trace;

    for (const MTypeApprox& a : {vd, id}) {
      const double dist = variational_distance(a, t);
      const double div = informational_divergence(a, t).nats;
      CHECK(dist >= 0.0);
      CHECK(dist <= 2.0);
      CHECK(div >= -1e-15);
      CHECK(dist <= pinsker_floor(a, t) + 1e-12);
      CHECK(div <= reverse_pinsker_bound(a, t) + 1e-12);
      CHECK(div <= std::log1p(chi_square(a, t)) + 1e-12);
      const double rev = reverse_divergence(t, a).nats;
      CHECK((std::isinf(rev) || rev >= -1e-15));
    }
  }
}
