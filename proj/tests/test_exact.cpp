#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "perco/errors.hpp"
#include "perco/exact.hpp"

using namespace perco;

namespace {

std::vector<BallPtr> small_balls() {
  return {build_ball(GroupGraphSpec::line(), 5), build_ball(GroupGraphSpec::line(), 6),
          build_ball(GroupGraphSpec::lattice(2), 2), build_ball(GroupGraphSpec::free_group(2), 2),
          build_ball(GroupGraphSpec::two_line(), 3)};
}

}  // namespace

TEST_CASE("exact measure matches brute-force enumeration") {
  for (const auto& ball : small_balls()) {
    CAPTURE(ball->spec().name());
    REQUIRE(ball->edge_count() <= kExactEdgeCap);
    for (std::uint64_t key = 0; key < 5; ++key) {
      const auto event = hash_event(key, 0.3 + 0.1 * static_cast<double>(key));
      for (double p : {0.0, 0.3, 0.5, 0.7, 1.0}) {
        CHECK(exact_measure(ball, p, event) == doctest::Approx(oracle::brute_measure(ball, p, event)).epsilon(1e-12));
      }
    }
    const auto root = root_reaches_boundary();
    CHECK(exact_measure(ball, 0.6, root) == doctest::Approx(oracle::brute_measure(ball, 0.6, root)).epsilon(1e-12));
  }
}

TEST_CASE("line root event equals the two-ray formula") {
  const auto ball = build_ball(GroupGraphSpec::line(), 5);
  for (double p : {0.2, 0.5, 0.9}) {
    CHECK(exact_measure(ball, p, root_reaches_boundary()) == doctest::Approx(oracle::line_theta(p, 5)).epsilon(1e-12));
  }
}

TEST_CASE("an event and its complement sum to one") {
  const auto ball = build_ball(GroupGraphSpec::line(), 6);
  const auto event = hash_event(42);
  const Event complement = [&](const Configuration& c) { return !event(c); };
  for (double p : {0.1, 0.5, 0.8}) {
    CHECK(exact_measure(ball, p, event) + exact_measure(ball, p, complement) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(exact_measure(ball, 0.3, open_at_least(0)) == doctest::Approx(1.0));
  CHECK(exact_measure(ball, 0.3, open_at_least(13)) == 0.0);
}

TEST_CASE("masks round-trip and large balls are refused") {
  const auto ball = build_ball(GroupGraphSpec::line(), 6);
  for (std::uint32_t mask : {0u, 1u, 0xABCu, 0xFFFu}) {
    CHECK(configuration_mask(configuration_from_mask(ball, mask)) == mask);
  }
  CHECK_THROWS_AS(exact_measure(build_ball(GroupGraphSpec::lattice(2), 4), 0.5, hash_event(1)), SizeError);
  CHECK_THROWS_AS(exact_measure(ball, 1.2, hash_event(1)), DomainError);
}

TEST_CASE("insertion images match a brute-force image event") {
  for (const auto& ball : small_balls()) {
    if (ball->edge_count() > 12) continue;
    const auto event = hash_event(7, 0.2);
    const auto report = insertion_tolerance_check(ball, 0.3, event);
    CHECK(report.measure_b == doctest::Approx(oracle::brute_measure(ball, 0.3, event)).epsilon(1e-12));
    REQUIRE(report.measure_inserted.size() == ball->edge_count());
    for (EdgeIndex e = 0; e < ball->edge_count(); ++e) {
      const Event image = [&](const Configuration& c) {
        if (!c.is_open(e)) return false;
        Configuration closed = c;
        closed.set(e, false);
        return event(c) || event(closed);
      };
      CHECK(report.measure_inserted[e] == doctest::Approx(oracle::brute_measure(ball, 0.3, image)).epsilon(1e-12));
    }
    CHECK(report.all_positive);
  }
}

TEST_CASE("the image of an increasing event is the event with the edge open") {
  // Pi^e(B) = B and e open, which has measure between p P[B] and P[B].
  const auto ball = build_ball(GroupGraphSpec::line(), 5);
  const auto report = insertion_tolerance_check(ball, 0.4, root_reaches_boundary());
  for (double m : report.measure_inserted) {
    CHECK(m <= report.measure_b + 1e-15);
    CHECK(m >= 0.4 * report.measure_b - 1e-15);
  }
  CHECK_THROWS_AS(insertion_tolerance_check(ball, 0.0, root_reaches_boundary()), DomainError);
  CHECK_THROWS_AS(insertion_tolerance_check(ball, 1.0, root_reaches_boundary()), DomainError);
}

TEST_CASE("event names parse") {
  const auto ball = build_ball(GroupGraphSpec::line(), 3);
  const Configuration all_open(ball, true);
  CHECK(parse_event("root-boundary")(all_open));
  CHECK(parse_event("open-at-least:6")(all_open));
  CHECK_FALSE(parse_event("open-at-least:7")(all_open));
  CHECK(parse_event("hash:5:1")(all_open));
  CHECK_THROWS_AS(parse_event("hash:x"), DomainError);
  CHECK_THROWS_AS(parse_event("sometimes"), DomainError);
}
