#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "perco/errors.hpp"
#include "perco/hashing.hpp"
#include "perco/percolation.hpp"

using namespace perco;

namespace {

const GroupGraphSpec kFamilies[] = {
    GroupGraphSpec::lattice(2), GroupGraphSpec::lattice(3), GroupGraphSpec::free_group(2), GroupGraphSpec::z_cross_zmod(2),
    GroupGraphSpec::z_cross_zmod(4), GroupGraphSpec::line(), GroupGraphSpec::two_line(),
};

}  // namespace

TEST_CASE("thresholding rejects p outside [0,1] and is monotone in p") {
  const auto ball = build_ball(GroupGraphSpec::lattice(2), 6);
  const auto labels = sample_labels(ball, 3);
  CHECK_THROWS_AS(threshold_config(labels, -0.01), DomainError);
  CHECK_THROWS_AS(threshold_config(labels, 1.5), DomainError);
  CHECK(threshold_config(labels, 0.0).open_count() == 0);
  CHECK(threshold_config(labels, 1.0).open_count() == ball->edge_count());
  const auto lo = threshold_config(labels, 0.4);
  const auto hi = threshold_config(labels, 0.6);
  for (EdgeIndex e = 0; e < ball->edge_count(); ++e) {
    if (lo.is_open(e)) CHECK(hi.is_open(e));
  }
}

TEST_CASE("labels of shared edges agree across radii") {
  const auto spec = GroupGraphSpec::free_group(2);
  const auto small = build_ball(spec, 3);
  const auto large = build_ball(spec, 6);
  const auto a = sample_labels(small, 77);
  const auto b = sample_labels(large, 77);
  for (EdgeIndex e = 0; e < small->edge_count(); ++e) {
    const Edge& ed = small->edge(e);
    const auto f = large->edge_between(*large->find(small->element(ed.u)), *large->find(small->element(ed.v)));
    CHECK(a.label(e) == b.label(*f));
  }
}

TEST_CASE("union-find clusters equal breadth-first flood fill on every family") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& spec : kFamilies) {
    CAPTURE(spec.name());
    for (int r : {0, 1, 4}) {
      const auto ball = build_ball(spec, r);
      for (int trial = 0; trial < 20; ++trial) {
        const auto config = sample_bernoulli(ball, unit(rng), rng());
        const auto cl = clusters(config);
        const auto label = oracle::flood_fill(config);
        CHECK(cl.cluster_of == label);
        std::vector<std::uint32_t> size(cl.cluster_count(), 0);
        for (auto c : label) ++size[c];
        CHECK(cl.size == size);
        for (std::uint32_t c = 0; c < cl.cluster_count(); ++c) {
          CHECK(label[cl.representative[c]] == c);
          bool touches = false;
          for (auto b : ball->boundary()) touches = touches || label[b] == c;
          CHECK(static_cast<bool>(cl.touches_boundary[c]) == touches);
        }
      }
    }
  }
}

TEST_CASE("escape threshold decides boundary reach for every p") {
  for (const auto& spec : kFamilies) {
    CAPTURE(spec.name());
    const auto ball = build_ball(spec, 4);
    EscapeSearch search(*ball);
    for (std::uint64_t t = 0; t < 30; ++t) {
      const auto seed = trial_seed(5, t);
      const double escape = search.run(seed);
      const auto labels = sample_labels(ball, seed);
      for (double p : {0.1, 0.3, 0.45, 0.5, 0.62, 0.8, 0.95}) {
        CHECK((escape < p) == oracle::reaches_boundary(threshold_config(labels, p), 0));
      }
      // Thresholding exactly at the escape label closes the bottleneck edge.
      if (std::isfinite(escape)) {
        CHECK_FALSE(oracle::reaches_boundary(threshold_config(labels, escape), 0));
        CHECK(oracle::reaches_boundary(threshold_config(labels, std::nextafter(escape, 2.0)), 0));
      }
    }
  }
  const auto tiny = build_ball(GroupGraphSpec::line(), 0);
  CHECK(EscapeSearch(*tiny).run(1) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("theta on the line matches the two-ray closed form") {
  const auto spec = GroupGraphSpec::line();
  for (double p : {0.7, 0.85, 0.95}) {
    const auto est = theta_hat(spec, p, 6, 40000, 13);
    CHECK(std::abs(est.estimate - oracle::line_theta(p, 6)) <= 4.0 * est.std_error + 1e-12);
  }
}

TEST_CASE("theta on the free group ball matches the finite-depth tree recursion") {
  const double ps[] = {0.25, 1.0 / 3.0, 0.4, 0.5, 0.7};
  const auto curve = theta_curve(GroupGraphSpec::free_group(2), ps, 8, 40000, 21);
  for (const auto& pt : curve) {
    CAPTURE(pt.p);
    CHECK(std::abs(pt.estimate.estimate - oracle::tree_theta_finite(4, pt.p, 8)) <= 4.0 * pt.estimate.std_error + 1e-3);
  }
}

TEST_CASE("theta curves are monotone and agree with single-p estimates") {
  const auto ball = build_ball(GroupGraphSpec::lattice(2), 8);
  std::vector<double> ps;
  for (int i = 0; i <= 20; ++i) ps.push_back(i / 20.0);
  const auto curve = theta_curve(*ball, ps, 3000, 4);
  for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i - 1].estimate.estimate <= curve[i].estimate.estimate);
  CHECK(curve.front().estimate.estimate == 0.0);
  CHECK(curve.back().estimate.estimate == 1.0);
  CHECK(theta_hat(*ball, 0.55, 3000, 4).estimate == curve[11].estimate.estimate);
  const double unsorted[] = {0.5, 0.2};
  CHECK_THROWS_AS(theta_curve(*ball, unsorted, 10, 1), DomainError);
}

TEST_CASE("estimators refuse graphs that are not vertex-transitive") {
  CHECK_THROWS_AS(theta_hat(GroupGraphSpec::two_line(), 0.5, 4, 10, 1), ModelError);
  const double ps[] = {0.5};
  CHECK_THROWS_AS(theta_curve(GroupGraphSpec::two_line(), ps, 4, 10, 1), ModelError);
  CHECK_THROWS_AS(pc_estimate(GroupGraphSpec::two_line(), 4, 10, 0.01, 1), ModelError);
}

TEST_CASE("results do not depend on the worker count") {
  const auto ball = build_ball(GroupGraphSpec::lattice(2), 10);
  const auto one = escape_thresholds(*ball, 500, 9, SweepOptions{1, 0});
  const auto many = escape_thresholds(*ball, 500, 9, SweepOptions{7, 0});
  CHECK(one == many);
  const double ps[] = {0.3, 0.5, 0.7};
  const auto a = nclusters_curve(ball, ps, 200, 9, 1);
  const auto b = nclusters_curve(ball, ps, 200, 9, 5);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].estimate.estimate == b[i].estimate.estimate);
    CHECK(a[i].estimate.std_error == b[i].estimate.std_error);
  }
}

TEST_CASE("p_c bisection on the line sits where the two-ray formula crosses 1/2") {
  // 1 - (1 - p^16)^2 = 1/2  <=>  p = (1 - 2^-1/2)^(1/16)
  const double crossing = std::pow(1.0 - std::sqrt(0.5), 1.0 / 16.0);
  const auto interval = pc_estimate(GroupGraphSpec::line(), 16, 20000, 0.005, 3);
  CHECK(interval.hi - interval.lo <= 0.005);
  CHECK(interval.lo <= crossing + 0.01);
  CHECK(interval.hi >= crossing - 0.01);
  CHECK_THROWS_AS(pc_estimate(GroupGraphSpec::line(), 4, 10, 0.0, 1), DomainError);
}

TEST_CASE("boundary cluster counts at the extremes") {
  const auto ball = build_ball(GroupGraphSpec::lattice(2), 5);
  const double ps[] = {0.0, 1.0};
  const auto curve = nclusters_curve(ball, ps, 20, 1);
  CHECK(curve[0].estimate.estimate == static_cast<double>(ball->boundary().size()));
  CHECK(curve[1].estimate.estimate == 1.0);
  Configuration config(ball);
  CHECK(boundary_cluster_count(config) == ball->boundary().size());
  const auto joined = insert_edge(config, 0);
  CHECK(joined.is_open(0));
  CHECK(joined.open_count() == 1);
  CHECK(config.open_count() == 0);
}

TEST_CASE("tree theta solves the fixed-point equation and vanishes up to 1/(d-1)") {
  CHECK(tree_theta_exact(4, 0.2) == 0.0);
  CHECK(tree_theta_exact(4, 1.0 / 3.0) == 0.0);
  CHECK(tree_theta_exact(4, 1.0) == doctest::Approx(1.0));
  for (double p : {0.4, 0.5, 0.7, 0.9}) {
    const double theta = tree_theta_exact(4, p);
    // Finite-depth survival decreases to the infinite-volume value.
    CHECK(theta <= oracle::tree_theta_finite(4, p, 200) + 1e-9);
    CHECK(theta >= oracle::tree_theta_finite(4, p, 200) - 1e-6);
  }
  CHECK_THROWS_AS(tree_theta_exact(2, 0.5), DomainError);
}

TEST_CASE("estimate helpers") {
  const auto e = EstimateWithCI::from_count(25, 100);
  CHECK(e.estimate == 0.25);
  CHECK(e.std_error == doctest::Approx(std::sqrt(0.25 * 0.75 / 100)));
  const double xs[] = {1.0, 2.0, 3.0};
  const auto m = EstimateWithCI::from_samples(xs);
  CHECK(m.estimate == 2.0);
  CHECK(m.std_error == doctest::Approx(1.0 / std::sqrt(3.0)));
}
