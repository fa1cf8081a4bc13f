#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "perco/errors.hpp"
#include "perco/hashing.hpp"
#include "perco/scenery.hpp"

using namespace perco;

TEST_CASE("model names round-trip") {
  for (auto kind : {SceneryKind::TwoLineMajority, SceneryKind::ZxZmod4, SceneryKind::FreeDirected}) {
    const SceneryModel m{kind, 0};
    CHECK(SceneryModel::parse(m.name()).kind == kind);
  }
  CHECK_THROWS_AS(SceneryModel::parse("three-line"), DomainError);
}

TEST_CASE("two-line model: two clusters, the lines, all edges open") {
  const SceneryFactory factory({SceneryKind::TwoLineMajority, 0}, 10);
  const auto state = factory.sample(3);
  const GroupElement a{{-4, 0}}, b{{7, 0}}, c{{0, 1}};
  CHECK(state->connected(a, b));
  CHECK_FALSE(state->connected(a, c));
  CHECK(state->edge_open(a, 0));
  CHECK(state->edge_open(a, 1));
  CHECK_FALSE(state->edge_open(GroupElement{{10, 0}}, 0));
  CHECK(state->cluster_size(c) == 21);
  CHECK_THROWS_AS(state->directed_step(a), ModelError);
  CHECK_THROWS_AS(state->property(PropertySpec::directed_step_majority(2), a), ModelError);
}

TEST_CASE("two-line majority over 2n+1 fair bits holds with probability 1/2") {
  const SceneryFactory factory({SceneryKind::TwoLineMajority, 0}, 20);
  const std::size_t trials = 100000;
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    hits += factory.sample(trial_seed(31, t))->property(PropertySpec::majority_window(5), GroupElement{{0, 0}});
  }
  const auto est = EstimateWithCI::from_count(hits, trials);
  CHECK(std::abs(est.estimate - 0.5) <= 4.0 * est.std_error);
}

TEST_CASE("z x z/4 model keeps horizontals and erases exactly one rung family") {
  const auto ball = build_ball(GroupGraphSpec::z_cross_zmod(4), 8);
  std::size_t erased_a = 0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    const auto sample = sample_zxzmod4(ball, trial_seed(2, t));
    erased_a += sample.erase_a;
    std::size_t open_survivors = 0, survivors = 0;
    for (EdgeIndex e = 0; e < ball->edge_count(); ++e) {
      if (is_horizontal(*ball, e)) {
        CHECK(sample.config.is_open(e));
        continue;
      }
      const int r1 = ball->normal_form(ball->edge(e).u)[1], r2 = ball->normal_form(ball->edge(e).v)[1];
      const bool family_a = std::min(r1, r2) % 2 == 0 && std::abs(r1 - r2) == 1;
      if (family_a == sample.erase_a) {
        CHECK_FALSE(sample.config.is_open(e));
      } else {
        ++survivors;
        open_survivors += sample.config.is_open(e);
      }
    }
    CHECK(open_survivors > 0);
    CHECK(open_survivors < survivors);
    // The rows pair up into two double lines, each touching the boundary.
    const auto cl = clusters(sample.config);
    CHECK(boundary_cluster_count(cl) == 2);
  }
  CHECK(erased_a > 60);
  CHECK(erased_a < 140);
  CHECK_THROWS_AS(sample_zxzmod4(build_ball(GroupGraphSpec::z_cross_zmod(5), 3), 1), ModelError);
}

TEST_CASE("z x z/4 majority reads the surviving rungs next to the row") {
  const auto ball = build_ball(GroupGraphSpec::z_cross_zmod(4), 6);
  const auto sample = sample_zxzmod4(ball, 77);
  // Both rows of a surviving double line read the same rungs.
  const bool same = zxzmod4_majority(*ball, sample, GroupElement{{0, 0}}, 2) ==
                    zxzmod4_majority(*ball, sample, GroupElement{{0, sample.erase_a ? 3 : 1}}, 2);
  CHECK(same);
  CHECK_THROWS_AS(zxzmod4_majority(*ball, sample, GroupElement{{0, 2}}, 5), ConfigError);
}

TEST_CASE("free-directed model: one out-edge per vertex, only infinite clusters") {
  const auto ball = build_ball(GroupGraphSpec::free_group(2), 6);
  const SceneryFactory factory({SceneryKind::FreeDirected, 0}, 6);
  for (std::uint64_t t = 0; t < 30; ++t) {
    const auto seed = trial_seed(6, t);
    const auto config = free_directed_config(ball, seed);
    const auto cl = clusters(config);
    const auto state = factory.sample(seed);
    for (VertexIndex v = 0; v < ball->vertex_count(); ++v) {
      if (!ball->on_boundary(v)) CHECK(out_degree(config, v) == 1);
      CHECK(cl.touches_boundary[cl.cluster_of[v]]);
    }
    // The lazy state agrees with the materialized configuration.
    for (EdgeIndex e = 0; e < ball->edge_count(); ++e) {
      const Edge& ed = ball->edge(e);
      CHECK(state->edge_open(ball->element(ed.u), ed.gen) == config.is_open(e));
      CHECK(state->edge_open(ball->element(ed.v), inverse_generator(ed.gen)) == config.is_open(e));
    }
    // Connection through forward paths equals flood fill: clusters are
    // subtrees, so the geodesic between two vertices stays in the ball.
    const auto label = oracle::flood_fill(config);
    for (VertexIndex u = 0; u < 40; ++u) {
      for (VertexIndex v = 0; v < 40; ++v) {
        CHECK(state->connected(ball->element(u), ball->element(v)) == (label[u] == label[v]));
      }
    }
  }
}
