#include <doctest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "perco/cluster_properties.hpp"
#include "perco/errors.hpp"
#include "perco/hashing.hpp"

using namespace perco;

TEST_CASE("property names round-trip") {
  for (const auto& prop : {PropertySpec::degree_at_least(3), PropertySpec::cluster_size_at_least(5),
                           PropertySpec::touches_boundary(), PropertySpec::contains_subcluster(0.45),
                           PropertySpec::majority_window(8), PropertySpec::directed_step_majority(4)}) {
    const auto back = PropertySpec::parse(prop.name());
    CHECK(back.kind == prop.kind);
    CHECK(back.k == prop.k);
    CHECK(back.p0 == prop.p0);
  }
  CHECK(PropertySpec::parse("contains-subcluster:p0=0.45").p0 == 0.45);
  CHECK_THROWS_AS(PropertySpec::parse("degree:-1"), DomainError);
  CHECK_THROWS_AS(PropertySpec::parse("contains-subcluster:2"), DomainError);
  CHECK_THROWS_AS(PropertySpec::parse("colour"), DomainError);
}

TEST_CASE("cluster properties are constant on clusters, degree is not") {
  const std::pair<GroupGraphSpec, int> graphs[] = {
      {GroupGraphSpec::lattice(2), 8}, {GroupGraphSpec::free_group(2), 5}, {GroupGraphSpec::z_cross_zmod(4), 6}};
  for (const auto& [spec, r] : graphs) {
    CAPTURE(spec.name());
    for (const auto& prop : {PropertySpec::cluster_size_at_least(4), PropertySpec::touches_boundary(),
                             PropertySpec::contains_subcluster(0.4)}) {
      CHECK(check_cluster_property(prop, spec, 0.55, r, 300, 2) == 0);
    }
    CHECK(check_cluster_property(PropertySpec::degree_at_least(2), spec, 0.55, r, 300, 2) > 0);
  }
  CHECK_THROWS_AS(check_cluster_property(PropertySpec::majority_window(2), GroupGraphSpec::line(), 0.5, 4, 10, 1),
                  UsageError);
}

TEST_CASE("contains-subcluster matches a flood-fill oracle") {
  const auto ball = build_ball(GroupGraphSpec::lattice(2), 7);
  for (std::uint64_t t = 0; t < 40; ++t) {
    const auto labels = sample_labels(ball, trial_seed(4, t));
    const PercolationState state(labels, 0.6);
    const auto values = eval_all(PropertySpec::contains_subcluster(0.45), state);
    const auto outer = oracle::flood_fill(threshold_config(labels, 0.6));
    const auto inner_config = threshold_config(labels, 0.45);
    const auto inner = oracle::flood_fill(inner_config);
    std::vector<std::uint8_t> inner_hits(ball->vertex_count(), 0);
    for (auto b : ball->boundary()) inner_hits[inner[b]] = 1;
    for (VertexIndex v = 0; v < ball->vertex_count(); ++v) {
      bool expected = false;
      for (VertexIndex u = 0; u < ball->vertex_count(); ++u) {
        if (outer[u] == outer[v] && inner_hits[inner[u]]) expected = true;
      }
      CHECK(static_cast<bool>(values[v]) == expected);
    }
  }
}

TEST_CASE("two-threshold kinds need a label field and p0 < p1") {
  const auto ball = build_ball(GroupGraphSpec::line(), 4);
  const PercolationState bare(Configuration(ball, true));
  CHECK_THROWS_AS(eval_property(PropertySpec::contains_subcluster(0.3), bare, 0), UsageError);
  const PercolationState labeled(sample_labels(ball, 1), 0.5);
  CHECK_THROWS_AS(eval_property(PropertySpec::contains_subcluster(0.5), labeled, 0), UsageError);
  CHECK_THROWS_AS(eval_property(PropertySpec::majority_window(1), labeled, 0), UsageError);
  CHECK_THROWS_AS(eval_property(PropertySpec::touches_boundary(), labeled, 99), UsageError);
}

TEST_CASE("agreement flags") {
  const std::vector<std::uint8_t> values = {1, 1, 0, 1};
  const VertexIndex all_true[] = {0, 1, 3};
  const VertexIndex mixed[] = {0, 2};
  const VertexIndex single[] = {2};
  CHECK(agreement(values, all_true).plus);
  CHECK(agreement(values, all_true).pm);
  CHECK_FALSE(agreement(values, mixed).pm);
  CHECK(agreement(values, single).minus);
  CHECK(agreement(values, single).pm);
}

TEST_CASE("evaluation commutes with the group action on interior configurations") {
  std::mt19937_64 rng(12);
  for (const auto& spec : {GroupGraphSpec::lattice(2), GroupGraphSpec::free_group(2)}) {
    CAPTURE(spec.name());
    const int radius = 7;
    const auto ball = build_ball(spec, radius);
    const GroupElement g = spec.family == GraphFamily::FreeGroup ? group::parse(spec, "aB") : GroupElement{{1, 1}};
    for (int trial = 0; trial < 20; ++trial) {
      // Open edges only among vertices of depth <= 3, so every translate is
      // fully determined inside the ball.
      Configuration config(ball);
      for (EdgeIndex e = 0; e < ball->edge_count(); ++e) {
        const Edge& ed = ball->edge(e);
        if (ball->depth(ed.u) <= 3 && ball->depth(ed.v) <= 3) config.set(e, rng() % 2 == 0);
      }
      const auto moved = translate_configuration(config, g);
      CHECK(moved.open_count() == config.open_count());
      const PercolationState a(config);
      const PercolationState b(moved);
      for (const auto& prop : {PropertySpec::degree_at_least(2), PropertySpec::cluster_size_at_least(3),
                               PropertySpec::touches_boundary()}) {
        const auto va = eval_all(prop, a);
        const auto vb = eval_all(prop, b);
        for (VertexIndex v = 0; v < ball->vertex_count(); ++v) {
          if (ball->depth(v) > 3) continue;
          const auto w = act(*ball, g, v);
          REQUIRE(w);
          CHECK(va[v] == vb[*w]);
        }
      }
    }
  }
}

TEST_CASE("translated labels keep their values on translated edges") {
  const auto spec = GroupGraphSpec::lattice(2);
  const auto ball = build_ball(spec, 6);
  const auto labels = sample_labels(ball, 8);
  const GroupElement g{{1, 0}};
  const auto moved = translate_labels(labels, g);
  for (EdgeIndex e = 0; e < ball->edge_count(); ++e) {
    const Edge& ed = ball->edge(e);
    const auto u = act(*ball, g, ed.u);
    const auto v = act(*ball, g, ed.v);
    if (u && v) CHECK(moved.label(*ball->edge_between(*u, *v)) == labels.label(e));
  }
}

TEST_CASE("indistinguishability statistic") {
  const auto spec = GroupGraphSpec::lattice(2);
  // Every qualifying cluster touches the boundary, so this property always agrees.
  CHECK(indist_statistic(spec, 0.6, PropertySpec::touches_boundary(), 10, 3, 200, 1).estimate == 1.0);
  // At p = 0 each boundary vertex is its own cluster and the window only meets them at R.
  const auto sparse = indist_statistic(spec, 0.0, PropertySpec::degree_at_least(1), 4, 4, 20, 1);
  CHECK(sparse.estimate == 1.0);
  const auto est = indist_statistic(spec, 0.6, PropertySpec::contains_subcluster(0.5), 12, 3, 400, 5);
  CHECK(est.estimate >= 0.0);
  CHECK(est.estimate <= 1.0);
  CHECK(est.trials == 400);
  CHECK_THROWS_AS(indist_statistic(spec, 0.6, PropertySpec::touches_boundary(), 4, 5, 10, 1), ConfigError);
  CHECK_THROWS_AS(indist_statistic(spec, 0.6, PropertySpec::majority_window(1), 4, 2, 10, 1), UsageError);
}

TEST_CASE("indistinguishability results do not depend on the worker count") {
  const auto ball = build_ball(GroupGraphSpec::lattice(2), 10);
  const auto prop = PropertySpec::contains_subcluster(0.5);
  const auto a = indist_statistic(ball, 0.6, prop, 3, 300, 5, 1);
  const auto b = indist_statistic(ball, 0.6, prop, 3, 300, 5, 6);
  CHECK(a.estimate == b.estimate);
}
