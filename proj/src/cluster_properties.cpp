#include "perco/cluster_properties.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "perco/errors.hpp"
#include "perco/hashing.hpp"
#include "perco/parallel.hpp"

namespace perco {

bool PropertySpec::is_cluster_property() const {
  return kind == PropertyKind::ClusterSizeAtLeast || kind == PropertyKind::ClusterTouchesBoundary ||
         kind == PropertyKind::ContainsSubclusterAtThreshold;
}

bool PropertySpec::is_percolation_property() const {
  return kind != PropertyKind::MajorityWindow && kind != PropertyKind::DirectedStepMajority;
}

std::string PropertySpec::name() const {
  switch (kind) {
    case PropertyKind::DegreeAtLeast:
      return "degree:" + std::to_string(k);
    case PropertyKind::ClusterSizeAtLeast:
      return "cluster-size:" + std::to_string(k);
    case PropertyKind::ClusterTouchesBoundary:
      return "touches-boundary";
    case PropertyKind::ContainsSubclusterAtThreshold: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "contains-subcluster:%.10g", p0);
      return buf;
    }
    case PropertyKind::MajorityWindow:
      return "majority:" + std::to_string(k);
    case PropertyKind::DirectedStepMajority:
      return "directed-majority:" + std::to_string(k);
  }
  return "?";
}

PropertySpec PropertySpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (const auto eq = arg.find('='); eq != std::string::npos) arg = arg.substr(eq + 1);
  auto integer = [&]() {
    char* end = nullptr;
    const long v = std::strtol(arg.c_str(), &end, 10);
    if (arg.empty() || *end != '\0' || v < 0) throw DomainError("property '" + text + "' needs a non-negative integer parameter");
    return static_cast<int>(v);
  };
  if (head == "degree") return degree_at_least(integer());
  if (head == "cluster-size") return cluster_size_at_least(integer());
  if (head == "touches-boundary") return touches_boundary();
  if (head == "majority") return majority_window(integer());
  if (head == "directed-majority") return directed_step_majority(integer());
  if (head == "contains-subcluster") {
    char* end = nullptr;
    const double p0 = std::strtod(arg.c_str(), &end);
    if (arg.empty() || *end != '\0' || !(p0 >= 0.0 && p0 <= 1.0)) throw DomainError("property '" + text + "' needs p0 in [0,1]");
    return contains_subcluster(p0);
  }
  throw DomainError("unknown property '" + text +
                    "' (expected degree:k, cluster-size:m, touches-boundary, contains-subcluster:p0, majority:n, directed-majority:n)");
}

PercolationState::PercolationState(Configuration config)
    : config_(std::move(config)), clusters_(perco::clusters(config_)) {}

PercolationState::PercolationState(EdgeLabelField labels, double p1)
    : labels_(std::move(labels)),
      p1_(p1),
      config_(threshold_config(*labels_, p1)),
      clusters_(perco::clusters(config_)) {}

std::vector<std::uint8_t> eval_all(const PropertySpec& prop, const PercolationState& state) {
  const CayleyBall& ball = state.ball();
  const auto n = ball.vertex_count();
  const auto& cl = state.clusters();
  std::vector<std::uint8_t> out(n, 0);
  switch (prop.kind) {
    case PropertyKind::DegreeAtLeast:
      for (VertexIndex v = 0; v < n; ++v) out[v] = state.config().open_degree(v) >= prop.k;
      break;
    case PropertyKind::ClusterSizeAtLeast:
      for (VertexIndex v = 0; v < n; ++v) out[v] = cl.size[cl.cluster_of[v]] >= static_cast<std::uint32_t>(prop.k);
      break;
    case PropertyKind::ClusterTouchesBoundary:
      for (VertexIndex v = 0; v < n; ++v) out[v] = cl.touches_boundary[cl.cluster_of[v]];
      break;
    case PropertyKind::ContainsSubclusterAtThreshold: {
      if (state.labels() == nullptr) {
        throw UsageError("contains-subcluster needs a label field, not a bare configuration");
      }
      if (!(prop.p0 < state.p1())) {
        throw UsageError("contains-subcluster needs p0 < p1");
      }
      const auto inner = clusters(threshold_config(*state.labels(), prop.p0));
      std::vector<std::uint8_t> outer_hit(cl.cluster_count(), 0);
      for (VertexIndex v = 0; v < n; ++v) {
        if (inner.touches_boundary[inner.cluster_of[v]]) outer_hit[cl.cluster_of[v]] = 1;
      }
      for (VertexIndex v = 0; v < n; ++v) out[v] = outer_hit[cl.cluster_of[v]];
      break;
    }
    case PropertyKind::MajorityWindow:
    case PropertyKind::DirectedStepMajority:
      throw UsageError("property " + prop.name() + " is defined on scenery models, not percolation samples");
  }
  return out;
}

bool eval_property(const PropertySpec& prop, const PercolationState& state, VertexIndex v) {
  if (v >= state.ball().vertex_count()) throw UsageError("vertex is not in the ball");
  if (prop.kind == PropertyKind::DegreeAtLeast) return state.config().open_degree(v) >= prop.k;
  return eval_all(prop, state)[v] != 0;
}

Agreement agreement(std::span<const std::uint8_t> values, std::span<const VertexIndex> vertices) {
  bool plus = true;
  bool minus = true;
  for (VertexIndex v : vertices) {
    if (v >= values.size()) throw UsageError("vertex is not in the ball");
    if (values[v]) {
      minus = false;
    } else {
      plus = false;
    }
  }
  return {plus, minus, plus || minus};
}

Agreement agreement(const PropertySpec& prop, const PercolationState& state, std::span<const VertexIndex> vertices) {
  return agreement(eval_all(prop, state), vertices);
}

PropertyEvalReport evaluate_report(const PropertySpec& prop, const PercolationState& state,
                                   std::span<const VertexIndex> window) {
  PropertyEvalReport report;
  report.values = eval_all(prop, state);
  const auto& cl = state.clusters();
  std::vector<int> first(cl.cluster_count(), -1);
  report.cluster_constant.assign(cl.cluster_count(), 1);
  for (VertexIndex v = 0; v < report.values.size(); ++v) {
    const auto c = cl.cluster_of[v];
    if (first[c] < 0) {
      first[c] = report.values[v];
    } else if (first[c] != report.values[v]) {
      report.cluster_constant[c] = 0;
    }
  }
  report.on_window = agreement(report.values, window);
  return report;
}

std::size_t check_cluster_property(const PropertySpec& prop, const BallPtr& ball, double p, std::size_t trials,
                                   std::uint64_t seed, int workers) {
  if (!prop.is_percolation_property()) {
    throw UsageError("property " + prop.name() + " is defined on scenery models, not percolation samples");
  }
  std::vector<std::uint8_t> violated(trials, 0);
  for_each_trial(trials, workers, [&](std::size_t, std::size_t t) {
    const PercolationState state(sample_labels(ball, trial_seed(seed, t)), p);
    const auto report = evaluate_report(prop, state, {});
    violated[t] = std::find(report.cluster_constant.begin(), report.cluster_constant.end(), std::uint8_t{0}) !=
                  report.cluster_constant.end();
  });
  return static_cast<std::size_t>(std::count(violated.begin(), violated.end(), std::uint8_t{1}));
}

std::size_t check_cluster_property(const PropertySpec& prop, const GroupGraphSpec& spec, double p, int radius,
                                   std::size_t trials, std::uint64_t seed, int workers) {
  return check_cluster_property(prop, build_ball(spec, radius), p, trials, seed, workers);
}

EstimateWithCI indist_statistic(const BallPtr& ball, double p1, const PropertySpec& prop, int window_radius,
                                std::size_t trials, std::uint64_t seed, int workers) {
  if (window_radius < 0 || window_radius > ball->radius()) {
    throw ConfigError("window radius " + std::to_string(window_radius) + " must lie in [0, R=" +
                      std::to_string(ball->radius()) + "]");
  }
  if (trials == 0) throw DomainError("trials must be at least 1");
  if (!prop.is_percolation_property()) {
    throw UsageError("property " + prop.name() + " is defined on scenery models, not percolation samples");
  }
  std::vector<std::uint8_t> agreed(trials, 0);
  for_each_trial(trials, workers, [&](std::size_t, std::size_t t) {
    const PercolationState state(sample_labels(ball, trial_seed(seed, t)), p1);
    const auto& cl = state.clusters();
    std::vector<std::uint8_t> qualifies(cl.cluster_count(), 0);
    for (VertexIndex v = 0; v < ball->vertex_count() && ball->depth(v) <= window_radius; ++v) {
      const auto c = cl.cluster_of[v];
      if (cl.touches_boundary[c]) qualifies[c] = 1;
    }
    std::vector<VertexIndex> reps;
    for (std::uint32_t c = 0; c < cl.cluster_count(); ++c) {
      if (qualifies[c]) reps.push_back(cl.representative[c]);
    }
    agreed[t] = reps.size() <= 1 ? 1 : agreement(prop, state, reps).pm;
  });
  const auto hits = static_cast<std::size_t>(std::count(agreed.begin(), agreed.end(), std::uint8_t{1}));
  return EstimateWithCI::from_count(hits, trials);
}

EstimateWithCI indist_statistic(const GroupGraphSpec& spec, double p1, const PropertySpec& prop, int radius,
                                int window_radius, std::size_t trials, std::uint64_t seed, int workers) {
  return indist_statistic(build_ball(spec, radius), p1, prop, window_radius, trials, seed, workers);
}

namespace {

// Preimage edge of every ball edge under translation by g, if in the ball.
std::vector<std::optional<EdgeIndex>> preimages(const CayleyBall& ball, const GroupElement& g) {
  const GroupElement g_inv = group::inverse(ball.spec(), g);
  std::vector<std::optional<EdgeIndex>> out(ball.edge_count());
  for (EdgeIndex e = 0; e < ball.edge_count(); ++e) {
    const Edge& ed = ball.edge(e);
    const auto u = act(ball, g_inv, ed.u);
    const auto v = act(ball, g_inv, ed.v);
    if (u && v) out[e] = ball.edge_between(*u, *v);
  }
  return out;
}

}  // namespace

Configuration translate_configuration(const Configuration& config, const GroupElement& g) {
  const auto pre = preimages(config.ball(), g);
  Configuration out(config.ball_ptr());
  for (EdgeIndex e = 0; e < out.size(); ++e) {
    if (pre[e]) out.set(e, config.is_open(*pre[e]));
  }
  return out;
}

EdgeLabelField translate_labels(const EdgeLabelField& labels, const GroupElement& g) {
  const auto pre = preimages(labels.ball(), g);
  std::vector<double> out(labels.labels().size(), std::nextafter(1.0, 0.0));
  for (EdgeIndex e = 0; e < out.size(); ++e) {
    if (pre[e]) out[e] = labels.label(*pre[e]);
  }
  return EdgeLabelField(labels.ball_ptr(), labels.seed(), std::move(out));
}

}  // namespace perco
