#include "perco/asymptotic.hpp"

#include <algorithm>
#include <cstdlib>

#include "perco/errors.hpp"
#include "perco/hashing.hpp"
#include "perco/parallel.hpp"

namespace perco {

int ReRootingSpec::displacement(const GroupGraphSpec& spec) const {
  switch (kind) {
    case ReRootingKind::Identity:
      return 0;
    case ReRootingKind::TranslateIfConnected:
      return group::word_length(spec, g);
    case ReRootingKind::LexOpenWalk:
    case ReRootingKind::DirectedWalk:
      return steps;
  }
  return 0;
}

std::string ReRootingSpec::name(const GroupGraphSpec& spec) const {
  switch (kind) {
    case ReRootingKind::Identity:
      return "identity";
    case ReRootingKind::TranslateIfConnected:
      return "translate:" + group::to_string(spec, g);
    case ReRootingKind::LexOpenWalk:
      return "lex-walk:" + std::to_string(steps);
    case ReRootingKind::DirectedWalk:
      return "directed-walk:" + std::to_string(steps);
  }
  return "?";
}

ReRootingSpec ReRootingSpec::parse(const GroupGraphSpec& spec, const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto count = [&]() {
    char* end = nullptr;
    const long v = std::strtol(arg.c_str(), &end, 10);
    if (arg.empty() || *end != '\0' || v < 0) throw DomainError("rerooting '" + text + "' needs a non-negative step count");
    return static_cast<int>(v);
  };
  if (head == "identity") return identity();
  if (head == "translate") return translate(group::parse(spec, arg));
  if (head == "lex-walk") return lex_walk(count());
  if (head == "directed-walk") return directed_walk(count());
  throw DomainError("unknown rerooting '" + text +
                    "' (expected identity, translate:<element>, lex-walk:<steps>, directed-walk:<steps>)");
}

PropertySpec PropertySeqSpec::at(int n) const {
  if (!windowed()) return base;
  PropertySpec out = base;
  out.k = n;
  return out;
}

std::string PropertySeqSpec::name() const {
  switch (base.kind) {
    case PropertyKind::MajorityWindow:
      return "majority";
    case PropertyKind::DirectedStepMajority:
      return "directed-majority";
    default:
      return base.name();
  }
}

PropertySeqSpec default_sequence(const SceneryModel& model) {
  if (model.kind == SceneryKind::FreeDirected) return {PropertySpec::directed_step_majority(0)};
  return {PropertySpec::majority_window(0)};
}

// The translation acts on the right, v -> v g, which is the equivariant
// choice for non-abelian groups and agrees with g v on the abelian models.
GroupElement reroot(const ReRootingSpec& r, const SceneryState& state, const GroupElement& v) {
  const GroupGraphSpec& spec = state.spec();
  switch (r.kind) {
    case ReRootingKind::Identity:
      return v;
    case ReRootingKind::TranslateIfConnected: {
      GroupElement target = group::multiply(spec, v, r.g);
      if (!state.in_ball(target)) return v;
      return state.connected(v, target) ? target : v;
    }
    case ReRootingKind::LexOpenWalk: {
      GroupElement w = v;
      const int gens = 2 * spec.generator_count();
      for (int i = 0; i < r.steps; ++i) {
        for (int s = 0; s < gens; ++s) {
          if (state.edge_open(w, s)) {
            w = group::multiply(spec, w, group::generator(spec, s));
            break;
          }
        }
      }
      return w;
    }
    case ReRootingKind::DirectedWalk: {
      GroupElement w = v;
      for (int i = 0; i < r.steps; ++i) w = state.directed_step(w);
      return w;
    }
  }
  return v;
}

VertexIndex reroot(const ReRootingSpec& r, const PercolationState& state, VertexIndex v) {
  const CayleyBall& ball = state.ball();
  if (v >= ball.vertex_count()) throw UsageError("vertex is not in the ball");
  switch (r.kind) {
    case ReRootingKind::Identity:
      return v;
    case ReRootingKind::TranslateIfConnected: {
      const auto target = ball.find(group::multiply(ball.spec(), ball.element(v), r.g));
      return target && state.clusters().same_cluster(v, *target) ? *target : v;
    }
    case ReRootingKind::LexOpenWalk: {
      VertexIndex w = v;
      for (int i = 0; i < r.steps; ++i) {
        // Incidences are sorted by signed generator.
        for (const Incidence& inc : ball.incident(w)) {
          if (state.config().is_open(inc.edge)) {
            w = inc.neighbor;
            break;
          }
        }
      }
      return w;
    }
    case ReRootingKind::DirectedWalk:
      throw ModelError("directed-walk rerooting exists only in the free-directed model");
  }
  return v;
}

namespace {

void check_sequence(const SceneryModel& model, const PropertySeqSpec& seq) {
  const auto kind = seq.base.kind;
  if (kind == PropertyKind::MajorityWindow && model.kind == SceneryKind::FreeDirected) {
    throw ModelError("majority windows are defined on two-line and z-zmod4; use directed-majority on free-directed");
  }
  if (kind == PropertyKind::DirectedStepMajority && model.kind != SceneryKind::FreeDirected) {
    throw ModelError("directed-majority is defined on the free-directed model only");
  }
  if (kind == PropertyKind::ContainsSubclusterAtThreshold) {
    throw ModelError("contains-subcluster needs a label field; scenery models have none");
  }
}

void check_rerooting(const SceneryModel& model, const ReRootingSpec& r) {
  if (r.kind == ReRootingKind::DirectedWalk && model.kind != SceneryKind::FreeDirected) {
    throw ModelError("directed-walk rerooting exists only in the free-directed model");
  }
  if (r.kind == ReRootingKind::TranslateIfConnected && !group::is_normal_form(model.graph(), r.g)) {
    throw DomainError("translation element is not a normal form of " + model.graph().name());
  }
  if (r.steps < 0) throw DomainError("rerooting step count must be non-negative");
}

int window_depth(const GroupGraphSpec& spec, std::span<const GroupElement> window) {
  int depth = 0;
  for (const auto& g : window) {
    if (!group::is_normal_form(spec, g)) throw DomainError("window element is not a normal form of " + spec.name());
    depth = std::max(depth, group::word_length(spec, g));
  }
  return depth;
}

GroupElement root_of(const SceneryModel& model) { return group::identity(model.graph()); }

bool unanimous(const std::vector<std::uint8_t>& values) {
  return std::adjacent_find(values.begin(), values.end(), std::not_equal_to<>()) == values.end();
}

}  // namespace

int required_radius(const SceneryModel& model, const PropertySeqSpec& seq, int n, int displacement) {
  if (n < 0) throw DomainError("window parameter n must be non-negative, got " + std::to_string(n));
  if (!seq.windowed()) return displacement + 1;
  if (model.kind == SceneryKind::ZxZmod4) return 2 * n + 2 + displacement;
  return 2 * n + 1 + displacement;
}

int resolve_radius(const SceneryModel& model, const PropertySeqSpec& seq, int n, int displacement) {
  const int needed = required_radius(model, seq, n, displacement);
  if (model.radius == 0) return needed;
  if (model.radius < needed) {
    throw ConfigError("radius R=" + std::to_string(model.radius) + " is too small for n=" + std::to_string(n) +
                      " with displacement " + std::to_string(displacement) + "; need R >= " + std::to_string(needed));
  }
  return model.radius;
}

EstimateWithCI acp_mismatch(const SceneryModel& model, const PropertySeqSpec& seq, const ReRootingSpec& r, int n,
                            std::size_t trials, std::uint64_t seed, int workers) {
  check_sequence(model, seq);
  check_rerooting(model, r);
  if (trials == 0) throw DomainError("trials must be at least 1");
  const int radius = resolve_radius(model, seq, n, r.displacement(model.graph()));
  if (r.kind == ReRootingKind::Identity) return EstimateWithCI::from_count(0, trials);
  const SceneryFactory factory(model, radius);
  const PropertySpec prop = seq.at(n);
  const GroupElement root = root_of(model);
  std::vector<std::uint8_t> mismatch(trials, 0);
  for_each_trial(trials, workers, [&](std::size_t, std::size_t t) {
    const auto state = factory.sample(trial_seed(seed, t));
    const GroupElement u = reroot(r, *state, root);
    if (u == root) return;
    mismatch[t] = state->property(prop, root) != state->property(prop, u);
  });
  return EstimateWithCI::from_count(static_cast<std::size_t>(std::count(mismatch.begin(), mismatch.end(), 1)), trials);
}

EstimateWithCI strong_indist_statistic(const SceneryModel& model, const PropertySeqSpec& seq, int n,
                                       std::span<const GroupElement> window, std::size_t trials, std::uint64_t seed,
                                       int workers) {
  check_sequence(model, seq);
  if (trials == 0) throw DomainError("trials must be at least 1");
  if (window.empty()) throw DomainError("window F must contain at least one vertex");
  const int radius = resolve_radius(model, seq, n, window_depth(model.graph(), window));
  const SceneryFactory factory(model, radius);
  const PropertySpec prop = seq.at(n);
  std::vector<std::uint8_t> agreed(trials, 0);
  for_each_trial(trials, workers, [&](std::size_t, std::size_t t) {
    const auto state = factory.sample(trial_seed(seed, t));
    std::vector<std::uint8_t> values;
    for (const auto& v : window) {
      if (state->touches_boundary(v)) values.push_back(state->property(prop, v));
    }
    agreed[t] = unanimous(values);
  });
  return EstimateWithCI::from_count(static_cast<std::size_t>(std::count(agreed.begin(), agreed.end(), 1)), trials);
}

ZxZmod4Result zxzmod4_mismatch(int n, int radius, std::size_t trials, std::uint64_t seed, int workers) {
  if (n < 0) throw DomainError("window parameter n must be non-negative, got " + std::to_string(n));
  if (trials == 0) throw DomainError("trials must be at least 1");
  const SceneryModel model{SceneryKind::ZxZmod4, radius};
  const int r = resolve_radius(model, {PropertySpec::majority_window(n)}, n, 0);
  const auto ball = build_ball(model.graph(), r);
  const VertexIndex origin = 0;
  const VertexIndex row1 = *ball->find(GroupElement{{0, 1}});
  const VertexIndex row3 = *ball->find(GroupElement{{0, 3}});
  std::vector<std::uint8_t> mismatch(trials, 0);
  std::vector<std::uint32_t> closed(trials, 0);
  for_each_trial(trials, workers, [&](std::size_t, std::size_t t) {
    const auto sample = sample_zxzmod4(ball, trial_seed(seed, t));
    for (EdgeIndex e = 0; e < ball->edge_count(); ++e) {
      if (is_horizontal(*ball, e) && !sample.config.is_open(e)) ++closed[t];
    }
    // The double line not containing the origin holds rows {1,2} when family
    // A is erased and rows {2,3} otherwise.
    const auto cl = clusters(sample.config);
    const VertexIndex other = cl.representative[cl.cluster_of[sample.erase_a ? row1 : row3]];
    const VertexIndex mine = cl.representative[cl.cluster_of[origin]];
    mismatch[t] = zxzmod4_majority(*ball, sample, ball->element(mine), n) !=
                  zxzmod4_majority(*ball, sample, ball->element(other), n);
  });
  ZxZmod4Result out;
  out.mismatch = EstimateWithCI::from_count(static_cast<std::size_t>(std::count(mismatch.begin(), mismatch.end(), 1)), trials);
  for (auto c : closed) out.closed_horizontal += c;
  return out;
}

std::optional<double> two_line_srw_bound(const SceneryModel& model, const ReRootingSpec& r, int n) {
  if (model.kind != SceneryKind::TwoLineMajority || r.kind != ReRootingKind::TranslateIfConnected) return std::nullopt;
  if (r.g.nf.size() != 2 || r.g.nf[1] != 0 || r.g.nf[0] == 0) return std::nullopt;
  const int k = std::abs(r.g.nf[0]);
  if (2 * n + 1 - k < 0) return std::nullopt;
  return srw_endpoint_prob(2 * n + 1 - k, -2 * k, 2 * k);
}

AcpEquivalenceReport acp_equivalence_report(const SceneryModel& model, const PropertySeqSpec& seq,
                                            const ReRootingSpec& r, int n, std::span<const GroupElement> window,
                                            std::size_t trials, std::uint64_t seed, int workers) {
  check_sequence(model, seq);
  check_rerooting(model, r);
  if (trials == 0) throw DomainError("trials must be at least 1");
  if (window.empty()) throw DomainError("window F must contain at least one vertex");
  const GroupGraphSpec spec = model.graph();
  const int radius = resolve_radius(model, seq, n, window_depth(spec, window) + r.displacement(spec));
  const SceneryFactory factory(model, radius);
  const PropertySpec prop = seq.at(n);
  const GroupElement root = root_of(model);
  const std::size_t m = window.size();

  struct TrialStats {
    std::uint8_t within = 0;
    std::uint8_t cross = 0;
    std::uint8_t connected = 0;
    std::uint8_t pair_agree = 0;
    std::uint32_t window_agree = 0;
  };
  std::vector<TrialStats> stats(trials);
  for_each_trial(trials, workers, [&](std::size_t, std::size_t t) {
    const auto state = factory.sample(trial_seed(seed, t));
    std::vector<std::uint8_t> values(m);
    for (std::size_t i = 0; i < m; ++i) values[i] = state->property(prop, window[i]);

    // Group the window into clusters by pairwise connection.
    std::vector<std::size_t> label(m);
    for (std::size_t i = 0; i < m; ++i) {
      label[i] = i;
      for (std::size_t j = 0; j < i; ++j) {
        if (label[j] == j && state->connected(window[i], window[j])) {
          label[i] = j;
          break;
        }
      }
    }
    bool within = true;
    for (std::size_t i = 0; i < m; ++i) within = within && values[i] == values[label[i]];

    std::vector<std::uint8_t> infinite;
    for (std::size_t i = 0; i < m; ++i) {
      if (state->touches_boundary(window[i])) infinite.push_back(values[i]);
    }

    const GroupElement target = r.kind == ReRootingKind::TranslateIfConnected
                                    ? group::multiply(spec, root, r.g)
                                    : reroot(r, *state, root);
    TrialStats& s = stats[t];
    s.within = within;
    s.cross = unanimous(infinite);
    if (state->in_ball(target) && state->connected(root, target)) {
      s.connected = 1;
      s.pair_agree = state->property(prop, root) == state->property(prop, target);
    }
    for (std::size_t i = 0; i < m; ++i) {
      const GroupElement u = reroot(r, *state, window[i]);
      s.window_agree += (u == window[i]) || values[i] == state->property(prop, u);
    }
  });

  std::size_t within = 0, cross = 0, connected = 0, pair_agree = 0, window_agree = 0;
  for (const auto& s : stats) {
    within += s.within;
    cross += s.cross;
    connected += s.connected;
    pair_agree += s.pair_agree;
    window_agree += s.window_agree;
  }
  AcpEquivalenceReport out;
  out.within_cluster = EstimateWithCI::from_count(within, trials);
  out.connected_pair = EstimateWithCI::from_count(pair_agree, connected);
  out.window_pairs = EstimateWithCI::from_count(window_agree, trials * m);
  out.cross_cluster = EstimateWithCI::from_count(cross, trials);
  return out;
}

std::vector<GroupElement> window_elements(const GroupGraphSpec& spec, int radius) {
  const auto ball = build_ball(spec, radius);
  std::vector<GroupElement> out;
  out.reserve(ball->vertex_count());
  for (VertexIndex v = 0; v < ball->vertex_count(); ++v) out.push_back(ball->element(v));
  return out;
}

}  // namespace perco
