#include "perco/scenery.hpp"

#include <algorithm>
#include <limits>

#include "perco/errors.hpp"
#include "perco/hashing.hpp"
#include "perco/kernels.hpp"

namespace perco {

GroupGraphSpec SceneryModel::graph() const {
  switch (kind) {
    case SceneryKind::TwoLineMajority:
      return GroupGraphSpec::two_line();
    case SceneryKind::ZxZmod4:
      return GroupGraphSpec::z_cross_zmod(4);
    case SceneryKind::FreeDirected:
      return GroupGraphSpec::free_group(2);
  }
  return GroupGraphSpec::two_line();
}

std::string SceneryModel::name() const {
  switch (kind) {
    case SceneryKind::TwoLineMajority:
      return "two-line";
    case SceneryKind::ZxZmod4:
      return "z-zmod4";
    case SceneryKind::FreeDirected:
      return "free-directed";
  }
  return "?";
}

SceneryModel SceneryModel::parse(const std::string& text) {
  if (text == "two-line" || text == "twoline") return {SceneryKind::TwoLineMajority, 0};
  if (text == "z-zmod4" || text == "zxzmod4" || text == "zxzmod:4") return {SceneryKind::ZxZmod4, 0};
  if (text == "free-directed" || text == "directed") return {SceneryKind::FreeDirected, 0};
  throw DomainError("unknown model '" + text + "' (expected two-line, z-zmod4 or free-directed)");
}

GroupElement SceneryState::directed_step(const GroupElement&) const {
  throw ModelError("directed steps exist only in the free-directed model");
}

bool SceneryState::property(const PropertySpec& prop, const GroupElement& v) const {
  switch (prop.kind) {
    case PropertyKind::DegreeAtLeast: {
      int degree = 0;
      for (int s = 0; s < 2 * spec().generator_count(); ++s) degree += edge_open(v, s);
      return degree >= prop.k;
    }
    case PropertyKind::ClusterSizeAtLeast:
      return cluster_size(v) >= static_cast<std::size_t>(prop.k);
    case PropertyKind::ClusterTouchesBoundary:
      return touches_boundary(v);
    case PropertyKind::ContainsSubclusterAtThreshold:
      throw ModelError("contains-subcluster needs a label field; scenery models have none");
    case PropertyKind::MajorityWindow:
    case PropertyKind::DirectedStepMajority:
      break;
  }
  throw ModelError("property " + prop.name() + " is not defined on this model");
}

namespace {

std::size_t count_below_half(std::uint64_t seed, std::span<const std::uint64_t> keys) {
  std::vector<double> labels(keys.size());
  kernels::uniform_labels(seed, keys, labels);
  return static_cast<std::size_t>(std::count_if(labels.begin(), labels.end(), [](double x) { return x < 0.5; }));
}

class TwoLineState final : public SceneryState {
 public:
  TwoLineState(int radius, std::uint64_t seed) : SceneryState(radius), seed_(seed) {}

  const GroupGraphSpec& spec() const override { return spec_; }

  bool edge_open(const GroupElement& v, int s) const override {
    if (s < 0 || s > 1) return false;
    return in_ball(v) && in_ball(group::multiply(spec_, v, group::generator(spec_, s)));
  }
  bool connected(const GroupElement& u, const GroupElement& v) const override {
    return in_ball(u) && in_ball(v) && u.nf[1] == v.nf[1];
  }
  bool touches_boundary(const GroupElement&) const override { return true; }
  std::size_t cluster_size(const GroupElement&) const override { return 2 * static_cast<std::size_t>(radius_) + 1; }

  bool property(const PropertySpec& prop, const GroupElement& v) const override {
    if (prop.kind != PropertyKind::MajorityWindow) return SceneryState::property(prop, v);
    const int n = prop.k;
    std::vector<std::uint64_t> keys;
    keys.reserve(static_cast<std::size_t>(2 * n + 1));
    for (int j = -n; j <= n; ++j) {
      const std::int32_t nf[2] = {v.nf[0] + j, v.nf[1]};
      keys.push_back(group::fingerprint(spec_, nf));
    }
    return count_below_half(seed_, keys) > static_cast<std::size_t>(n);
  }

 private:
  GroupGraphSpec spec_ = GroupGraphSpec::two_line();
  std::uint64_t seed_;
};

class ZxZmod4State final : public SceneryState {
 public:
  ZxZmod4State(const BallPtr& ball, std::uint64_t seed)
      : SceneryState(ball->radius()), ball_(ball), sample_(sample_zxzmod4(ball, seed)),
        clusters_(perco::clusters(sample_.config)) {}

  const GroupGraphSpec& spec() const override { return ball_->spec(); }

  bool edge_open(const GroupElement& v, int s) const override {
    const auto e = edge(v, group::multiply(spec(), v, group::generator(spec(), s)));
    return e && sample_.config.is_open(*e);
  }
  bool connected(const GroupElement& u, const GroupElement& v) const override {
    return clusters_.same_cluster(index(u), index(v));
  }
  bool touches_boundary(const GroupElement& v) const override {
    return clusters_.touches_boundary[clusters_.cluster_of[index(v)]] != 0;
  }
  std::size_t cluster_size(const GroupElement& v) const override {
    return clusters_.size[clusters_.cluster_of[index(v)]];
  }

  bool property(const PropertySpec& prop, const GroupElement& v) const override {
    if (prop.kind != PropertyKind::MajorityWindow) return SceneryState::property(prop, v);
    return zxzmod4_majority(*ball_, sample_, v, prop.k);
  }

 private:
  VertexIndex index(const GroupElement& g) const {
    const auto v = ball_->find(g);
    if (!v) throw ConfigError("vertex " + group::to_string(spec(), g) + " lies outside the ball");
    return *v;
  }
  std::optional<EdgeIndex> edge(const GroupElement& a, const GroupElement& b) const {
    const auto u = ball_->find(a);
    const auto w = ball_->find(b);
    if (!u || !w) return std::nullopt;
    return ball_->edge_between(*u, *w);
  }

  BallPtr ball_;
  ZxZmod4Sample sample_;
  ClusterDecomposition clusters_;
};

// Lazy model: s_g is a pure function of (seed, g), so no ball is materialized.
class FreeDirectedState final : public SceneryState {
 public:
  FreeDirectedState(int radius, std::uint64_t seed) : SceneryState(radius), keys_(seed_keys(seed)) {}

  const GroupGraphSpec& spec() const override { return spec_; }

  int step_letter(const GroupElement& g) const {
    return uniform_label(keys_, group::fingerprint(spec_, g.nf)) < 0.5 ? 0 : 2;
  }
  GroupElement directed_step(const GroupElement& v) const override {
    return group::multiply(spec_, v, group::generator(spec_, step_letter(v)));
  }

  bool edge_open(const GroupElement& v, int s) const override {
    if ((s & 1) == 0) return step_letter(v) == s;
    const GroupElement w = group::multiply(spec_, v, group::generator(spec_, s));
    return step_letter(w) == inverse_generator(s);
  }

  // Each vertex has one out-edge and the free group has no cycles, so the
  // undirected path between u and v has a single sink where the two forward
  // paths meet, within dist(u, v) steps of each.
  bool connected(const GroupElement& u, const GroupElement& v) const override {
    const int dist = group::word_length(spec_, group::multiply(spec_, group::inverse(spec_, u), v));
    std::vector<GroupElement> path{u};
    for (int i = 0; i < dist; ++i) path.push_back(directed_step(path.back()));
    std::sort(path.begin(), path.end());
    GroupElement w = v;
    for (int i = 0;; ++i) {
      if (std::binary_search(path.begin(), path.end(), w)) return true;
      if (i == dist) return false;
      w = directed_step(w);
    }
  }
  bool touches_boundary(const GroupElement&) const override { return true; }
  std::size_t cluster_size(const GroupElement&) const override { return std::numeric_limits<std::size_t>::max(); }

  bool property(const PropertySpec& prop, const GroupElement& v) const override {
    if (prop.kind != PropertyKind::DirectedStepMajority) return SceneryState::property(prop, v);
    int a_steps = 0;
    GroupElement g = v;
    for (int i = 0; i < 2 * prop.k + 1; ++i) {
      const int s = step_letter(g);
      a_steps += s == 0;
      g = group::multiply(spec_, g, group::generator(spec_, s));
    }
    return a_steps > prop.k;
  }

 private:
  GroupGraphSpec spec_ = GroupGraphSpec::free_group(2);
  SeedKeys keys_;
};

constexpr std::uint64_t kCoinTag = 0x7a3c;

}  // namespace

SceneryFactory::SceneryFactory(SceneryModel model, int radius)
    : model_(model), radius_(radius), spec_(model.graph()) {
  if (radius < 0) throw DomainError("model radius must be non-negative");
  if (model.kind == SceneryKind::ZxZmod4) ball_ = build_ball(spec_, radius);
}

std::unique_ptr<SceneryState> SceneryFactory::sample(std::uint64_t seed) const {
  switch (model_.kind) {
    case SceneryKind::TwoLineMajority:
      return std::make_unique<TwoLineState>(radius_, seed);
    case SceneryKind::ZxZmod4:
      return std::make_unique<ZxZmod4State>(ball_, seed);
    case SceneryKind::FreeDirected:
      return std::make_unique<FreeDirectedState>(radius_, seed);
  }
  return nullptr;
}

bool is_horizontal(const CayleyBall& ball, EdgeIndex e) { return ball.edge(e).gen == 0; }

ZxZmod4Sample sample_zxzmod4(const BallPtr& ball, std::uint64_t seed) {
  if (ball->spec() != GroupGraphSpec::z_cross_zmod(4)) throw ModelError("the rung model lives on zxzmod:4");
  const bool erase_a = unit_from_bits(substream(seed, kCoinTag)) < 0.5;
  const auto labels = sample_labels(ball, seed);
  Configuration config(ball);
  for (EdgeIndex e = 0; e < ball->edge_count(); ++e) {
    if (is_horizontal(*ball, e)) {
      config.set(e, true);
      continue;
    }
    const Edge& ed = ball->edge(e);
    const bool family_a = ball->normal_form(ed.u)[1] % 2 == 0;
    config.set(e, family_a != erase_a && labels.label(e) < 0.5);
  }
  return {erase_a, std::move(config)};
}

bool zxzmod4_majority(const CayleyBall& ball, const ZxZmod4Sample& sample, const GroupElement& v, int n) {
  const int z = v.nf[1];
  // Lower row of the surviving rung pair next to row z.
  const int lower = sample.erase_a ? (z == 1 || z == 2 ? 1 : 3) : (z <= 1 ? 0 : 2);
  int open = 0;
  for (int c = v.nf[0] - n; c <= v.nf[0] + n; ++c) {
    const auto a = ball.find(GroupElement{{c, lower}});
    const auto b = ball.find(GroupElement{{c, (lower + 1) % 4}});
    const auto e = a && b ? ball.edge_between(*a, *b) : std::nullopt;
    if (!e) throw ConfigError("majority window leaves the ball of radius " + std::to_string(ball.radius()));
    open += sample.config.is_open(*e);
  }
  return open > n;
}

Configuration free_directed_config(const BallPtr& ball, std::uint64_t seed) {
  if (ball->spec() != GroupGraphSpec::free_group(2)) throw ModelError("the directed model lives on free:2");
  const FreeDirectedState state(ball->radius(), seed);
  Configuration config(ball);
  for (EdgeIndex e = 0; e < ball->edge_count(); ++e) {
    const Edge& ed = ball->edge(e);
    config.set(e, state.step_letter(ball->element(ed.u)) == ed.gen);
  }
  return config;
}

int out_degree(const Configuration& config, VertexIndex v) {
  int out = 0;
  for (const Incidence& inc : config.ball().incident(v)) {
    if ((inc.gen & 1) == 0 && config.is_open(inc.edge)) ++out;
  }
  return out;
}

}  // namespace perco
