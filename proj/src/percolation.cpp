#include "perco/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "perco/errors.hpp"
#include "perco/hashing.hpp"
#include "perco/kernels.hpp"
#include "perco/parallel.hpp"
#include "perco/union_find.hpp"

namespace perco {

namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError(std::string(what) + " must lie in [0,1], got " + std::to_string(p));
  }
}

void require_transitive(const CayleyBall& ball) {
  if (!ball.spec().vertex_transitive()) {
    throw ModelError("estimator assumes a vertex-transitive graph; " + ball.spec().name() + " is not");
  }
}

void require_trials(std::size_t trials) {
  if (trials == 0) throw DomainError("trials must be at least 1");
}

}  // namespace

EdgeLabelField::EdgeLabelField(BallPtr ball, std::uint64_t seed, std::vector<double> labels)
    : ball_(std::move(ball)), seed_(seed), labels_(std::move(labels)) {}

Configuration::Configuration(BallPtr ball, bool all_open)
    : ball_(std::move(ball)), open_(ball_->edge_count(), all_open ? 1 : 0) {}

Configuration::Configuration(BallPtr ball, std::vector<std::uint8_t> open)
    : ball_(std::move(ball)), open_(std::move(open)) {
  if (open_.size() != ball_->edge_count()) {
    throw UsageError("configuration has " + std::to_string(open_.size()) + " bits for " +
                     std::to_string(ball_->edge_count()) + " edges");
  }
}

std::size_t Configuration::open_count() const {
  return static_cast<std::size_t>(std::count(open_.begin(), open_.end(), std::uint8_t{1}));
}

int Configuration::open_degree(VertexIndex v) const {
  int degree = 0;
  for (const Incidence& inc : ball_->incident(v)) degree += open_[inc.edge];
  return degree;
}

EstimateWithCI EstimateWithCI::from_count(std::size_t hits, std::size_t trials) {
  const double est = trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0;
  const double se = trials ? std::sqrt(est * (1.0 - est) / static_cast<double>(trials)) : 0.0;
  return {est, se, trials};
}

EstimateWithCI EstimateWithCI::from_samples(std::span<const double> samples) {
  const auto n = samples.size();
  if (n == 0) return {};
  double sum = 0.0;
  for (double x : samples) sum += x;
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double var = n > 1 ? ss / static_cast<double>(n - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(n)), n};
}

EdgeLabelField sample_labels(BallPtr ball, std::uint64_t seed) {
  std::vector<double> labels(ball->edge_count());
  kernels::uniform_labels(seed, ball->edge_fingerprints(), labels);
  return EdgeLabelField(std::move(ball), seed, std::move(labels));
}

Configuration threshold_config(const EdgeLabelField& labels, double p) {
  check_probability(p, "p");
  std::vector<std::uint8_t> open(labels.labels().size());
  kernels::threshold_below(labels.labels(), p, open);
  return Configuration(labels.ball_ptr(), std::move(open));
}

Configuration sample_bernoulli(BallPtr ball, double p, std::uint64_t seed) {
  check_probability(p, "p");
  return threshold_config(sample_labels(std::move(ball), seed), p);
}

ClusterDecomposition clusters(const Configuration& config) {
  const CayleyBall& ball = config.ball();
  const auto n = ball.vertex_count();
  DisjointSets sets(n);
  const auto edges = ball.edges();
  for (EdgeIndex e = 0; e < edges.size(); ++e) {
    if (config.is_open(e)) sets.unite(edges[e].u, edges[e].v);
  }
  ClusterDecomposition out;
  out.cluster_of.assign(n, 0);
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> id_of_root(n, kUnset);
  for (VertexIndex v = 0; v < n; ++v) {
    const auto r = sets.find(v);
    if (id_of_root[r] == kUnset) {
      id_of_root[r] = static_cast<std::uint32_t>(out.size.size());
      out.size.push_back(0);
      out.touches_boundary.push_back(0);
      out.representative.push_back(v);
    }
    const auto id = id_of_root[r];
    out.cluster_of[v] = id;
    ++out.size[id];
    if (ball.on_boundary(v)) out.touches_boundary[id] = 1;
  }
  return out;
}

Configuration insert_edge(const Configuration& config, EdgeIndex e) {
  if (e >= config.size()) throw UsageError("edge " + std::to_string(e) + " is not in the ball");
  Configuration out = config;
  out.set(e, true);
  return out;
}

std::size_t boundary_cluster_count(const ClusterDecomposition& decomposition) {
  return static_cast<std::size_t>(
      std::count(decomposition.touches_boundary.begin(), decomposition.touches_boundary.end(), std::uint8_t{1}));
}

std::size_t boundary_cluster_count(const Configuration& config) {
  return boundary_cluster_count(clusters(config));
}

EscapeSearch::EscapeSearch(const CayleyBall& ball)
    : ball_(&ball), stamp_(ball.vertex_count(), 0), best_(ball.vertex_count(), 0.0) {}

double EscapeSearch::run(std::uint64_t seed, VertexIndex anchor) {
  // stamp == epoch - 1: queued with best_ valid; stamp == epoch: settled.
  epoch_ += 2;
  if (epoch_ < 2) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 2;
  }
  const std::uint32_t queued = epoch_ - 1;
  const std::uint32_t settled = epoch_;
  const SeedKeys keys = seed_keys(seed);
  const auto fps = ball_->edge_fingerprints();
  auto greater = [](const std::pair<double, VertexIndex>& a, const std::pair<double, VertexIndex>& b) {
    return a.first > b.first || (a.first == b.first && a.second > b.second);
  };
  heap_.clear();
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  heap_.emplace_back(kNegInf, anchor);
  stamp_[anchor] = queued;
  best_[anchor] = kNegInf;
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), greater);
    const auto [value, v] = heap_.back();
    heap_.pop_back();
    if (stamp_[v] == settled || value > best_[v]) continue;
    stamp_[v] = settled;
    if (ball_->on_boundary(v)) return value;
    for (const Incidence& inc : ball_->incident(v)) {
      const VertexIndex w = inc.neighbor;
      if (stamp_[w] == settled) continue;
      const double candidate = std::max(value, uniform_label(keys, fps[inc.edge]));
      if (stamp_[w] != queued || candidate < best_[w]) {
        stamp_[w] = queued;
        best_[w] = candidate;
        heap_.emplace_back(candidate, w);
        std::push_heap(heap_.begin(), heap_.end(), greater);
      }
    }
  }
  // Unreachable for a non-empty boundary: every ball vertex connects to it.
  return std::numeric_limits<double>::infinity();
}

std::vector<double> escape_thresholds(const CayleyBall& ball, std::size_t trials, std::uint64_t seed,
                                      const SweepOptions& options) {
  require_trials(trials);
  if (options.anchor >= ball.vertex_count()) throw UsageError("anchor vertex is not in the ball");
  std::vector<double> out(trials);
  const auto slots = worker_slots(trials, options.workers);
  std::vector<EscapeSearch> searches;
  searches.reserve(slots);
  for (std::size_t w = 0; w < slots; ++w) searches.emplace_back(ball);
  for_each_trial(trials, options.workers, [&](std::size_t worker, std::size_t t) {
    out[t] = searches[worker].run(trial_seed(seed, t), options.anchor);
  });
  return out;
}

EstimateWithCI theta_hat(const CayleyBall& ball, double p, std::size_t trials, std::uint64_t seed,
                         const SweepOptions& options) {
  const double ps[] = {p};
  return theta_curve(ball, ps, trials, seed, options).front().estimate;
}

EstimateWithCI theta_hat(const GroupGraphSpec& spec, double p, int radius, std::size_t trials,
                         std::uint64_t seed, int workers) {
  check_probability(p, "p");
  if (!spec.vertex_transitive()) {
    throw ModelError("estimator assumes a vertex-transitive graph; " + spec.name() + " is not");
  }
  return theta_hat(*build_ball(spec, radius), p, trials, seed, SweepOptions{workers, 0});
}

std::vector<CurvePoint> theta_curve(const CayleyBall& ball, std::span<const double> ps, std::size_t trials,
                                    std::uint64_t seed, const SweepOptions& options) {
  require_transitive(ball);
  for (double p : ps) check_probability(p, "p");
  if (!std::is_sorted(ps.begin(), ps.end())) throw DomainError("p values must be sorted ascending");
  const auto escapes = escape_thresholds(ball, trials, seed, options);
  std::vector<CurvePoint> out;
  out.reserve(ps.size());
  for (double p : ps) {
    const auto hits = static_cast<std::size_t>(
        std::count_if(escapes.begin(), escapes.end(), [p](double x) { return x < p; }));
    out.push_back({p, EstimateWithCI::from_count(hits, trials)});
  }
  return out;
}

std::vector<CurvePoint> theta_curve(const GroupGraphSpec& spec, std::span<const double> ps, int radius,
                                    std::size_t trials, std::uint64_t seed, int workers) {
  if (!spec.vertex_transitive()) {
    throw ModelError("estimator assumes a vertex-transitive graph; " + spec.name() + " is not");
  }
  return theta_curve(*build_ball(spec, radius), ps, trials, seed, SweepOptions{workers, 0});
}

PcInterval pc_estimate(const CayleyBall& ball, std::size_t trials, double tol, std::uint64_t seed,
                       const SweepOptions& options) {
  require_transitive(ball);
  if (!(tol > 0.0)) throw DomainError("tol must be positive");
  auto escapes = escape_thresholds(ball, trials, seed, options);
  std::sort(escapes.begin(), escapes.end());
  auto theta = [&](double p) {
    const auto hits = std::lower_bound(escapes.begin(), escapes.end(), p) - escapes.begin();
    return static_cast<double>(hits) / static_cast<double>(trials);
  };
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (theta(mid) >= 0.5) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {lo, hi};
}

PcInterval pc_estimate(const GroupGraphSpec& spec, int radius, std::size_t trials, double tol,
                       std::uint64_t seed, int workers) {
  if (!spec.vertex_transitive()) {
    throw ModelError("estimator assumes a vertex-transitive graph; " + spec.name() + " is not");
  }
  return pc_estimate(*build_ball(spec, radius), trials, tol, seed, SweepOptions{workers, 0});
}

std::vector<CurvePoint> nclusters_curve(const BallPtr& ball, std::span<const double> ps, std::size_t trials,
                                        std::uint64_t seed, int workers) {
  require_trials(trials);
  for (double p : ps) check_probability(p, "p");
  std::vector<double> counts(ps.size() * trials);
  for_each_trial(trials, workers, [&](std::size_t, std::size_t t) {
    const EdgeLabelField labels = sample_labels(ball, trial_seed(seed, t));
    for (std::size_t k = 0; k < ps.size(); ++k) {
      counts[k * trials + t] = static_cast<double>(boundary_cluster_count(threshold_config(labels, ps[k])));
    }
  });
  std::vector<CurvePoint> out;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    out.push_back({ps[k], EstimateWithCI::from_samples(std::span<const double>(counts).subspan(k * trials, trials))});
  }
  return out;
}

double tree_theta_exact(int degree, double p) {
  if (degree < 3) throw DomainError("tree degree must be at least 3, got " + std::to_string(degree));
  check_probability(p, "p");
  const double branching = p * (degree - 1);
  // At or below criticality the minimal fixed point is zeta = 1.
  if (branching <= 1.0) return 0.0;
  double zeta = 0.0;
  for (int iter = 0; iter < 100'000'000; ++iter) {
    const double next = std::pow(1.0 - p + p * zeta, degree - 1);
    const bool done = std::abs(next - zeta) < 1e-12;
    zeta = next;
    if (done) break;
  }
  return 1.0 - std::pow(1.0 - p + p * zeta, degree);
}

}  // namespace perco
