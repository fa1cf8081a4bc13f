#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "perco/group_graph.hpp"

namespace perco {

using BallPtr = std::shared_ptr<const CayleyBall>;

// One uniform [0,1) label per ball edge. label(e) is a pure function of the
// seed and the edge's canonical key, so balls of different radii over the same
// graph agree on shared edges. Invariance under the group holds in law only.
class EdgeLabelField {
 public:
  EdgeLabelField(BallPtr ball, std::uint64_t seed, std::vector<double> labels);

  const CayleyBall& ball() const { return *ball_; }
  const BallPtr& ball_ptr() const { return ball_; }
  std::uint64_t seed() const { return seed_; }
  double label(EdgeIndex e) const { return labels_[e]; }
  std::span<const double> labels() const { return labels_; }

 private:
  BallPtr ball_;
  std::uint64_t seed_;
  std::vector<double> labels_;
};

// Open/closed bit per ball edge.
class Configuration {
 public:
  explicit Configuration(BallPtr ball, bool all_open = false);
  Configuration(BallPtr ball, std::vector<std::uint8_t> open);

  const CayleyBall& ball() const { return *ball_; }
  const BallPtr& ball_ptr() const { return ball_; }
  std::size_t size() const { return open_.size(); }
  bool is_open(EdgeIndex e) const { return open_[e] != 0; }
  void set(EdgeIndex e, bool open) { open_[e] = open ? 1 : 0; }
  std::span<const std::uint8_t> bits() const { return open_; }
  std::span<std::uint8_t> mutable_bits() { return open_; }
  std::size_t open_count() const;
  // Number of open edges at v.
  int open_degree(VertexIndex v) const;

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.ball_ == b.ball_ && a.open_ == b.open_;
  }

 private:
  BallPtr ball_;
  std::vector<std::uint8_t> open_;
};

// Connected components of the open subgraph. Cluster ids are numbered in
// order of their lowest vertex index, so the anchor's cluster is always 0.
struct ClusterDecomposition {
  std::vector<std::uint32_t> cluster_of;
  std::vector<std::uint32_t> size;
  std::vector<std::uint8_t> touches_boundary;
  std::vector<VertexIndex> representative;  // lowest vertex index per cluster

  std::size_t cluster_count() const { return size.size(); }
  std::uint32_t root_cluster() const { return cluster_of.front(); }
  bool same_cluster(VertexIndex u, VertexIndex v) const { return cluster_of[u] == cluster_of[v]; }
};

struct EstimateWithCI {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;

  // Bernoulli estimand: std_error = sqrt(est (1 - est) / trials).
  static EstimateWithCI from_count(std::size_t hits, std::size_t trials);
  // Mean of per-trial samples with the sample standard error.
  static EstimateWithCI from_samples(std::span<const double> samples);
};

EdgeLabelField sample_labels(BallPtr ball, std::uint64_t seed);
// Edge open iff label < p. Throws DomainError unless p is in [0,1].
Configuration threshold_config(const EdgeLabelField& labels, double p);
Configuration sample_bernoulli(BallPtr ball, double p, std::uint64_t seed);
ClusterDecomposition clusters(const Configuration& config);
Configuration insert_edge(const Configuration& config, EdgeIndex e);
std::size_t boundary_cluster_count(const ClusterDecomposition& decomposition);
std::size_t boundary_cluster_count(const Configuration& config);

// Reusable per-worker buffers for the escape search.
class EscapeSearch {
 public:
  explicit EscapeSearch(const CayleyBall& ball);
  // Smallest p at which `anchor`'s cluster under the label field seeded by
  // `seed` touches the boundary: the minimum over anchor-to-boundary paths of
  // the largest label on the path. -infinity when the anchor is a boundary
  // vertex. For every p, "anchor reaches the boundary at threshold p" is
  // exactly "escape < p", which couples all p through one label field.
  double run(std::uint64_t seed, VertexIndex anchor = 0);

 private:
  const CayleyBall* ball_;
  std::vector<std::uint32_t> stamp_;
  std::vector<double> best_;
  std::vector<std::pair<double, VertexIndex>> heap_;
  std::uint32_t epoch_ = 0;
};

struct SweepOptions {
  int workers = 0;         // 0: PERCO_WORKERS or hardware concurrency
  VertexIndex anchor = 0;  // override of the anchor vertex
};

struct CurvePoint {
  double p;
  EstimateWithCI estimate;
};

struct PcInterval {
  double lo;
  double hi;
};

// Per-trial escape thresholds with trial seeds trial_seed(seed, t).
std::vector<double> escape_thresholds(const CayleyBall& ball, std::size_t trials, std::uint64_t seed,
                                      const SweepOptions& options = {});

// Fraction of trials in which the anchor's cluster touches the boundary.
// Refuses graphs that are not vertex-transitive (ModelError).
EstimateWithCI theta_hat(const CayleyBall& ball, double p, std::size_t trials, std::uint64_t seed,
                         const SweepOptions& options = {});
EstimateWithCI theta_hat(const GroupGraphSpec& spec, double p, int radius, std::size_t trials,
                         std::uint64_t seed, int workers = 0);

// One label field per trial shared by every p, so each trial's indicator and
// hence the curve are exactly non-decreasing. `ps` must be ascending.
std::vector<CurvePoint> theta_curve(const CayleyBall& ball, std::span<const double> ps, std::size_t trials,
                                    std::uint64_t seed, const SweepOptions& options = {});
std::vector<CurvePoint> theta_curve(const GroupGraphSpec& spec, std::span<const double> ps, int radius,
                                    std::size_t trials, std::uint64_t seed, int workers = 0);

// Bisection of p -> theta_hat(p) against 1/2 until the bracket is at most
// `tol` wide. A finite-radius proxy of the critical probability.
PcInterval pc_estimate(const CayleyBall& ball, std::size_t trials, double tol, std::uint64_t seed,
                       const SweepOptions& options = {});
PcInterval pc_estimate(const GroupGraphSpec& spec, int radius, std::size_t trials, double tol,
                       std::uint64_t seed, int workers = 0);

// Mean number of boundary-touching clusters at each p (coupled across p).
std::vector<CurvePoint> nclusters_curve(const BallPtr& ball, std::span<const double> ps, std::size_t trials,
                                        std::uint64_t seed, int workers = 0);

// Infinite-volume percolation probability of the degree-regular tree:
// zeta = (1 - p + p zeta)^(degree-1), theta = 1 - (1 - p + p zeta)^degree.
double tree_theta_exact(int degree, double p);

}  // namespace perco
