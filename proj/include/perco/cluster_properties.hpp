#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "perco/percolation.hpp"

namespace perco {

enum class PropertyKind {
  DegreeAtLeast,                  // open degree >= k
  ClusterSizeAtLeast,             // cluster has >= k vertices
  ClusterTouchesBoundary,         // finite proxy for an infinite cluster
  ContainsSubclusterAtThreshold,  // p1-cluster contains a boundary-touching p0-cluster
  MajorityWindow,                 // scenery models only, window 2k+1
  DirectedStepMajority,           // directed model only, first 2k+1 steps
};

struct PropertySpec {
  PropertyKind kind = PropertyKind::ClusterTouchesBoundary;
  int k = 0;
  double p0 = 0.0;

  static PropertySpec degree_at_least(int k) { return {PropertyKind::DegreeAtLeast, k, 0.0}; }
  static PropertySpec cluster_size_at_least(int m) { return {PropertyKind::ClusterSizeAtLeast, m, 0.0}; }
  static PropertySpec touches_boundary() { return {PropertyKind::ClusterTouchesBoundary, 0, 0.0}; }
  static PropertySpec contains_subcluster(double p0) { return {PropertyKind::ContainsSubclusterAtThreshold, 0, p0}; }
  static PropertySpec majority_window(int n) { return {PropertyKind::MajorityWindow, n, 0.0}; }
  static PropertySpec directed_step_majority(int n) { return {PropertyKind::DirectedStepMajority, n, 0.0}; }

  // True for the kinds that are constant on clusters by construction.
  bool is_cluster_property() const;
  // Kinds evaluated on plain percolation states (not scenery models).
  bool is_percolation_property() const;

  // "degree:4", "cluster-size:3", "touches-boundary", "contains-subcluster:0.45"
  // (also "contains-subcluster:p0=0.45"), "majority:8", "directed-majority:8".
  std::string name() const;
  static PropertySpec parse(const std::string& text);
};

// A sample as seen by properties: a configuration, or a label field together
// with the threshold p1 that defines the percolation. Clusters are computed
// once on construction.
class PercolationState {
 public:
  explicit PercolationState(Configuration config);
  PercolationState(EdgeLabelField labels, double p1);

  const CayleyBall& ball() const { return config_.ball(); }
  const Configuration& config() const { return config_; }
  const ClusterDecomposition& clusters() const { return clusters_; }
  const EdgeLabelField* labels() const { return labels_ ? &*labels_ : nullptr; }
  double p1() const { return p1_; }

 private:
  std::optional<EdgeLabelField> labels_;
  double p1_ = 1.0;
  Configuration config_;
  ClusterDecomposition clusters_;
};

// Throws UsageError when the state cannot support the property kind.
bool eval_property(const PropertySpec& prop, const PercolationState& state, VertexIndex v);
std::vector<std::uint8_t> eval_all(const PropertySpec& prop, const PercolationState& state);

struct Agreement {
  bool plus;   // every vertex of S satisfies the property
  bool minus;  // no vertex of S satisfies it
  bool pm;     // plus or minus
};

Agreement agreement(std::span<const std::uint8_t> values, std::span<const VertexIndex> vertices);
Agreement agreement(const PropertySpec& prop, const PercolationState& state, std::span<const VertexIndex> vertices);

struct PropertyEvalReport {
  std::vector<std::uint8_t> values;          // per vertex
  std::vector<std::uint8_t> cluster_constant;  // per cluster
  Agreement on_window;
};

PropertyEvalReport evaluate_report(const PropertySpec& prop, const PercolationState& state,
                                   std::span<const VertexIndex> window);

// Number of sampled states holding a cluster on which the property is not
// constant. `p` is the percolation parameter (p1 for two-threshold kinds).
std::size_t check_cluster_property(const PropertySpec& prop, const BallPtr& ball, double p, std::size_t trials,
                                   std::uint64_t seed, int workers = 0);
std::size_t check_cluster_property(const PropertySpec& prop, const GroupGraphSpec& spec, double p, int radius,
                                   std::size_t trials, std::uint64_t seed, int workers = 0);

// Frequency of trials in which all boundary-touching clusters that meet the
// ball of radius `window_radius` agree on the property. One representative
// (lowest vertex index) per cluster is evaluated.
EstimateWithCI indist_statistic(const BallPtr& ball, double p1, const PropertySpec& prop, int window_radius,
                                std::size_t trials, std::uint64_t seed, int workers = 0);
EstimateWithCI indist_statistic(const GroupGraphSpec& spec, double p1, const PropertySpec& prop, int radius,
                                int window_radius, std::size_t trials, std::uint64_t seed, int workers = 0);

// Left translate of a sample: (g w)(g e) = w(e). Edges whose preimage lies
// outside the ball are closed (labels set just below 1).
Configuration translate_configuration(const Configuration& config, const GroupElement& g);
EdgeLabelField translate_labels(const EdgeLabelField& labels, const GroupElement& g);

}  // namespace perco
