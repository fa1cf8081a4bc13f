#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "perco/cluster_properties.hpp"
#include "perco/scenery.hpp"

namespace perco {

enum class ReRootingKind {
  Identity,
  TranslateIfConnected,  // v -> v g when an open path joins them, else v
  LexOpenWalk,           // follow the open edge with the smallest signed generator
  DirectedWalk,          // follow the s arrows (free-directed model only)
};

struct ReRootingSpec {
  ReRootingKind kind = ReRootingKind::Identity;
  GroupElement g;  // TranslateIfConnected
  int steps = 0;   // walks

  static ReRootingSpec identity() { return {}; }
  static ReRootingSpec translate(GroupElement g) { return {ReRootingKind::TranslateIfConnected, std::move(g), 0}; }
  static ReRootingSpec lex_walk(int steps) { return {ReRootingKind::LexOpenWalk, {}, steps}; }
  static ReRootingSpec directed_walk(int steps) { return {ReRootingKind::DirectedWalk, {}, steps}; }

  // Largest word-length change the rerooting can cause.
  int displacement(const GroupGraphSpec& spec) const;
  std::string name(const GroupGraphSpec& spec) const;
  // "identity", "translate:<element>", "lex-walk:<steps>", "directed-walk:<steps>"
  static ReRootingSpec parse(const GroupGraphSpec& spec, const std::string& text);
};

// The property sequence P_n. Windowed kinds take n from the sweep; any other
// PropertySpec is the constant sequence.
struct PropertySeqSpec {
  PropertySpec base = PropertySpec::majority_window(0);

  bool windowed() const {
    return base.kind == PropertyKind::MajorityWindow || base.kind == PropertyKind::DirectedStepMajority;
  }
  PropertySpec at(int n) const;
  std::string name() const;
};

// Default sequence of each model: the majority window, or the directed-step
// majority for the free-directed model.
PropertySeqSpec default_sequence(const SceneryModel& model);

// Always returns a vertex of v's cluster.
GroupElement reroot(const ReRootingSpec& r, const SceneryState& state, const GroupElement& v);
// Same rules on a plain percolation sample; translations leaving the ball
// return v, and DirectedWalk throws ModelError.
VertexIndex reroot(const ReRootingSpec& r, const PercolationState& state, VertexIndex v);

// Smallest radius for which every window and rerooting of the statistic
// stays inside the ball.
int required_radius(const SceneryModel& model, const PropertySeqSpec& seq, int n, int displacement);
// Checks model.radius against required_radius (ConfigError naming the needed
// R); returns the radius to use.
int resolve_radius(const SceneryModel& model, const PropertySeqSpec& seq, int n, int displacement);

EstimateWithCI acp_mismatch(const SceneryModel& model, const PropertySeqSpec& seq, const ReRootingSpec& r, int n,
                            std::size_t trials, std::uint64_t seed, int workers = 0);

// Frequency of trials in which P_n is unanimous on the vertices of F that
// lie in boundary-touching clusters.
EstimateWithCI strong_indist_statistic(const SceneryModel& model, const PropertySeqSpec& seq, int n,
                                       std::span<const GroupElement> window, std::size_t trials, std::uint64_t seed,
                                       int workers = 0);

struct ZxZmod4Result {
  EstimateWithCI mismatch;
  std::size_t closed_horizontal = 0;  // summed over all trials
};

// Disagreement of the majority property between the lowest-index vertices of
// the two surviving double lines. radius 0 selects 2n+2.
ZxZmod4Result zxzmod4_mismatch(int n, int radius, std::size_t trials, std::uint64_t seed, int workers = 0);

// Exact probability that a simple symmetric walk from 0 ends in [lo, hi]
// after `steps` steps.
double srw_endpoint_prob(int steps, int lo, int hi);
// Full endpoint distribution; entry i is position i - steps.
std::vector<double> srw_distribution(int steps);

// Bound on the two-line mismatch at in-line shift k from the walk comparison:
// P[walk of 2n+1-|k| steps ends in {-2|k|..2|k|}]. nullopt when it does not apply.
std::optional<double> two_line_srw_bound(const SceneryModel& model, const ReRootingSpec& r, int n);

struct AcpEquivalenceReport {
  // P_n constant on every cluster's trace in the window.
  EstimateWithCI within_cluster;
  // P_n(root) = P_n(target) given root and target connected; target is g for
  // translations and the rerooted root otherwise.
  EstimateWithCI connected_pair;
  // P_n(u) = P_n(reroot(u)) pooled over u in the window.
  EstimateWithCI window_pairs;
  // All boundary-touching clusters meeting the window agree.
  EstimateWithCI cross_cluster;
};

AcpEquivalenceReport acp_equivalence_report(const SceneryModel& model, const PropertySeqSpec& seq,
                                            const ReRootingSpec& r, int n, std::span<const GroupElement> window,
                                            std::size_t trials, std::uint64_t seed, int workers = 0);

// Group elements of word length at most `radius`, in ball order.
std::vector<GroupElement> window_elements(const GroupGraphSpec& spec, int radius);

}  // namespace perco
