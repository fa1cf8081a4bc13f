#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "perco/cluster_properties.hpp"
#include "perco/group_graph.hpp"
#include "perco/percolation.hpp"
#include "perco/union_find.hpp"

namespace perco {

enum class SceneryKind {
  TwoLineMajority,  // fair bit per vertex of two disjoint lines, every line edge open
  ZxZmod4,          // Z x Z/4 with one rung family erased and the other fair
  FreeDirected,     // free group of rank 2, each vertex opens its edge to g s_g
};

struct SceneryModel {
  SceneryKind kind = SceneryKind::TwoLineMajority;
  int radius = 0;  // 0: smallest radius that fits the requested windows

  GroupGraphSpec graph() const;
  // "two-line", "z-zmod4", "free-directed"
  std::string name() const;
  static SceneryModel parse(const std::string& text);
};

// One sampled state of a scenery model, addressed by group elements. Elements
// outside the model's ball are never queried by the statistics (the radius
// preconditions guarantee it).
class SceneryState {
 public:
  virtual ~SceneryState() = default;

  virtual const GroupGraphSpec& spec() const = 0;
  int radius() const { return radius_; }
  bool in_ball(const GroupElement& g) const { return group::word_length(spec(), g) <= radius_; }

  // Edge {v, v s} for a signed generator s.
  virtual bool edge_open(const GroupElement& v, int signed_gen) const = 0;
  virtual bool connected(const GroupElement& u, const GroupElement& v) const = 0;
  virtual bool touches_boundary(const GroupElement& v) const = 0;
  // Cluster size, saturated at SIZE_MAX for clusters known to be infinite.
  virtual std::size_t cluster_size(const GroupElement& v) const = 0;
  // Next vertex of the directed path (FreeDirected only).
  virtual GroupElement directed_step(const GroupElement& v) const;

  // Property sequence member P_n at v; throws ModelError for kinds the model
  // does not define.
  virtual bool property(const PropertySpec& prop, const GroupElement& v) const;

 protected:
  explicit SceneryState(int radius) : radius_(radius) {}
  int radius_;
};

// Model-wide data shared by every trial (the materialized ball, if any).
class SceneryFactory {
 public:
  SceneryFactory(SceneryModel model, int radius);

  const SceneryModel& model() const { return model_; }
  int radius() const { return radius_; }
  const GroupGraphSpec& spec() const { return spec_; }
  const BallPtr& ball() const { return ball_; }  // null for lazy models

  std::unique_ptr<SceneryState> sample(std::uint64_t seed) const;

 private:
  SceneryModel model_;
  int radius_;
  GroupGraphSpec spec_;
  BallPtr ball_;
};

// Rung families of Z x Z/4: A = {(k,0)-(k,1), (k,2)-(k,3)}, B = {(k,1)-(k,2), (k,3)-(k,0)}.
struct ZxZmod4Sample {
  bool erase_a;  // the erased family; the other one is open with probability 1/2
  Configuration config;
};

ZxZmod4Sample sample_zxzmod4(const BallPtr& ball, std::uint64_t seed);
// Majority of open rungs of the surviving family next to v's row, over the
// columns k-n..k+n.
bool zxzmod4_majority(const CayleyBall& ball, const ZxZmod4Sample& sample, const GroupElement& v, int n);

// True for the horizontal edges (generator (1,0)).
bool is_horizontal(const CayleyBall& ball, EdgeIndex e);

// The directed model restricted to a materialized free:2 ball: edge {g, g s}
// is open iff s = s_g.
Configuration free_directed_config(const BallPtr& ball, std::uint64_t seed);
// Open edges leaving v along a positive generator.
int out_degree(const Configuration& config, VertexIndex v);

}  // namespace perco
