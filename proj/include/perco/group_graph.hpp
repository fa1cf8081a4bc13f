#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace perco {

enum class GraphFamily { HypercubicLattice, FreeGroup, ZCrossZmod, Line, TwoLine };

// Which Cayley graph: a group together with its standard generating set.
//
// `param` is the dimension d for HypercubicLattice, the rank for FreeGroup and
// the modulus n for ZCrossZmod; it is ignored for Line and TwoLine.
//
// TwoLine is the group Z x Z/2Z with only the generator (1,0) drawn as edges,
// i.e. two disjoint copies of the Line graph. The group still acts on both
// lines (the element (0,1) swaps them), but the graph is not connected.
struct GroupGraphSpec {
  GraphFamily family = GraphFamily::Line;
  int param = 1;

  static GroupGraphSpec lattice(int d) { return {GraphFamily::HypercubicLattice, d}; }
  static GroupGraphSpec free_group(int rank) { return {GraphFamily::FreeGroup, rank}; }
  static GroupGraphSpec z_cross_zmod(int n) { return {GraphFamily::ZCrossZmod, n}; }
  static GroupGraphSpec line() { return {GraphFamily::Line, 1}; }
  static GroupGraphSpec two_line() { return {GraphFamily::TwoLine, 1}; }

  // Throws DomainError when the parameter is out of range.
  void validate() const;

  // Number of generators drawn as edges (inverses not counted).
  int generator_count() const;
  // Length of a normal form tuple; 0 for free groups (variable length).
  int tuple_size() const;
  bool vertex_transitive() const { return family != GraphFamily::TwoLine; }

  // "lattice:2", "free:2", "zxzmod:4", "line", "two-line".
  std::string name() const;
  static GroupGraphSpec parse(const std::string& text);

  friend bool operator==(const GroupGraphSpec&, const GroupGraphSpec&) = default;
};

// Signed generator ids: 2i is generator i, 2i+1 its inverse. For free groups
// this is also the letter code, so letters are ordered a < a^-1 < b < b^-1.
inline constexpr int signed_generator(int i, bool inverse) { return 2 * i + (inverse ? 1 : 0); }
inline constexpr int inverse_generator(int g) { return g ^ 1; }

// A group element in normal form: an integer tuple for the abelian families,
// a freely reduced word of letter codes for free groups.
struct GroupElement {
  std::vector<std::int32_t> nf;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement& a, const GroupElement& b) {
    return std::lexicographical_compare_three_way(a.nf.begin(), a.nf.end(), b.nf.begin(),
                                                  b.nf.end());
  }
};

namespace group {

GroupElement identity(const GroupGraphSpec& spec);
GroupElement generator(const GroupGraphSpec& spec, int signed_gen);
GroupElement multiply(const GroupGraphSpec& spec, const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupGraphSpec& spec, const GroupElement& a);
// Word length with respect to the standard generators. TwoLine measures |x|
// on either line, so each line is a ball around its own anchor.
int word_length(const GroupGraphSpec& spec, std::span<const std::int32_t> nf);
inline int word_length(const GroupGraphSpec& spec, const GroupElement& a) {
  return word_length(spec, a.nf);
}
bool is_normal_form(const GroupGraphSpec& spec, const GroupElement& a);
std::uint64_t fingerprint(const GroupGraphSpec& spec, std::span<const std::int32_t> nf);

// Lattice/TwoLine/ZxZmod: "(1,-2)"; Line: "3"; free groups: "aB" with upper
// case for inverse letters and "e" for the identity.
std::string to_string(const GroupGraphSpec& spec, std::span<const std::int32_t> nf);
inline std::string to_string(const GroupGraphSpec& spec, const GroupElement& a) {
  return to_string(spec, a.nf);
}
// Inverse of to_string; reduces free words and wraps the Z/nZ coordinate.
GroupElement parse(const GroupGraphSpec& spec, const std::string& text);

}  // namespace group

using VertexIndex = std::uint32_t;
using EdgeIndex = std::uint32_t;

// An edge {u, u*s}: `gen` is the positive generator id traversed from u to v.
struct Edge {
  VertexIndex u;
  VertexIndex v;
  int gen;
};

// Stable identity of an abstract edge, independent of the ball radius.
struct EdgeKey {
  GroupElement endpoint;  // lexicographically smaller endpoint
  int gen;                // signed generator traversed from `endpoint`

  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
};

struct Incidence {
  VertexIndex neighbor;
  EdgeIndex edge;
  int gen;  // signed generator traversed from the owning vertex
};

inline constexpr std::size_t kDefaultVertexCap = 10'000'000;

// Induced subgraph of a Cayley graph on the word-length ball of radius R.
// Vertex 0 is the anchor; vertices are ordered by word length, then
// lexicographically by normal form. Immutable after construction.
class CayleyBall {
 public:
  const GroupGraphSpec& spec() const { return spec_; }
  int radius() const { return radius_; }
  std::size_t vertex_count() const { return depth_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  std::span<const std::int32_t> normal_form(VertexIndex v) const;
  GroupElement element(VertexIndex v) const;
  int depth(VertexIndex v) const { return depth_[v]; }
  bool on_boundary(VertexIndex v) const { return depth_[v] == radius_; }
  std::span<const VertexIndex> boundary() const { return boundary_; }

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeIndex e) const { return edges_[e]; }
  std::span<const Incidence> incident(VertexIndex v) const;
  std::span<const std::uint64_t> edge_fingerprints() const { return edge_fp_; }
  EdgeKey edge_key(EdgeIndex e) const;

  std::optional<VertexIndex> find(std::span<const std::int32_t> nf) const;
  std::optional<VertexIndex> find(const GroupElement& g) const { return find(g.nf); }
  // Edge joining u and v, if both are in the ball and adjacent.
  std::optional<EdgeIndex> edge_between(VertexIndex u, VertexIndex v) const;

 private:
  friend std::shared_ptr<const CayleyBall> build_ball(const GroupGraphSpec&, int, std::size_t);

  GroupGraphSpec spec_;
  int radius_ = 0;
  std::vector<std::int32_t> nf_pool_;
  std::vector<std::uint32_t> nf_offset_;
  std::vector<int> depth_;
  std::vector<VertexIndex> boundary_;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> edge_fp_;
  std::vector<std::uint32_t> adj_offset_;
  std::vector<Incidence> adj_;
  std::unordered_map<std::uint64_t, VertexIndex> index_;
};

// Throws SizeError naming the count once the ball would exceed `vertex_cap`.
std::shared_ptr<const CayleyBall> build_ball(const GroupGraphSpec& spec, int radius,
                                             std::size_t vertex_cap = kDefaultVertexCap);

// Left action g*v restricted to the ball; nullopt marks "outside the ball".
std::optional<VertexIndex> act(const CayleyBall& ball, const GroupElement& g, VertexIndex v);

EdgeKey canonical_edge_key(const CayleyBall& ball, VertexIndex u, VertexIndex v);
std::uint64_t edge_key_fingerprint(const GroupGraphSpec& spec, const EdgeKey& key);

// Closed-form vertex count of a free-group ball: 1 + 2r((2r-1)^R - 1)/(2r-2).
std::size_t free_ball_size(int rank, int radius);

}  // namespace perco
