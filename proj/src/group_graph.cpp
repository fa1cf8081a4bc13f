#include "perco/group_graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "perco/errors.hpp"
#include "perco/hashing.hpp"

namespace perco {

namespace {

int floor_mod(int a, int n) {
  int r = a % n;
  return r < 0 ? r + n : r;
}

std::uint64_t family_tag(const GroupGraphSpec& spec) {
  return static_cast<std::uint64_t>(spec.family) * 1000003ULL +
         static_cast<std::uint64_t>(spec.param);
}

// Appends letter `g` to a reduced word, cancelling against the last letter.
void append_reduced(std::vector<std::int32_t>& word, std::int32_t g) {
  if (!word.empty() && word.back() == inverse_generator(g)) {
    word.pop_back();
  } else {
    word.push_back(g);
  }
}

// Saturating count helpers for the size pre-check.
constexpr double kHuge = 1e300;

double lattice_ball_size(int d, int radius) {
  // Number of integer points with l1 norm <= R: sum_k 2^k C(d,k) C(R,k).
  double total = 0.0;
  double binom_d = 1.0;
  double binom_r = 1.0;
  for (int k = 0; k <= std::min(d, radius); ++k) {
    if (k > 0) {
      binom_d *= static_cast<double>(d - k + 1) / k;
      binom_r *= static_cast<double>(radius - k + 1) / k;
    }
    total += std::ldexp(binom_d * binom_r, k);
  }
  return total;
}

}  // namespace

void GroupGraphSpec::validate() const {
  switch (family) {
    case GraphFamily::HypercubicLattice:
      if (param < 1 || param > 16) throw DomainError("lattice dimension must be in [1,16], got " + std::to_string(param));
      break;
    case GraphFamily::FreeGroup:
      if (param < 1 || param > 26) throw DomainError("free group rank must be in [1,26], got " + std::to_string(param));
      break;
    case GraphFamily::ZCrossZmod:
      if (param < 2 || param > 1'000'000) throw DomainError("Z x Z/nZ needs n in [2,10^6], got " + std::to_string(param));
      break;
    case GraphFamily::Line:
    case GraphFamily::TwoLine:
      break;
  }
}

int GroupGraphSpec::generator_count() const {
  switch (family) {
    case GraphFamily::HypercubicLattice:
    case GraphFamily::FreeGroup:
      return param;
    case GraphFamily::ZCrossZmod:
      return 2;
    case GraphFamily::Line:
    case GraphFamily::TwoLine:
      return 1;
  }
  return 0;
}

int GroupGraphSpec::tuple_size() const {
  switch (family) {
    case GraphFamily::HypercubicLattice:
      return param;
    case GraphFamily::FreeGroup:
      return 0;
    case GraphFamily::ZCrossZmod:
    case GraphFamily::TwoLine:
      return 2;
    case GraphFamily::Line:
      return 1;
  }
  return 0;
}

std::string GroupGraphSpec::name() const {
  switch (family) {
    case GraphFamily::HypercubicLattice:
      return "lattice:" + std::to_string(param);
    case GraphFamily::FreeGroup:
      return "free:" + std::to_string(param);
    case GraphFamily::ZCrossZmod:
      return "zxzmod:" + std::to_string(param);
    case GraphFamily::Line:
      return "line";
    case GraphFamily::TwoLine:
      return "two-line";
  }
  return "?";
}

GroupGraphSpec GroupGraphSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  auto number = [&]() {
    if (colon == std::string::npos) throw DomainError("graph '" + text + "' needs a parameter, e.g. " + head + ":2");
    const std::string tail = text.substr(colon + 1);
    char* end = nullptr;
    const long v = std::strtol(tail.c_str(), &end, 10);
    if (tail.empty() || *end != '\0') throw DomainError("graph parameter '" + tail + "' is not an integer");
    return static_cast<int>(v);
  };
  GroupGraphSpec spec;
  if (head == "lattice" || head == "z" || head == "zd") {
    spec = lattice(number());
  } else if (head == "free") {
    spec = free_group(number());
  } else if (head == "zxzmod" || head == "z-zmod") {
    spec = z_cross_zmod(number());
  } else if (head == "line" && colon == std::string::npos) {
    spec = line();
  } else if ((head == "two-line" || head == "twoline") && colon == std::string::npos) {
    spec = two_line();
  } else {
    throw DomainError("unknown graph '" + text + "' (expected lattice:d, free:r, zxzmod:n, line, two-line)");
  }
  spec.validate();
  return spec;
}

namespace group {

GroupElement identity(const GroupGraphSpec& spec) {
  return GroupElement{std::vector<std::int32_t>(static_cast<std::size_t>(spec.tuple_size()), 0)};
}

GroupElement generator(const GroupGraphSpec& spec, int signed_gen) {
  const int i = signed_gen / 2;
  const int sign = (signed_gen & 1) ? -1 : 1;
  GroupElement g = identity(spec);
  switch (spec.family) {
    case GraphFamily::FreeGroup:
      g.nf.push_back(signed_gen);
      break;
    case GraphFamily::HypercubicLattice:
      g.nf[static_cast<std::size_t>(i)] = sign;
      break;
    case GraphFamily::ZCrossZmod:
      if (i == 0) {
        g.nf[0] = sign;
      } else {
        g.nf[1] = floor_mod(sign, spec.param);
      }
      break;
    case GraphFamily::Line:
    case GraphFamily::TwoLine:
      g.nf[0] = sign;
      break;
  }
  return g;
}

GroupElement multiply(const GroupGraphSpec& spec, const GroupElement& a, const GroupElement& b) {
  GroupElement out;
  switch (spec.family) {
    case GraphFamily::FreeGroup:
      out.nf = a.nf;
      for (std::int32_t letter : b.nf) append_reduced(out.nf, letter);
      break;
    case GraphFamily::HypercubicLattice:
    case GraphFamily::Line:
      out.nf.resize(a.nf.size());
      for (std::size_t k = 0; k < a.nf.size(); ++k) out.nf[k] = a.nf[k] + b.nf[k];
      break;
    case GraphFamily::ZCrossZmod:
      out.nf = {a.nf[0] + b.nf[0], floor_mod(a.nf[1] + b.nf[1], spec.param)};
      break;
    case GraphFamily::TwoLine:
      out.nf = {a.nf[0] + b.nf[0], (a.nf[1] + b.nf[1]) & 1};
      break;
  }
  return out;
}

GroupElement inverse(const GroupGraphSpec& spec, const GroupElement& a) {
  GroupElement out;
  switch (spec.family) {
    case GraphFamily::FreeGroup:
      out.nf.assign(a.nf.rbegin(), a.nf.rend());
      for (auto& letter : out.nf) letter = inverse_generator(letter);
      break;
    case GraphFamily::HypercubicLattice:
    case GraphFamily::Line:
      out.nf = a.nf;
      for (auto& x : out.nf) x = -x;
      break;
    case GraphFamily::ZCrossZmod:
      out.nf = {-a.nf[0], floor_mod(-a.nf[1], spec.param)};
      break;
    case GraphFamily::TwoLine:
      out.nf = {-a.nf[0], a.nf[1]};
      break;
  }
  return out;
}

int word_length(const GroupGraphSpec& spec, std::span<const std::int32_t> nf) {
  switch (spec.family) {
    case GraphFamily::FreeGroup:
      return static_cast<int>(nf.size());
    case GraphFamily::HypercubicLattice:
    case GraphFamily::Line: {
      int total = 0;
      for (std::int32_t x : nf) total += std::abs(x);
      return total;
    }
    case GraphFamily::ZCrossZmod:
      return std::abs(nf[0]) + std::min(nf[1], spec.param - nf[1]);
    case GraphFamily::TwoLine:
      return std::abs(nf[0]);
  }
  return 0;
}

bool is_normal_form(const GroupGraphSpec& spec, const GroupElement& a) {
  switch (spec.family) {
    case GraphFamily::FreeGroup:
      for (std::size_t k = 0; k < a.nf.size(); ++k) {
        if (a.nf[k] < 0 || a.nf[k] >= 2 * spec.param) return false;
        if (k > 0 && a.nf[k] == inverse_generator(a.nf[k - 1])) return false;
      }
      return true;
    case GraphFamily::HypercubicLattice:
    case GraphFamily::Line:
      return static_cast<int>(a.nf.size()) == spec.tuple_size();
    case GraphFamily::ZCrossZmod:
      return a.nf.size() == 2 && a.nf[1] >= 0 && a.nf[1] < spec.param;
    case GraphFamily::TwoLine:
      return a.nf.size() == 2 && (a.nf[1] == 0 || a.nf[1] == 1);
  }
  return false;
}

std::uint64_t fingerprint(const GroupGraphSpec& spec, std::span<const std::int32_t> nf) {
  return perco::fingerprint(family_tag(spec), nf);
}

std::string to_string(const GroupGraphSpec& spec, std::span<const std::int32_t> nf) {
  if (spec.family == GraphFamily::FreeGroup) {
    if (nf.empty()) return "e";
    std::string out;
    for (std::int32_t letter : nf) {
      const char c = static_cast<char>('a' + letter / 2);
      out.push_back((letter & 1) ? static_cast<char>(std::toupper(c)) : c);
    }
    return out;
  }
  if (spec.family == GraphFamily::Line) return std::to_string(nf[0]);
  std::string out = "(";
  for (std::size_t k = 0; k < nf.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(nf[k]);
  }
  return out + ")";
}

GroupElement parse(const GroupGraphSpec& spec, const std::string& text) {
  if (spec.family == GraphFamily::FreeGroup) {
    GroupElement g;
    if (text == "e" || text.empty()) return g;
    for (char c : text) {
      const int i = std::tolower(static_cast<unsigned char>(c)) - 'a';
      if (i < 0 || i >= spec.param) throw DomainError("letter '" + std::string(1, c) + "' is not a generator of " + spec.name());
      append_reduced(g.nf, signed_generator(i, std::isupper(static_cast<unsigned char>(c)) != 0));
    }
    return g;
  }
  std::string body = text;
  if (!body.empty() && body.front() == '(') body.erase(body.begin());
  if (!body.empty() && body.back() == ')') body.pop_back();
  GroupElement g;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const long v = std::strtol(item.c_str(), &end, 10);
    if (item.empty() || *end != '\0') throw DomainError("'" + text + "' is not an element of " + spec.name());
    g.nf.push_back(static_cast<std::int32_t>(v));
  }
  if (static_cast<int>(g.nf.size()) != spec.tuple_size()) {
    // Line-like groups accept a bare shift along the first coordinate.
    if (g.nf.size() == 1 && (spec.family == GraphFamily::TwoLine || spec.family == GraphFamily::ZCrossZmod)) {
      g.nf.push_back(0);
    } else {
      throw DomainError("'" + text + "' has the wrong number of coordinates for " + spec.name());
    }
  }
  if (spec.family == GraphFamily::ZCrossZmod) g.nf[1] = floor_mod(g.nf[1], spec.param);
  if (spec.family == GraphFamily::TwoLine) g.nf[1] &= 1;
  return g;
}

}  // namespace group

std::size_t free_ball_size(int rank, int radius) {
  if (rank == 1) return static_cast<std::size_t>(2 * radius + 1);
  std::size_t total = 1;
  std::size_t level = 2 * static_cast<std::size_t>(rank);
  for (int r = 1; r <= radius; ++r) {
    total += level;
    level *= static_cast<std::size_t>(2 * rank - 1);
  }
  return total;
}

namespace {

double expected_ball_size(const GroupGraphSpec& spec, int radius) {
  switch (spec.family) {
    case GraphFamily::HypercubicLattice:
      return lattice_ball_size(spec.param, radius);
    case GraphFamily::FreeGroup: {
      if (spec.param == 1) return 2.0 * radius + 1.0;
      const double q = 2.0 * spec.param - 1.0;
      const double v = 1.0 + 2.0 * spec.param * (std::pow(q, radius) - 1.0) / (q - 1.0);
      return std::min(v, kHuge);
    }
    case GraphFamily::ZCrossZmod: {
      double total = 0.0;
      for (int y = 0; y < spec.param; ++y) {
        const int h = std::min(y, spec.param - y);
        if (h <= radius) total += 2.0 * (radius - h) + 1.0;
      }
      return total;
    }
    case GraphFamily::Line:
      return 2.0 * radius + 1.0;
    case GraphFamily::TwoLine:
      return 2.0 * (2.0 * radius + 1.0);
  }
  return 0.0;
}

}  // namespace

std::span<const std::int32_t> CayleyBall::normal_form(VertexIndex v) const {
  return std::span<const std::int32_t>(nf_pool_).subspan(nf_offset_[v], nf_offset_[v + 1] - nf_offset_[v]);
}

GroupElement CayleyBall::element(VertexIndex v) const {
  const auto nf = normal_form(v);
  return GroupElement{std::vector<std::int32_t>(nf.begin(), nf.end())};
}

std::span<const Incidence> CayleyBall::incident(VertexIndex v) const {
  return std::span<const Incidence>(adj_).subspan(adj_offset_[v], adj_offset_[v + 1] - adj_offset_[v]);
}

std::optional<VertexIndex> CayleyBall::find(std::span<const std::int32_t> nf) const {
  const auto it = index_.find(group::fingerprint(spec_, nf));
  if (it == index_.end()) return std::nullopt;
  const auto stored = normal_form(it->second);
  if (!std::equal(stored.begin(), stored.end(), nf.begin(), nf.end())) return std::nullopt;
  return it->second;
}

std::optional<EdgeIndex> CayleyBall::edge_between(VertexIndex u, VertexIndex v) const {
  for (const Incidence& inc : incident(u)) {
    if (inc.neighbor == v) return inc.edge;
  }
  return std::nullopt;
}

EdgeKey CayleyBall::edge_key(EdgeIndex e) const {
  const Edge& ed = edges_[e];
  const auto a = normal_form(ed.u);
  const auto b = normal_form(ed.v);
  if (std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end())) {
    return EdgeKey{element(ed.v), inverse_generator(ed.gen)};
  }
  return EdgeKey{element(ed.u), ed.gen};
}

std::uint64_t edge_key_fingerprint(const GroupGraphSpec& spec, const EdgeKey& key) {
  return mix64(group::fingerprint(spec, key.endpoint.nf) ^
               mix64(static_cast<std::uint64_t>(key.gen) + 0x5851f42d4c957f2dULL));
}

std::shared_ptr<const CayleyBall> build_ball(const GroupGraphSpec& spec, int radius,
                                             std::size_t vertex_cap) {
  spec.validate();
  if (radius < 0) throw DomainError("ball radius must be non-negative, got " + std::to_string(radius));
  const double expected = expected_ball_size(spec, radius);
  if (expected > static_cast<double>(vertex_cap)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "ball of radius " << radius << " in " << spec.name() << " has " << expected
        << " vertices, exceeding the cap of " << vertex_cap;
    throw SizeError(msg.str());
  }

  auto ball = std::make_shared<CayleyBall>();
  ball->spec_ = spec;
  ball->radius_ = radius;
  ball->nf_offset_.push_back(0);

  auto add_vertex = [&](const GroupElement& g, int depth) {
    const auto index = static_cast<VertexIndex>(ball->depth_.size());
    const auto [it, inserted] = ball->index_.emplace(group::fingerprint(spec, g.nf), index);
    if (!inserted) throw Error("normal-form fingerprint collision in " + spec.name());
    ball->nf_pool_.insert(ball->nf_pool_.end(), g.nf.begin(), g.nf.end());
    ball->nf_offset_.push_back(static_cast<std::uint32_t>(ball->nf_pool_.size()));
    ball->depth_.push_back(depth);
  };

  std::vector<GroupElement> level{group::identity(spec)};
  if (spec.family == GraphFamily::TwoLine) level.push_back(GroupElement{{0, 1}});
  const int gens = 2 * spec.generator_count();
  std::vector<GroupElement> generators;
  for (int g = 0; g < gens; ++g) generators.push_back(group::generator(spec, g));

  for (int depth = 0;; ++depth) {
    std::sort(level.begin(), level.end());
    level.erase(std::unique(level.begin(), level.end()), level.end());
    for (const auto& g : level) add_vertex(g, depth);
    if (depth == radius) break;
    std::vector<GroupElement> next;
    for (const auto& g : level) {
      for (const auto& s : generators) {
        GroupElement h = group::multiply(spec, g, s);
        if (group::word_length(spec, h) == depth + 1) next.push_back(std::move(h));
      }
    }
    level = std::move(next);
  }

  const auto n = static_cast<VertexIndex>(ball->depth_.size());
  for (VertexIndex v = 0; v < n; ++v) {
    if (ball->depth_[v] == radius) ball->boundary_.push_back(v);
  }

  for (VertexIndex u = 0; u < n; ++u) {
    const GroupElement gu = ball->element(u);
    for (int i = 0; i < spec.generator_count(); ++i) {
      const int s = signed_generator(i, false);
      const auto w = ball->find(group::multiply(spec, gu, generators[static_cast<std::size_t>(s)]));
      if (!w) continue;
      // Involutive generators (n = 2) would list the same edge from both ends.
      if (generators[static_cast<std::size_t>(s)] == generators[static_cast<std::size_t>(s + 1)] && *w < u) continue;
      ball->edges_.push_back(Edge{u, *w, s});
    }
  }

  std::vector<std::uint32_t> degree(n + 1, 0);
  for (const Edge& e : ball->edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  ball->adj_offset_.assign(n + 1, 0);
  for (VertexIndex v = 0; v < n; ++v) ball->adj_offset_[v + 1] = ball->adj_offset_[v] + degree[v];
  ball->adj_.resize(ball->adj_offset_[n]);
  std::vector<std::uint32_t> fill(ball->adj_offset_.begin(), ball->adj_offset_.end() - 1);
  for (EdgeIndex e = 0; e < ball->edges_.size(); ++e) {
    const Edge& ed = ball->edges_[e];
    ball->adj_[fill[ed.u]++] = Incidence{ed.v, e, ed.gen};
    ball->adj_[fill[ed.v]++] = Incidence{ed.u, e, inverse_generator(ed.gen)};
  }
  for (VertexIndex v = 0; v < n; ++v) {
    std::sort(ball->adj_.begin() + ball->adj_offset_[v], ball->adj_.begin() + ball->adj_offset_[v + 1],
              [](const Incidence& a, const Incidence& b) { return a.gen < b.gen; });
  }

  ball->edge_fp_.reserve(ball->edges_.size());
  for (EdgeIndex e = 0; e < ball->edges_.size(); ++e) {
    ball->edge_fp_.push_back(edge_key_fingerprint(spec, ball->edge_key(e)));
  }
  return ball;
}

std::optional<VertexIndex> act(const CayleyBall& ball, const GroupElement& g, VertexIndex v) {
  return ball.find(group::multiply(ball.spec(), g, ball.element(v)));
}

EdgeKey canonical_edge_key(const CayleyBall& ball, VertexIndex u, VertexIndex v) {
  const auto e = ball.edge_between(u, v);
  if (!e) throw UsageError("vertices " + std::to_string(u) + " and " + std::to_string(v) + " are not adjacent in the ball");
  return ball.edge_key(*e);
}

}  // namespace perco
