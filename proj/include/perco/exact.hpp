#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "perco/percolation.hpp"

namespace perco {

// Enumeration is limited to 2^20 configurations.
inline constexpr std::size_t kExactEdgeCap = 20;

using Event = std::function<bool(const Configuration&)>;

// Named events for the command line and tests.
// "root-boundary": the anchor's cluster touches the boundary.
// "open-at-least:k": at least k open edges.
// "hash:key[:density]": a pseudo-random set of configurations containing
// each mask with probability `density` (default 1/2), chosen by `key`.
Event root_reaches_boundary();
Event open_at_least(std::size_t k);
Event hash_event(std::uint64_t key, double density = 0.5);
Event parse_event(const std::string& text);

// Bit e of the mask is the state of edge e.
std::uint32_t configuration_mask(const Configuration& config);
Configuration configuration_from_mask(const BallPtr& ball, std::uint32_t mask);

// Sum over all configurations of p^#open (1-p)^#closed 1_event. Throws
// SizeError above kExactEdgeCap edges.
double exact_measure(const BallPtr& ball, double p, const Event& event);

struct InsertionReport {
  double measure_b = 0.0;
  std::vector<double> measure_inserted;  // P_p[Pi^e(B)] per edge e
  bool all_positive = true;              // P_p[B] > 0 implies every entry > 0
};

// Exact check of P_p[B] > 0 => P_p[Pi^e(B)] > 0, where Pi^e forces edge e
// open. Requires p in (0,1).
InsertionReport insertion_tolerance_check(const BallPtr& ball, double p, const Event& event);

}  // namespace perco
