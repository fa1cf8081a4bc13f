#include "perco/exact.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "perco/errors.hpp"
#include "perco/hashing.hpp"

namespace perco {

namespace {

void check_enumerable(const CayleyBall& ball) {
  if (ball.edge_count() > kExactEdgeCap) {
    throw SizeError("exact enumeration needs at most " + std::to_string(kExactEdgeCap) + " edges, ball has " +
                    std::to_string(ball.edge_count()));
  }
}

// weight[k] = p^k (1-p)^(m-k)
std::vector<double> popcount_weights(std::size_t m, double p) {
  std::vector<double> w(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    w[k] = std::pow(p, static_cast<double>(k)) * std::pow(1.0 - p, static_cast<double>(m - k));
  }
  return w;
}

// Indicator of the event over all 2^m masks.
std::vector<std::uint8_t> tabulate(const BallPtr& ball, const Event& event) {
  const std::size_t m = ball->edge_count();
  const std::uint32_t total = std::uint32_t{1} << m;
  std::vector<std::uint8_t> member(total);
  Configuration config(ball);
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    for (std::size_t e = 0; e < m; ++e) config.set(static_cast<EdgeIndex>(e), (mask >> e) & 1U);
    member[mask] = event(config) ? 1 : 0;
  }
  return member;
}

double measure_of(const std::vector<std::uint8_t>& member, const std::vector<double>& weights) {
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < member.size(); ++mask) {
    if (member[mask]) total += weights[static_cast<std::size_t>(std::popcount(mask))];
  }
  return total;
}

}  // namespace

std::uint32_t configuration_mask(const Configuration& config) {
  if (config.size() > 32) throw SizeError("configuration mask needs at most 32 edges");
  std::uint32_t mask = 0;
  for (EdgeIndex e = 0; e < config.size(); ++e) {
    if (config.is_open(e)) mask |= std::uint32_t{1} << e;
  }
  return mask;
}

Configuration configuration_from_mask(const BallPtr& ball, std::uint32_t mask) {
  if (ball->edge_count() > 32) throw SizeError("configuration mask needs at most 32 edges");
  Configuration config(ball);
  for (EdgeIndex e = 0; e < config.size(); ++e) config.set(e, (mask >> e) & 1U);
  return config;
}

double exact_measure(const BallPtr& ball, double p, const Event& event) {
  check_enumerable(*ball);
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0,1], got " + std::to_string(p));
  return measure_of(tabulate(ball, event), popcount_weights(ball->edge_count(), p));
}

InsertionReport insertion_tolerance_check(const BallPtr& ball, double p, const Event& event) {
  check_enumerable(*ball);
  if (!(p > 0.0 && p < 1.0)) throw DomainError("insertion check needs p in (0,1), got " + std::to_string(p));
  const std::size_t m = ball->edge_count();
  const auto member = tabulate(ball, event);
  const auto weights = popcount_weights(m, p);
  InsertionReport report;
  report.measure_b = measure_of(member, weights);
  std::vector<std::uint8_t> image(member.size());
  for (std::size_t e = 0; e < m; ++e) {
    std::fill(image.begin(), image.end(), std::uint8_t{0});
    const std::uint32_t bit = std::uint32_t{1} << e;
    for (std::uint32_t mask = 0; mask < member.size(); ++mask) {
      if (member[mask]) image[mask | bit] = 1;
    }
    const double measure = measure_of(image, weights);
    report.measure_inserted.push_back(measure);
    if (report.measure_b > 0.0 && !(measure > 0.0)) report.all_positive = false;
  }
  return report;
}

Event root_reaches_boundary() {
  return [](const Configuration& config) {
    const auto cl = clusters(config);
    return cl.touches_boundary[cl.root_cluster()] != 0;
  };
}

Event open_at_least(std::size_t k) {
  return [k](const Configuration& config) { return config.open_count() >= k; };
}

Event hash_event(std::uint64_t key, double density) {
  return [keys = seed_keys(key), density](const Configuration& config) {
    return uniform_label(keys, configuration_mask(config)) < density;
  };
}

Event parse_event(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "root-boundary" && arg.empty()) return root_reaches_boundary();
  try {
    if (head == "open-at-least" && !arg.empty()) {
      std::size_t used = 0;
      const auto k = std::stoull(arg, &used);
      if (used == arg.size()) return open_at_least(k);
    }
    if (head == "hash" && !arg.empty()) {
      const auto sep = arg.find(':');
      std::size_t used = 0;
      const auto key = std::stoull(arg.substr(0, sep), &used);
      double density = 0.5;
      if (sep != std::string::npos) density = std::stod(arg.substr(sep + 1));
      if (used == arg.substr(0, sep).size() && density >= 0.0 && density <= 1.0) return hash_event(key, density);
    }
  } catch (const std::logic_error&) {
    // fall through to the message below
  }
  throw DomainError("unknown event '" + text + "' (expected root-boundary, open-at-least:k or hash:key[:density])");
}

}  // namespace perco
