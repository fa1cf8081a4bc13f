#include <algorithm>
#include <span>
#include <vector>

#include "perco/asymptotic.hpp"
#include "perco/errors.hpp"
#include "perco/kernels.hpp"

namespace perco {

std::vector<double> srw_distribution(int steps) {
  if (steps < 0) throw DomainError("walk length must be non-negative, got " + std::to_string(steps));
  const auto s = static_cast<std::size_t>(steps);
  // Index i holds position i - steps - 1; one zero pad on each side.
  std::vector<double> cur(2 * s + 3, 0.0);
  std::vector<double> next(2 * s + 3, 0.0);
  cur[s + 1] = 1.0;
  for (std::size_t t = 1; t <= s; ++t) {
    // After t steps the support is [-t, t]; only that range is recomputed.
    const std::size_t first = s + 1 - t;
    const std::size_t width = 2 * t + 1;
    kernels::srw_step(std::span<const double>(cur).subspan(first - 1, width + 2),
                      std::span<double>(next).subspan(first, width));
    std::swap(cur, next);
  }
  return {cur.begin() + 1, cur.end() - 1};
}

double srw_endpoint_prob(int steps, int lo, int hi) {
  const auto dist = srw_distribution(steps);
  lo = std::max(lo, -steps);
  hi = std::min(hi, steps);
  double sum = 0.0;
  for (int x = lo; x <= hi; ++x) sum += dist[static_cast<std::size_t>(x + steps)];
  return sum;
}

}  // namespace perco
