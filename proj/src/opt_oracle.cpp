#include "volconf/opt_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "volconf/error.hpp"
#include "volconf/ranked_multiset.hpp"
#include "volconf/schedule.hpp"

namespace volconf {
namespace {

std::size_t required_cover(std::span<const double> sequence, double alpha) {
  if (sequence.empty()) fail(ErrorCode::InvalidArgument, "opt: empty sequence");
  if (!(alpha >= 0.0 && alpha <= 1.0)) fail(ErrorCode::InvalidArgument, "opt: alpha must lie in [0, 1]");
  const std::size_t budget = std::min(sequence.size(), miss_budget(alpha, sequence.size()));
  return sequence.size() - budget;
}

}  // namespace

OptResult opt_volume(std::span<const double> sequence, double alpha) {
  const std::size_t m = required_cover(sequence, alpha);
  std::vector<double> sorted(sequence.begin(), sequence.end());
  std::sort(sorted.begin(), sorted.end());
  const Interval witness = min_window_interval(sorted, m);
  return {volume(witness), witness};
}

OptResult brute_force_opt(std::span<const double> sequence, double alpha) {
  const std::size_t m = required_cover(sequence, alpha);
  if (m == 0) return {0.0, {0.0, 0.0}};
  OptResult best{2.0, {0.0, 0.0}};
  for (double a : sequence) {
    for (double b : sequence) {
      if (b < a) continue;
      const Interval candidate{a, b};
      const double width = volume(candidate);
      if (width > best.volume) continue;
      const auto covered = static_cast<std::size_t>(
          std::count_if(sequence.begin(), sequence.end(), [&](double y) { return contains(candidate, y); }));
      if (covered < m) continue;
      if (width < best.volume || (width == best.volume && a < best.witness.lo)) best = {width, candidate};
    }
  }
  return best;
}

Metrics compute_metrics(const RunTrace& trace, std::span<const double> sequence, double alpha,
                        const PredictorConfig& config) {
  if (trace.days.size() != sequence.size()) {
    fail(ErrorCode::InvalidArgument, "compute_metrics: trace and sequence lengths differ");
  }
  Metrics m;
  m.horizon = sequence.size();
  m.mistakes = trace.mistakes();
  m.resets = trace.resets();
  double total = 0.0;
  for (const DayRecord& day : trace.days) {
    const double v = volume(day.played);
    total += v;
    m.max_volume = std::max(m.max_volume, v);
  }
  const double horizon = static_cast<double>(m.horizon);
  m.coverage = 1.0 - static_cast<double>(m.mistakes) / horizon;
  m.avg_volume = total / horizon;
  m.opt_volume = opt_volume(sequence, alpha).volume;
  const double benchmark = std::max(m.opt_volume, config.minwidth);
  m.mu_avg = m.avg_volume / benchmark;
  m.mu_max = m.max_volume / benchmark;
  return m;
}

}  // namespace volconf
