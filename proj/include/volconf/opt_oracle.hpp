#pragma once

#include <cstddef>
#include <span>

#include "volconf/interval.hpp"
#include "volconf/predictor.hpp"

namespace volconf {

struct OptResult {
  double volume = 0.0;
  Interval witness;
};

/// Minimum volume of a single interval covering at least
/// T - floor(alpha * T) of the sequence, with its leftmost witness.
OptResult opt_volume(std::span<const double> sequence, double alpha);

/// Exhaustive reference for opt_volume: every interval whose endpoints are
/// sequence values, coverage recounted by a linear scan. O(T^3).
OptResult brute_force_opt(std::span<const double> sequence, double alpha);

struct Metrics {
  std::size_t horizon = 0;
  double coverage = 0.0;
  std::size_t mistakes = 0;
  double avg_volume = 0.0;
  double max_volume = 0.0;
  double opt_volume = 0.0;
  /// Volumes relative to max(opt_volume, minwidth).
  double mu_avg = 0.0;
  double mu_max = 0.0;
  std::size_t resets = 0;
};

Metrics compute_metrics(const RunTrace& trace, std::span<const double> sequence, double alpha,
                        const PredictorConfig& config);

}  // namespace volconf
