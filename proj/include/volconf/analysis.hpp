#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "volconf/predictor.hpp"

namespace volconf {

/// Structure of resets after the single epoch that begins at day
/// floor(2 alpha T) + 2 under the arbitrary-order schedule. There any two
/// feasible intervals overlap, so each reset must grow the (unclipped)
/// current width by at least (mu - 1) / 2.
struct PhaseAuditReport {
  std::vector<std::size_t> reset_days;
  /// Unclipped widths of current right after each reset.
  std::vector<double> reset_volumes;
  std::size_t epoch_start = 0;
  bool growth_ok = true;
  std::size_t resets_in_epoch = 0;
  /// 1 + ceil(log_{(mu-1)/2}(1 / minwidth)), a derived bound.
  std::size_t reset_count_bound = 0;
  bool reset_count_ok = true;
};

/// Requires the ArbitraryOrder schedule and mu > 3.
PhaseAuditReport phase_audit(const RunTrace& trace, const PredictorConfig& config);

struct MistakeBoundReport {
  std::size_t mistakes = 0;
  /// (2 alpha T + 1) + (2 + ceil(log_{(mu-1)/2}(1 / minwidth))) (alpha T + 1).
  double bound = 0.0;
  bool ok = true;
};

MistakeBoundReport mistake_bound(const RunTrace& trace, const PredictorConfig& config, double alpha);

inline bool mistake_bound_check(const RunTrace& trace, const PredictorConfig& config, double alpha) {
  return mistake_bound(trace, config, alpha).ok;
}

/// Largest gap, over all intervals with endpoints at sequence values (and the
/// empty interval), between the miss rate on days [first, last] (1-indexed,
/// inclusive) and the miss rate on the whole sequence.
double uc_max_deviation(std::span<const double> sequence, std::size_t first, std::size_t last);

struct UcReport {
  std::size_t prefix_len = 0;
  std::size_t trials = 0;
  double median_deviation = 0.0;
  /// 95th percentile (nearest rank) over trials.
  double max_deviation = 0.0;
  double worst_deviation = 0.0;
  /// C * sqrt(ln T / t).
  double bound = 0.0;
  bool within = true;
};

/// Permutes the multiset `trials` times and records the prefix deviation
/// profile for every requested prefix length.
std::vector<UcReport> uc_profile(std::span<const double> multiset, std::span<const std::size_t> prefix_lens,
                                 std::size_t trials, double c, std::uint64_t seed);

/// log base (mu-1)/2 of 1 / minwidth, rounded up.
std::size_t epoch_reset_exponent(double mu, double minwidth);

}  // namespace volconf
