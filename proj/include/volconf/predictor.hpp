#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "volconf/interval.hpp"
#include "volconf/ranked_multiset.hpp"
#include "volconf/schedule.hpp"

namespace volconf {

struct PredictorConfig {
  double minwidth = 1e-3;
  double mu = 1.0;
  std::size_t horizon = 1;
  Schedule schedule = Schedule::arbitrary_order(0.0, 1);

  /// minwidth in (0, 1], mu >= 1, horizon >= 1 and equal to the schedule's.
  void validate() const;
};

struct DayRecord {
  Interval played;
  double observed = 0.0;
  bool covered = false;
  bool reset = false;
  /// Minimum-volume feasible interval chosen on a reset day.
  std::optional<Interval> base;
};

struct RunTrace {
  std::vector<DayRecord> days;
  /// 1-indexed first day of every phase; day 1 opens the first phase and every
  /// reset opens another.
  std::vector<std::size_t> phase_starts;

  std::size_t mistakes() const;
  std::size_t resets() const;
};

/// Online meta-algorithm with a strict predict-then-reveal protocol.
///
/// Keeps one interval `current` and replaces it only when its empirical
/// coverage over the revealed prefix drops below 1 - R(t-1). A replacement is
/// the minimum-volume feasible interval, widened to mu * max(vol, minwidth)
/// about its midpoint. The played set is current clipped to [0, 1].
class Predictor {
 public:
  explicit Predictor(PredictorConfig config);

  /// Interval for the next day. Throws Protocol if the previous prediction has
  /// not been resolved by update(), OutOfRange past the horizon.
  Interval predict();

  /// Reveals the day's observation; returns whether the played interval
  /// covered it. Throws Protocol unless predict() was called first.
  bool update(double y);

  /// 1-indexed day of the next prediction.
  std::size_t day() const { return day_; }
  const PredictorConfig& config() const { return config_; }
  const RankedMultiset& past() const { return past_; }
  const Interval& current() const { return current_; }
  std::size_t misses_of_current() const { return misses_; }

  /// Whether the pending (or most recent) predict() replaced current, and the
  /// base interval it used.
  bool last_reset() const { return last_reset_; }
  const std::optional<Interval>& last_base() const { return last_base_; }

 private:
  PredictorConfig config_;
  RankedMultiset past_;
  Interval current_{0.0, 0.0};
  Interval played_{0.0, 0.0};
  std::size_t misses_ = 0;
  std::size_t day_ = 1;
  bool awaiting_update_ = false;
  bool last_reset_ = false;
  std::optional<Interval> last_base_;
};

/// Runs the predictor over a full sequence of length config.horizon.
RunTrace run(const PredictorConfig& config, std::span<const double> sequence);

/// Trains on the first ceil(T/2) - 1 points and returns the day-ceil(T/2)
/// prediction, a split conformal set for later exchangeable points.
Interval halfway_conformal_set(const PredictorConfig& config, std::span<const double> prefix);

}  // namespace volconf
