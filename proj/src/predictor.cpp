#include "volconf/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "volconf/error.hpp"

namespace volconf {

void PredictorConfig::validate() const {
  if (!(minwidth > 0.0 && minwidth <= 1.0)) fail(ErrorCode::InvalidArgument, "config: minwidth must lie in (0, 1]");
  if (!(mu >= 1.0) || !std::isfinite(mu)) fail(ErrorCode::InvalidArgument, "config: mu must be >= 1");
  if (horizon == 0) fail(ErrorCode::InvalidArgument, "config: horizon T must be >= 1");
  if (schedule.horizon() != horizon) {
    fail(ErrorCode::InvalidArgument, "config: schedule horizon " + std::to_string(schedule.horizon()) +
                                         " differs from T = " + std::to_string(horizon));
  }
}

std::size_t RunTrace::mistakes() const {
  return static_cast<std::size_t>(std::count_if(days.begin(), days.end(), [](const DayRecord& d) { return !d.covered; }));
}

std::size_t RunTrace::resets() const {
  return static_cast<std::size_t>(std::count_if(days.begin(), days.end(), [](const DayRecord& d) { return d.reset; }));
}

Predictor::Predictor(PredictorConfig config) : config_(std::move(config)) { config_.validate(); }

Interval Predictor::predict() {
  if (awaiting_update_) fail(ErrorCode::Protocol, "predict: previous prediction has not been resolved by update");
  if (day_ > config_.horizon) {
    fail(ErrorCode::OutOfRange, "predict: day " + std::to_string(day_) + " is past the horizon " +
                                    std::to_string(config_.horizon));
  }
  last_reset_ = false;
  last_base_.reset();

  // An empty prefix has coverage 1 by convention, so day 1 never resets.
  const std::size_t n = day_ - 1;
  if (n > 0) {
    const std::size_t allowed = config_.schedule.allowed_misses(n);
    if (misses_ > allowed) {
      const Interval base = min_window_interval(past_, n - allowed);
      current_ = centered(center(base), config_.mu * std::max(volume(base), config_.minwidth));
      misses_ = n - past_.count_in(current_);
      last_reset_ = true;
      last_base_ = base;
    }
  }
  played_ = clip_unit(current_);
  awaiting_update_ = true;
  return played_;
}

bool Predictor::update(double y) {
  if (!awaiting_update_) fail(ErrorCode::Protocol, "update: called without a pending predict");
  if (!(y >= 0.0 && y <= 1.0)) fail(ErrorCode::InvalidArgument, "update: observation must lie in [0, 1]");
  const bool covered = contains(played_, y);
  if (!contains(current_, y)) ++misses_;
  past_.insert(y);
  ++day_;
  awaiting_update_ = false;
  return covered;
}

RunTrace run(const PredictorConfig& config, std::span<const double> sequence) {
  if (sequence.size() != config.horizon) {
    fail(ErrorCode::InvalidArgument, "run: sequence length " + std::to_string(sequence.size()) +
                                         " differs from T = " + std::to_string(config.horizon));
  }
  Predictor predictor(config);
  RunTrace trace;
  trace.days.reserve(sequence.size());
  trace.phase_starts.push_back(1);
  for (double y : sequence) {
    DayRecord record;
    record.played = predictor.predict();
    record.reset = predictor.last_reset();
    record.base = predictor.last_base();
    if (record.reset) trace.phase_starts.push_back(predictor.day());
    record.observed = y;
    record.covered = predictor.update(y);
    trace.days.push_back(record);
  }
  return trace;
}

Interval halfway_conformal_set(const PredictorConfig& config, std::span<const double> prefix) {
  const std::size_t halfway = (config.horizon + 1) / 2;
  if (prefix.size() < halfway) {
    fail(ErrorCode::InvalidArgument, "halfway_conformal_set: prefix has " + std::to_string(prefix.size()) +
                                         " points, needs " + std::to_string(halfway));
  }
  Predictor predictor(config);
  for (std::size_t i = 0; i + 1 < halfway; ++i) {
    predictor.predict();
    predictor.update(prefix[i]);
  }
  return predictor.predict();
}

}  // namespace volconf
