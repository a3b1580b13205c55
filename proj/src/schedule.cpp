#include "volconf/schedule.hpp"

#include <algorithm>
#include <cmath>

#include "volconf/error.hpp"

namespace volconf {
namespace {

constexpr double kFloorGuard = 1e-12;

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) fail(ErrorCode::InvalidArgument, "schedule: alpha must lie in [0, 1]");
}

void check_horizon(std::size_t horizon) {
  if (horizon == 0) fail(ErrorCode::InvalidArgument, "schedule: horizon T must be >= 1");
}

}  // namespace

Schedule Schedule::arbitrary_order(double alpha, std::size_t horizon) {
  check_alpha(alpha);
  check_horizon(horizon);
  Schedule s;
  s.kind_ = Kind::ArbitraryOrder;
  s.alpha_ = alpha;
  s.horizon_ = horizon;
  return s;
}

Schedule Schedule::exchangeable(double alpha, std::size_t horizon, double c) {
  check_alpha(alpha);
  check_horizon(horizon);
  if (!(c > 0.0) || !std::isfinite(c)) fail(ErrorCode::InvalidArgument, "schedule: C must be a finite value > 0");
  Schedule s;
  s.kind_ = Kind::Exchangeable;
  s.alpha_ = alpha;
  s.c_ = c;
  s.horizon_ = horizon;
  return s;
}

Schedule Schedule::custom_table(std::vector<double> rates) {
  check_horizon(rates.size());
  for (double r : rates) {
    if (std::isnan(r)) fail(ErrorCode::InvalidArgument, "schedule: custom rate is NaN");
  }
  Schedule s;
  s.kind_ = Kind::CustomTable;
  s.horizon_ = rates.size();
  s.rates_ = std::move(rates);
  return s;
}

double Schedule::rate(std::size_t t) const {
  if (t >= horizon_) {
    fail(ErrorCode::OutOfRange,
         "schedule: t = " + std::to_string(t) + " outside [0, " + std::to_string(horizon_ - 1) + "]");
  }
  switch (kind_) {
    case Kind::ArbitraryOrder:
      if (t == 0) return 1.0;
      return std::min(1.0, alpha_ * static_cast<double>(horizon_) / static_cast<double>(t));
    case Kind::Exchangeable:
      if (t == 0) return 1.0;
      return std::min(1.0, alpha_ + c_ * std::sqrt(std::log(static_cast<double>(horizon_)) / static_cast<double>(t)));
    case Kind::CustomTable:
      return std::clamp(rates_[t], 0.0, 1.0);
  }
  return 1.0;
}

std::size_t Schedule::allowed_misses(std::size_t n) const {
  if (n == 0) return 0;
  // R(n) * n = alpha * T exactly once the rate is below 1; forming the product
  // from alpha * T / n would reintroduce rounding.
  if (kind_ == Kind::ArbitraryOrder) return std::min(n, miss_budget(alpha_, horizon_));
  const double budget = std::floor(rate(n) * static_cast<double>(n) + kFloorGuard);
  return std::min(n, static_cast<std::size_t>(std::max(0.0, budget)));
}

std::string Schedule::name() const {
  switch (kind_) {
    case Kind::ArbitraryOrder:
      return "arbitrary";
    case Kind::Exchangeable:
      return "exchangeable";
    case Kind::CustomTable:
      return "custom";
  }
  return "unknown";
}

std::size_t miss_budget(double alpha, std::size_t horizon) {
  return static_cast<std::size_t>(std::floor(alpha * static_cast<double>(horizon) + kFloorGuard));
}

}  // namespace volconf
