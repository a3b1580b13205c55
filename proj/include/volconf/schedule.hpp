#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace volconf {

/// Allowable error rate R(t) over t = 0 .. T-1.
///
/// - ArbitraryOrder: R(0) = 1, R(t) = min(1, alpha * T / t).
/// - Exchangeable:   R(0) = 1, R(t) = min(1, alpha + C * sqrt(ln T / t)).
/// - CustomTable:    R(t) = clamp(rates[t], 0, 1).
class Schedule {
 public:
  enum class Kind { ArbitraryOrder, Exchangeable, CustomTable };

  static Schedule arbitrary_order(double alpha, std::size_t horizon);
  static Schedule exchangeable(double alpha, std::size_t horizon, double c = 1.0);
  static Schedule custom_table(std::vector<double> rates);

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double c() const { return c_; }
  std::size_t horizon() const { return horizon_; }
  const std::vector<double>& rates() const { return rates_; }

  /// Rate for a prefix of length t. Throws OutOfRange outside [0, T-1].
  double rate(std::size_t t) const;

  /// Largest number of misses over a prefix of n points that still counts as
  /// coverage >= 1 - R(n): floor(R(n) * n) with a 1e-12 guard, in [0, n].
  std::size_t allowed_misses(std::size_t n) const;

  std::string name() const;

 private:
  Schedule() = default;

  Kind kind_ = Kind::ArbitraryOrder;
  double alpha_ = 0.0;
  double c_ = 1.0;
  std::size_t horizon_ = 0;
  std::vector<double> rates_;
};

/// floor(alpha * T + 1e-12): misses a fixed interval may make over T days at
/// miscoverage alpha.
std::size_t miss_budget(double alpha, std::size_t horizon);

}  // namespace volconf
