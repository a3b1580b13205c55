#include "volconf/ranked_multiset.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "volconf/error.hpp"

namespace volconf {

void RankedMultiset::insert(double value) {
  if (std::isnan(value)) fail(ErrorCode::InvalidArgument, "RankedMultiset: NaN value");
  tree_.insert({value, next_id_++});
}

double RankedMultiset::select(std::size_t k) const {
  if (k >= tree_.size()) {
    fail(ErrorCode::OutOfRange,
         "RankedMultiset::select: rank " + std::to_string(k) + " >= size " + std::to_string(tree_.size()));
  }
  return tree_.find_by_order(k)->first;
}

std::size_t RankedMultiset::count_less(double value) const { return tree_.order_of_key({value, 0}); }

std::size_t RankedMultiset::count_at_most(double value) const {
  return tree_.order_of_key({value, std::numeric_limits<std::uint64_t>::max()});
}

std::size_t RankedMultiset::count_in(const Interval& interval) const {
  if (interval.hi < interval.lo) return 0;
  return count_at_most(interval.hi) - count_less(interval.lo);
}

std::vector<double> RankedMultiset::sorted() const {
  std::vector<double> out;
  out.reserve(tree_.size());
  for (const auto& key : tree_) out.push_back(key.first);
  return out;
}

Interval min_window_interval(std::span<const double> sorted_values, std::size_t m) {
  if (m == 0) return {0.0, 0.0};
  if (m > sorted_values.size()) {
    fail(ErrorCode::Infeasible, "min_window_interval: need " + std::to_string(m) + " points but only " +
                                    std::to_string(sorted_values.size()) + " are stored");
  }
  Interval best{sorted_values[0], sorted_values[m - 1]};
  double best_width = volume(best);
  for (std::size_t i = 1; i + m <= sorted_values.size(); ++i) {
    const double width = sorted_values[i + m - 1] - sorted_values[i];
    if (width < best_width) {
      best_width = width;
      best = {sorted_values[i], sorted_values[i + m - 1]};
    }
  }
  return best;
}

Interval min_window_interval(const RankedMultiset& values, std::size_t m) {
  if (m > values.size()) return min_window_interval(std::span<const double>{}, m);
  if (m == 0) return {0.0, 0.0};
  const std::vector<double> sorted = values.sorted();
  return min_window_interval(sorted, m);
}

}  // namespace volconf
