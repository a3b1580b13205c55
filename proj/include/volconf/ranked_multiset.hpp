#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include <ext/pb_ds/assoc_container.hpp>
#include <ext/pb_ds/tree_policy.hpp>

#include "volconf/interval.hpp"

namespace volconf {

/// Sorted multiset of observations with O(log n) insert, rank and select.
///
/// Backed by an order-statistic red-black tree keyed on (value, insertion id)
/// so duplicates keep distinct keys.
class RankedMultiset {
 public:
  void insert(double value);

  std::size_t size() const { return tree_.size(); }
  bool empty() const { return tree_.empty(); }

  /// k-th smallest value, 0-indexed, duplicates counted.
  double select(std::size_t k) const;

  /// Number of stored values strictly below / at most `value`.
  std::size_t count_less(double value) const;
  std::size_t count_at_most(double value) const;

  /// |{y : lo <= y <= hi}|.
  std::size_t count_in(const Interval& interval) const;

  /// All values in nondecreasing order, O(n).
  std::vector<double> sorted() const;

 private:
  using Key = std::pair<double, std::uint64_t>;
  using Tree = __gnu_pbds::tree<Key, __gnu_pbds::null_type, std::less<Key>, __gnu_pbds::rb_tree_tag,
                                __gnu_pbds::tree_order_statistics_node_update>;

  Tree tree_;
  std::uint64_t next_id_ = 0;
};

/// Minimum-volume closed interval holding at least `m` of the sorted values.
/// Leftmost window on ties; m == 0 yields [0, 0]. Throws Infeasible when
/// m exceeds the number of values.
Interval min_window_interval(std::span<const double> sorted_values, std::size_t m);

Interval min_window_interval(const RankedMultiset& values, std::size_t m);

}  // namespace volconf
