#include "volconf/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "volconf/error.hpp"
#include "volconf/generators.hpp"

namespace volconf {
namespace {

constexpr double kGrowthTolerance = 1e-12;

void require_arbitrary_regime(const PredictorConfig& config, const char* who) {
  if (config.schedule.kind() != Schedule::Kind::ArbitraryOrder) {
    fail(ErrorCode::InvalidArgument, std::string(who) + ": requires the arbitrary-order schedule");
  }
  if (!(config.mu > 3.0)) fail(ErrorCode::InvalidArgument, std::string(who) + ": requires mu > 3");
}

}  // namespace

std::size_t epoch_reset_exponent(double mu, double minwidth) {
  const double exponent = std::log(1.0 / minwidth) / std::log((mu - 1.0) / 2.0);
  return static_cast<std::size_t>(std::max(0.0, std::ceil(exponent - 1e-12)));
}

PhaseAuditReport phase_audit(const RunTrace& trace, const PredictorConfig& config) {
  require_arbitrary_regime(config, "phase_audit");
  const double alpha = config.schedule.alpha();
  const double horizon = static_cast<double>(config.horizon);

  PhaseAuditReport report;
  report.epoch_start = static_cast<std::size_t>(std::floor(2.0 * alpha * horizon + 1e-12)) + 2;
  report.reset_count_bound = 1 + epoch_reset_exponent(config.mu, config.minwidth);

  double previous = -1.0;
  for (std::size_t i = 0; i < trace.days.size(); ++i) {
    const DayRecord& day = trace.days[i];
    if (!day.reset || !day.base) continue;
    const std::size_t day_number = i + 1;
    const double width = config.mu * std::max(volume(*day.base), config.minwidth);
    report.reset_days.push_back(day_number);
    report.reset_volumes.push_back(width);
    if (day_number < report.epoch_start) continue;
    ++report.resets_in_epoch;
    if (previous >= 0.0 && width < 0.5 * (config.mu - 1.0) * previous - kGrowthTolerance) report.growth_ok = false;
    previous = width;
  }
  report.reset_count_ok = report.resets_in_epoch <= report.reset_count_bound;
  return report;
}

MistakeBoundReport mistake_bound(const RunTrace& trace, const PredictorConfig& config, double alpha) {
  require_arbitrary_regime(config, "mistake_bound");
  const double budget = alpha * static_cast<double>(config.horizon);
  const double phases = 2.0 + static_cast<double>(epoch_reset_exponent(config.mu, config.minwidth));
  MistakeBoundReport report;
  report.mistakes = trace.mistakes();
  report.bound = (2.0 * budget + 1.0) + phases * (budget + 1.0);
  report.ok = static_cast<double>(report.mistakes) <= report.bound + 1e-9;
  return report;
}

namespace {

// Distinct sorted values plus the rank of every day's value among them.
struct RankedDays {
  std::vector<double> distinct;
  std::vector<std::size_t> rank;
};

RankedDays rank_days(std::span<const double> sequence) {
  RankedDays out;
  out.distinct.assign(sequence.begin(), sequence.end());
  std::sort(out.distinct.begin(), out.distinct.end());
  out.distinct.erase(std::unique(out.distinct.begin(), out.distinct.end()), out.distinct.end());
  out.rank.reserve(sequence.size());
  for (double y : sequence) {
    out.rank.push_back(static_cast<std::size_t>(std::lower_bound(out.distinct.begin(), out.distinct.end(), y) -
                                                out.distinct.begin()));
  }
  return out;
}

// Coverage of [v_i, v_j] on a set of days is C(j) - C(i-1) for the cumulative
// rank histogram C, so the coverage gap between two day sets is D(j) - D(i-1)
// with D the difference of normalized cumulative histograms. Over all pairs
// i <= j the largest |gap| is max D - min D, taking D(-1) = 0 for the empty
// interval.
double histogram_gap(std::span<const std::size_t> window_counts, double window_size,
                     std::span<const std::size_t> full_counts, double full_size) {
  double window_cum = 0.0;
  double full_cum = 0.0;
  double hi = 0.0;
  double lo = 0.0;
  for (std::size_t r = 0; r < full_counts.size(); ++r) {
    window_cum += static_cast<double>(window_counts[r]);
    full_cum += static_cast<double>(full_counts[r]);
    const double d = window_cum / window_size - full_cum / full_size;
    hi = std::max(hi, d);
    lo = std::min(lo, d);
  }
  return std::clamp(hi - lo, 0.0, 1.0);
}

}  // namespace

double uc_max_deviation(std::span<const double> sequence, std::size_t first, std::size_t last) {
  if (first < 1 || first > last || last > sequence.size()) {
    fail(ErrorCode::InvalidArgument, "uc_max_deviation: window [" + std::to_string(first) + ", " +
                                         std::to_string(last) + "] outside [1, " + std::to_string(sequence.size()) +
                                         "]");
  }
  const RankedDays days = rank_days(sequence);
  std::vector<std::size_t> full(days.distinct.size(), 0);
  std::vector<std::size_t> window(days.distinct.size(), 0);
  for (std::size_t d = 0; d < sequence.size(); ++d) {
    ++full[days.rank[d]];
    if (d + 1 >= first && d + 1 <= last) ++window[days.rank[d]];
  }
  return histogram_gap(window, static_cast<double>(last - first + 1), full, static_cast<double>(sequence.size()));
}

namespace {

double nearest_rank(std::vector<double> values, double q) {
  std::sort(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  const auto idx = static_cast<std::size_t>(std::max(1.0, std::ceil(q * n)) - 1.0);
  return values[std::min(idx, values.size() - 1)];
}

}  // namespace

std::vector<UcReport> uc_profile(std::span<const double> multiset, std::span<const std::size_t> prefix_lens,
                                 std::size_t trials, double c, std::uint64_t seed) {
  const std::size_t horizon = multiset.size();
  if (horizon == 0) fail(ErrorCode::InvalidArgument, "uc_profile: empty multiset");
  if (trials == 0) fail(ErrorCode::InvalidArgument, "uc_profile: trials must be >= 1");
  if (!(c >= 0.0)) fail(ErrorCode::InvalidArgument, "uc_profile: C must be >= 0");
  for (std::size_t t : prefix_lens) {
    if (t < 1 || t > horizon) {
      fail(ErrorCode::InvalidArgument, "uc_profile: prefix length " + std::to_string(t) + " outside [1, " +
                                           std::to_string(horizon) + "]");
    }
  }

  // Visit prefix lengths in ascending order so each trial extends one
  // histogram incrementally.
  std::vector<std::size_t> order(prefix_lens.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return prefix_lens[a] < prefix_lens[b]; });

  const RankedDays base = rank_days(multiset);
  std::vector<std::size_t> full(base.distinct.size(), 0);
  for (std::size_t r : base.rank) ++full[r];

  std::vector<std::vector<double>> deviations(prefix_lens.size(), std::vector<double>(trials, 0.0));
  std::vector<std::size_t> window(base.distinct.size());
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const std::vector<double> permuted = gen_permutation(multiset, seed + trial);
    std::fill(window.begin(), window.end(), 0);
    std::size_t filled = 0;
    for (std::size_t slot : order) {
      const std::size_t t = prefix_lens[slot];
      for (; filled < t; ++filled) {
        const auto r = std::lower_bound(base.distinct.begin(), base.distinct.end(), permuted[filled]) -
                       base.distinct.begin();
        ++window[static_cast<std::size_t>(r)];
      }
      deviations[slot][trial] = histogram_gap(window, static_cast<double>(t), full, static_cast<double>(horizon));
    }
  }

  std::vector<UcReport> reports;
  reports.reserve(prefix_lens.size());
  for (std::size_t slot = 0; slot < prefix_lens.size(); ++slot) {
    UcReport rep;
    rep.prefix_len = prefix_lens[slot];
    rep.trials = trials;
    rep.median_deviation = nearest_rank(deviations[slot], 0.5);
    rep.max_deviation = nearest_rank(deviations[slot], 0.95);
    rep.worst_deviation = *std::max_element(deviations[slot].begin(), deviations[slot].end());
    rep.bound = c * std::sqrt(std::log(static_cast<double>(horizon)) / static_cast<double>(rep.prefix_len));
    rep.within = rep.max_deviation <= rep.bound;
    reports.push_back(rep);
  }
  return reports;
}

}  // namespace volconf
