#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace volconf {

/// Parameters of the heavy-tailed distribution D^(K) on [eps^(K+1), 1]:
/// a point mass of 1 - alpha * e^K at eps^(K+1), a power-law middle piece up
/// to eps and a uniform tail of mass alpha on [eps, 1].
struct DkParams {
  double alpha = 0.1;
  double eps = 0.5;
  unsigned k = 0;

  /// alpha in (0, 1), eps in (0, 1/2], K <= ln(1 / alpha).
  void validate() const;
  double support_min() const;
  double point_mass() const;
};

double dk_cdf(double x, const DkParams& params);
double dk_inverse_cdf(double u, const DkParams& params);
/// Minimum volume of a set with coverage c under D^(K): F^-1(c) - eps^(K+1).
double dk_vstar(double c, const DkParams& params);

/// Phased adversarial family S_i^(K): the horizon splits into phases of
/// round(alpha * T) days (the last phase absorbs any remainder). Phase j <= i
/// is Unif[0, eps^(K-j)], every later phase is Unif[0, eps^K].
struct PhasedParams {
  double alpha = 0.1;
  std::size_t horizon = 10;
  unsigned k = 1;
  double eps = 0.5;
  unsigned phase = 1;

  void validate() const;
  std::size_t phase_length() const;
  std::size_t phase_count() const;
  /// 1-indexed phase of a 0-indexed day.
  std::size_t phase_of(std::size_t day_index) const;
  /// Upper end b of the phase's Unif[0, b].
  double scale_of(std::size_t day_index) const;
};

std::vector<double> gen_phased(const PhasedParams& params, std::uint64_t seed);
std::vector<double> gen_dk_iid(const DkParams& params, std::size_t horizon, std::uint64_t seed);
/// First `switch_day` days i.i.d. D^(K), the rest fixed at eps^(K+1).
std::vector<double> gen_dk_then_constant(const DkParams& params, std::size_t horizon,
                                         std::size_t switch_day, std::uint64_t seed);
/// Fisher-Yates shuffle of the multiset.
std::vector<double> gen_permutation(std::span<const double> values, std::uint64_t seed);

/// Maps every Unif[0, b] phase onto Unif[1/2 - b/2, 1/2 + b/2].
std::vector<double> symmetrize_phased(std::span<const double> sequence, const PhasedParams& params);
/// y -> 1/2 + s * (y - eps^(K+1)) / 2 with an independent fair sign s per day.
std::vector<double> symmetrize_dk(std::span<const double> sequence, const DkParams& params,
                                  std::uint64_t seed);

struct PhasedSpec {
  PhasedParams params;
};
struct DkIidSpec {
  DkParams params;
  std::size_t horizon = 0;
};
struct DkThenConstantSpec {
  DkParams params;
  std::size_t horizon = 0;
  std::size_t switch_day = 0;
};
struct PermutationSpec {
  std::vector<double> multiset;
};
struct CustomSpec {
  std::vector<double> values;
};

struct SequenceSpec {
  std::variant<PhasedSpec, DkIidSpec, DkThenConstantSpec, PermutationSpec, CustomSpec> variant;
  std::uint64_t seed = 0;
  bool symmetric = false;
};

/// Realizes a spec; all values land in [0, 1]. Symmetrization applies only to
/// the phased and D^(K) variants.
std::vector<double> generate(const SequenceSpec& spec);

/// One-line key=value description used as the sequence file header.
std::string describe(const SequenceSpec& spec);

}  // namespace volconf
