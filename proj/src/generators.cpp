#include "volconf/generators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "volconf/error.hpp"
#include "volconf/rng.hpp"
#include "volconf/sequence_io.hpp"

namespace volconf {
namespace {

constexpr double kBoundGuard = 1e-12;

}  // namespace

void DkParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorCode::InvalidArgument, "D^(K): alpha must lie in (0, 1)");
  if (!(eps > 0.0 && eps <= 0.5)) fail(ErrorCode::InvalidArgument, "D^(K): eps must lie in (0, 1/2]");
  if (static_cast<double>(k) > std::log(1.0 / alpha) + kBoundGuard) {
    fail(ErrorCode::InvalidArgument, "D^(K): K = " + std::to_string(k) + " exceeds ln(1/alpha) = " +
                                         format_real(std::log(1.0 / alpha)) + ", so 1 - alpha e^K < 0");
  }
}

double DkParams::support_min() const { return std::pow(eps, static_cast<double>(k) + 1.0); }

double DkParams::point_mass() const { return std::max(0.0, 1.0 - alpha * std::exp(static_cast<double>(k))); }

double dk_cdf(double x, const DkParams& p) {
  p.validate();
  const double lo = p.support_min();
  if (x < lo) return 0.0;
  if (x >= 1.0) return 1.0;
  if (x <= p.eps) return 1.0 - (p.alpha / std::exp(1.0)) * std::pow(x, 1.0 / std::log(p.eps));
  return 1.0 - p.alpha * (1.0 - x) / (1.0 - p.eps);
}

double dk_inverse_cdf(double u, const DkParams& p) {
  p.validate();
  if (!(u >= 0.0 && u <= 1.0)) fail(ErrorCode::InvalidArgument, "dk_inverse_cdf: u must lie in [0, 1]");
  if (u <= p.point_mass()) return p.support_min();
  if (u <= 1.0 - p.alpha) {
    const double x = std::pow((1.0 - u) * std::exp(1.0) / p.alpha, std::log(p.eps));
    return std::clamp(x, p.support_min(), p.eps);
  }
  return std::clamp(1.0 - (1.0 - u) * (1.0 - p.eps) / p.alpha, p.eps, 1.0);
}

double dk_vstar(double c, const DkParams& p) { return dk_inverse_cdf(c, p) - p.support_min(); }

void PhasedParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) fail(ErrorCode::InvalidArgument, "phased: alpha must lie in (0, 1]");
  if (horizon == 0) fail(ErrorCode::InvalidArgument, "phased: T must be >= 1");
  if (!(eps > 0.0 && eps <= 1.0)) fail(ErrorCode::InvalidArgument, "phased: eps must lie in (0, 1]");
  const double max_k = std::floor(1.0 / alpha + 1e-9);
  if (k < 1 || static_cast<double>(k) > max_k) {
    fail(ErrorCode::InvalidArgument, "phased: K = " + std::to_string(k) + " violates 1 <= K <= 1/alpha = " +
                                         format_real(1.0 / alpha));
  }
  if (phase < 1 || phase > k) {
    fail(ErrorCode::InvalidArgument, "phased: i = " + std::to_string(phase) + " violates 1 <= i <= K = " +
                                         std::to_string(k));
  }
  const std::size_t len = phase_length();
  if (len == 0) fail(ErrorCode::InvalidArgument, "phased: round(alpha * T) must be >= 1");
  if (static_cast<std::size_t>(k) * len > horizon) {
    fail(ErrorCode::InvalidArgument, "phased: K * round(alpha * T) = " + std::to_string(k * len) +
                                         " exceeds T = " + std::to_string(horizon));
  }
}

std::size_t PhasedParams::phase_length() const {
  return static_cast<std::size_t>(std::llround(alpha * static_cast<double>(horizon)));
}

std::size_t PhasedParams::phase_count() const { return horizon / phase_length(); }

std::size_t PhasedParams::phase_of(std::size_t day_index) const {
  return std::min(day_index / phase_length() + 1, phase_count());
}

double PhasedParams::scale_of(std::size_t day_index) const {
  const std::size_t j = phase_of(day_index);
  if (j <= phase) return std::pow(eps, static_cast<double>(k) - static_cast<double>(j));
  return std::pow(eps, static_cast<double>(k));
}

std::vector<double> gen_phased(const PhasedParams& params, std::uint64_t seed) {
  params.validate();
  const StreamRng rng = make_rng(seed, RngStream::Phased);
  std::vector<double> out(params.horizon);
  for (std::size_t d = 0; d < out.size(); ++d) out[d] = rng.uniform(d) * params.scale_of(d);
  return out;
}

std::vector<double> gen_dk_iid(const DkParams& params, std::size_t horizon, std::uint64_t seed) {
  return gen_dk_then_constant(params, horizon, horizon, seed);
}

std::vector<double> gen_dk_then_constant(const DkParams& params, std::size_t horizon, std::size_t switch_day,
                                         std::uint64_t seed) {
  params.validate();
  if (switch_day > horizon) {
    fail(ErrorCode::InvalidArgument, "dk_then_constant: switch day " + std::to_string(switch_day) +
                                         " exceeds T = " + std::to_string(horizon));
  }
  const StreamRng rng = make_rng(seed, RngStream::Dk);
  std::vector<double> out(horizon, params.support_min());
  for (std::size_t d = 0; d < switch_day; ++d) out[d] = dk_inverse_cdf(rng.uniform(d), params);
  return out;
}

std::vector<double> gen_permutation(std::span<const double> values, std::uint64_t seed) {
  std::vector<double> out(values.begin(), values.end());
  const StreamRng rng = make_rng(seed, RngStream::Permutation);
  for (std::size_t i = out.size(); i > 1; --i) {
    const std::size_t j = rng.below(i - 1, i);
    std::swap(out[i - 1], out[j]);
  }
  return out;
}

std::vector<double> symmetrize_phased(std::span<const double> sequence, const PhasedParams& params) {
  params.validate();
  if (sequence.size() != params.horizon) fail(ErrorCode::InvalidArgument, "symmetrize: length differs from T");
  std::vector<double> out(sequence.size());
  for (std::size_t d = 0; d < out.size(); ++d) {
    const double b = params.scale_of(d);
    out[d] = std::clamp(0.5 - 0.5 * b + sequence[d], 0.0, 1.0);
  }
  return out;
}

std::vector<double> symmetrize_dk(std::span<const double> sequence, const DkParams& params, std::uint64_t seed) {
  params.validate();
  const StreamRng rng = make_rng(seed, RngStream::Sign);
  const double lo = params.support_min();
  std::vector<double> out(sequence.size());
  for (std::size_t d = 0; d < out.size(); ++d) {
    out[d] = std::clamp(0.5 + 0.5 * rng.sign(d) * (sequence[d] - lo), 0.0, 1.0);
  }
  return out;
}

namespace {

void check_unit(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) fail(ErrorCode::InvalidArgument, std::string(what) + ": values must lie in [0, 1]");
  }
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::vector<double> generate(const SequenceSpec& spec) {
  return std::visit(
      Overloaded{
          [&](const PhasedSpec& s) {
            auto seq = gen_phased(s.params, spec.seed);
            return spec.symmetric ? symmetrize_phased(seq, s.params) : seq;
          },
          [&](const DkIidSpec& s) {
            auto seq = gen_dk_iid(s.params, s.horizon, spec.seed);
            return spec.symmetric ? symmetrize_dk(seq, s.params, spec.seed) : seq;
          },
          [&](const DkThenConstantSpec& s) {
            auto seq = gen_dk_then_constant(s.params, s.horizon, s.switch_day, spec.seed);
            return spec.symmetric ? symmetrize_dk(seq, s.params, spec.seed) : seq;
          },
          [&](const PermutationSpec& s) {
            if (spec.symmetric) fail(ErrorCode::InvalidArgument, "symmetrize: unsupported for permutation sequences");
            check_unit(s.multiset, "permutation");
            return gen_permutation(s.multiset, spec.seed);
          },
          [&](const CustomSpec& s) {
            if (spec.symmetric) fail(ErrorCode::InvalidArgument, "symmetrize: unsupported for custom sequences");
            check_unit(s.values, "custom");
            return s.values;
          },
      },
      spec.variant);
}

std::string describe(const SequenceSpec& spec) {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const PhasedSpec& s) {
                   os << "family=phased alpha=" << format_real(s.params.alpha) << " T=" << s.params.horizon
                      << " K=" << s.params.k << " eps=" << format_real(s.params.eps) << " i=" << s.params.phase;
                 },
                 [&](const DkIidSpec& s) {
                   os << "family=dk-iid alpha=" << format_real(s.params.alpha) << " T=" << s.horizon
                      << " K=" << s.params.k << " eps=" << format_real(s.params.eps);
                 },
                 [&](const DkThenConstantSpec& s) {
                   os << "family=dk-then-constant alpha=" << format_real(s.params.alpha) << " T=" << s.horizon
                      << " K=" << s.params.k << " eps=" << format_real(s.params.eps)
                      << " switch_day=" << s.switch_day;
                 },
                 [&](const PermutationSpec& s) { os << "family=permutation T=" << s.multiset.size(); },
                 [&](const CustomSpec& s) { os << "family=custom T=" << s.values.size(); },
             },
             spec.variant);
  os << " seed=" << spec.seed << " symmetric=" << (spec.symmetric ? 1 : 0);
  return os.str();
}

}  // namespace volconf
