#include "volconf/volconf.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "volconf/analysis.hpp"
#include "volconf/error.hpp"
#include "volconf/generators.hpp"
#include "volconf/interval.hpp"
#include "volconf/opt_oracle.hpp"
#include "volconf/predictor.hpp"
#include "volconf/sequence_io.hpp"

struct vc_predictor {
  volconf::Predictor impl;
};

struct vc_trace {
  volconf::RunTrace impl;
};

struct vc_sequence {
  volconf::SequenceFile impl;
};

namespace {

thread_local std::string last_error;

vc_status to_status(volconf::ErrorCode code) {
  switch (code) {
    case volconf::ErrorCode::InvalidArgument:
      return VC_E_INVALID_ARGUMENT;
    case volconf::ErrorCode::OutOfRange:
      return VC_E_OUT_OF_RANGE;
    case volconf::ErrorCode::Infeasible:
      return VC_E_INFEASIBLE;
    case volconf::ErrorCode::Protocol:
      return VC_E_PROTOCOL;
    case volconf::ErrorCode::Io:
      return VC_E_IO;
  }
  return VC_E_INTERNAL;
}

template <class F>
vc_status guarded(F&& body) {
  try {
    body();
    return VC_OK;
  } catch (const volconf::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return VC_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return VC_E_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return VC_E_INTERNAL;
  }
}

void require(const void* ptr, const char* name) {
  if (ptr == nullptr) volconf::fail(volconf::ErrorCode::InvalidArgument, std::string(name) + " is null");
}

std::span<const double> view(const double* data, std::size_t len, const char* name) {
  if (len > 0) require(data, name);
  return {data, len};
}

vc_interval to_c(const volconf::Interval& i) { return {i.lo, i.hi}; }
volconf::Interval from_c(const vc_interval& i) { return {i.lo, i.hi}; }

volconf::PredictorConfig from_c(const vc_config* c) {
  require(c, "config");
  volconf::PredictorConfig cfg;
  cfg.minwidth = c->minwidth;
  cfg.mu = c->mu;
  cfg.horizon = c->horizon;
  switch (c->schedule) {
    case VC_SCHEDULE_ARBITRARY_ORDER:
      cfg.schedule = volconf::Schedule::arbitrary_order(c->alpha, c->horizon);
      break;
    case VC_SCHEDULE_EXCHANGEABLE:
      cfg.schedule = volconf::Schedule::exchangeable(c->alpha, c->horizon, c->c);
      break;
    case VC_SCHEDULE_CUSTOM_TABLE: {
      const auto rates = view(c->rates, c->rates_len, "config.rates");
      cfg.schedule = volconf::Schedule::custom_table({rates.begin(), rates.end()});
      break;
    }
    default:
      volconf::fail(volconf::ErrorCode::InvalidArgument, "config: unknown schedule kind");
  }
  cfg.validate();
  return cfg;
}

volconf::DkParams dk_params(double alpha, double eps, unsigned k) {
  volconf::DkParams p{alpha, eps, k};
  p.validate();
  return p;
}

volconf::SequenceSpec from_c(const vc_sequence_spec* s) {
  require(s, "spec");
  volconf::SequenceSpec spec;
  spec.seed = s->seed;
  spec.symmetric = s->symmetric != 0;
  switch (s->family) {
    case VC_FAMILY_PHASED:
      spec.variant = volconf::PhasedSpec{{s->alpha, s->horizon, s->k, s->eps, s->phase}};
      break;
    case VC_FAMILY_DK_IID:
      spec.variant = volconf::DkIidSpec{{s->alpha, s->eps, s->k}, s->horizon};
      break;
    case VC_FAMILY_DK_THEN_CONSTANT:
      spec.variant = volconf::DkThenConstantSpec{{s->alpha, s->eps, s->k}, s->horizon, s->switch_day};
      break;
    case VC_FAMILY_PERMUTATION: {
      const auto v = view(s->values, s->values_len, "spec.values");
      spec.variant = volconf::PermutationSpec{{v.begin(), v.end()}};
      break;
    }
    case VC_FAMILY_CUSTOM: {
      const auto v = view(s->values, s->values_len, "spec.values");
      spec.variant = volconf::CustomSpec{{v.begin(), v.end()}};
      break;
    }
    default:
      volconf::fail(volconf::ErrorCode::InvalidArgument, "spec: unknown sequence family");
  }
  return spec;
}

}  // namespace

extern "C" {

const char* vc_version(void) { return "0.1.0"; }

const char* vc_last_error(void) { return last_error.c_str(); }

const char* vc_status_name(vc_status status) {
  switch (status) {
    case VC_OK:
      return "ok";
    case VC_E_INVALID_ARGUMENT:
      return "invalid argument";
    case VC_E_OUT_OF_RANGE:
      return "out of range";
    case VC_E_INFEASIBLE:
      return "infeasible";
    case VC_E_PROTOCOL:
      return "protocol violation";
    case VC_E_IO:
      return "i/o error";
    case VC_E_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

double vc_volume(vc_interval interval) { return volconf::volume(from_c(interval)); }
vc_interval vc_scale(vc_interval interval, double s) { return to_c(volconf::scale(from_c(interval), s)); }
vc_interval vc_clip_unit(vc_interval interval) { return to_c(volconf::clip_unit(from_c(interval))); }
int vc_contains(vc_interval interval, double y) { return volconf::contains(from_c(interval), y) ? 1 : 0; }

vc_status vc_schedule_rate(const vc_config* config, size_t t, double* out_rate) {
  return guarded([&] {
    require(out_rate, "out_rate");
    *out_rate = from_c(config).schedule.rate(t);
  });
}

vc_status vc_predictor_create(const vc_config* config, vc_predictor** out) {
  return guarded([&] {
    require(out, "out");
    *out = new vc_predictor{volconf::Predictor(from_c(config))};
  });
}

void vc_predictor_destroy(vc_predictor* predictor) { delete predictor; }

vc_status vc_predictor_predict(vc_predictor* predictor, vc_interval* out_played) {
  return guarded([&] {
    require(predictor, "predictor");
    require(out_played, "out_played");
    *out_played = to_c(predictor->impl.predict());
  });
}

vc_status vc_predictor_update(vc_predictor* predictor, double y, int* out_covered) {
  return guarded([&] {
    require(predictor, "predictor");
    const bool covered = predictor->impl.update(y);
    if (out_covered != nullptr) *out_covered = covered ? 1 : 0;
  });
}

size_t vc_predictor_day(const vc_predictor* predictor) { return predictor ? predictor->impl.day() : 0; }

vc_interval vc_predictor_current(const vc_predictor* predictor) {
  return predictor ? to_c(predictor->impl.current()) : vc_interval{0.0, 0.0};
}

size_t vc_predictor_misses(const vc_predictor* predictor) {
  return predictor ? predictor->impl.misses_of_current() : 0;
}

vc_status vc_run(const vc_config* config, const double* sequence, size_t len, vc_trace** out) {
  return guarded([&] {
    require(out, "out");
    auto trace = volconf::run(from_c(config), view(sequence, len, "sequence"));
    *out = new vc_trace{std::move(trace)};
  });
}

void vc_trace_destroy(vc_trace* trace) { delete trace; }

size_t vc_trace_length(const vc_trace* trace) { return trace ? trace->impl.days.size() : 0; }

vc_status vc_trace_day(const vc_trace* trace, size_t index, vc_day_record* out) {
  return guarded([&] {
    require(trace, "trace");
    require(out, "out");
    if (index >= trace->impl.days.size()) {
      volconf::fail(volconf::ErrorCode::OutOfRange, "trace day index " + std::to_string(index) + " out of range");
    }
    const volconf::DayRecord& d = trace->impl.days[index];
    out->played = to_c(d.played);
    out->observed = d.observed;
    out->covered = d.covered ? 1 : 0;
    out->reset = d.reset ? 1 : 0;
    out->has_base = d.base ? 1 : 0;
    out->base = d.base ? to_c(*d.base) : vc_interval{0.0, 0.0};
  });
}

size_t vc_trace_mistakes(const vc_trace* trace) { return trace ? trace->impl.mistakes() : 0; }
size_t vc_trace_resets(const vc_trace* trace) { return trace ? trace->impl.resets() : 0; }

vc_status vc_halfway_conformal_set(const vc_config* config, const double* prefix, size_t len, vc_interval* out) {
  return guarded([&] {
    require(out, "out");
    *out = to_c(volconf::halfway_conformal_set(from_c(config), view(prefix, len, "prefix")));
  });
}

vc_status vc_opt_volume(const double* sequence, size_t len, double alpha, double* out_volume,
                        vc_interval* out_witness) {
  return guarded([&] {
    const auto r = volconf::opt_volume(view(sequence, len, "sequence"), alpha);
    if (out_volume) *out_volume = r.volume;
    if (out_witness) *out_witness = to_c(r.witness);
  });
}

vc_status vc_brute_force_opt(const double* sequence, size_t len, double alpha, double* out_volume,
                             vc_interval* out_witness) {
  return guarded([&] {
    const auto r = volconf::brute_force_opt(view(sequence, len, "sequence"), alpha);
    if (out_volume) *out_volume = r.volume;
    if (out_witness) *out_witness = to_c(r.witness);
  });
}

vc_status vc_compute_metrics(const vc_trace* trace, const double* sequence, size_t len, double alpha,
                             const vc_config* config, vc_metrics* out) {
  return guarded([&] {
    require(trace, "trace");
    require(out, "out");
    const auto m = volconf::compute_metrics(trace->impl, view(sequence, len, "sequence"), alpha, from_c(config));
    *out = {m.horizon, m.coverage, m.mistakes, m.avg_volume, m.max_volume,
            m.opt_volume, m.mu_avg, m.mu_max, m.resets};
  });
}

vc_status vc_phase_audit_run(const vc_trace* trace, const vc_config* config, vc_phase_audit* out) {
  return guarded([&] {
    require(trace, "trace");
    require(out, "out");
    const auto r = volconf::phase_audit(trace->impl, from_c(config));
    *out = {r.epoch_start, r.reset_days.size(), r.resets_in_epoch, r.reset_count_bound,
            r.growth_ok ? 1 : 0, r.reset_count_ok ? 1 : 0};
  });
}

vc_status vc_mistake_bound_check(const vc_trace* trace, const vc_config* config, double alpha,
                                 vc_mistake_bound* out) {
  return guarded([&] {
    require(trace, "trace");
    require(out, "out");
    const auto r = volconf::mistake_bound(trace->impl, from_c(config), alpha);
    *out = {r.mistakes, r.bound, r.ok ? 1 : 0};
  });
}

vc_status vc_uc_max_deviation(const double* sequence, size_t len, size_t first, size_t last, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = volconf::uc_max_deviation(view(sequence, len, "sequence"), first, last);
  });
}

vc_status vc_uc_profile(const double* multiset, size_t len, const size_t* prefix_lens, size_t n_prefix,
                        size_t trials, double c, uint64_t seed, vc_uc_report* out) {
  return guarded([&] {
    if (n_prefix > 0) {
      require(prefix_lens, "prefix_lens");
      require(out, "out");
    }
    const auto reports = volconf::uc_profile(view(multiset, len, "multiset"),
                                             std::span<const std::size_t>(prefix_lens, n_prefix), trials, c, seed);
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      out[i] = {r.prefix_len, r.trials, r.median_deviation, r.max_deviation,
                r.worst_deviation, r.bound, r.within ? 1 : 0};
    }
  });
}

vc_status vc_dk_cdf(double alpha, double eps, unsigned k, double x, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = volconf::dk_cdf(x, dk_params(alpha, eps, k));
  });
}

vc_status vc_dk_inverse_cdf(double alpha, double eps, unsigned k, double u, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = volconf::dk_inverse_cdf(u, dk_params(alpha, eps, k));
  });
}

vc_status vc_dk_vstar(double alpha, double eps, unsigned k, double c, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = volconf::dk_vstar(c, dk_params(alpha, eps, k));
  });
}

vc_status vc_sequence_generate(const vc_sequence_spec* spec, vc_sequence** out) {
  return guarded([&] {
    require(out, "out");
    const auto s = from_c(spec);
    volconf::SequenceFile file{volconf::describe(s), volconf::generate(s)};
    *out = new vc_sequence{std::move(file)};
  });
}

vc_status vc_sequence_from_values(const double* values, size_t len, const char* header, vc_sequence** out) {
  return guarded([&] {
    require(out, "out");
    const auto v = view(values, len, "values");
    *out = new vc_sequence{{header ? header : "", {v.begin(), v.end()}}};
  });
}

vc_status vc_sequence_read(const char* path, vc_sequence** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new vc_sequence{volconf::read_sequence_file(path)};
  });
}

vc_status vc_sequence_write(const vc_sequence* sequence, const char* path) {
  return guarded([&] {
    require(sequence, "sequence");
    require(path, "path");
    volconf::write_sequence_file(path, sequence->impl);
  });
}

void vc_sequence_destroy(vc_sequence* sequence) { delete sequence; }

size_t vc_sequence_length(const vc_sequence* sequence) { return sequence ? sequence->impl.values.size() : 0; }

const double* vc_sequence_values(const vc_sequence* sequence) {
  return sequence ? sequence->impl.values.data() : nullptr;
}

const char* vc_sequence_header(const vc_sequence* sequence) {
  return sequence ? sequence->impl.header.c_str() : "";
}

size_t vc_format_real(double value, char* buf, size_t buf_len) {
  const std::string text = volconf::format_real(value);
  if (buf && buf_len > 0) {
    const size_t n = std::min(buf_len - 1, text.size());
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
  }
  return text.size();
}

}  // extern "C"
