/* C interface to the volconf library.
 *
 * Objects are opaque handles created by *_create / producer functions and
 * released with the matching *_destroy. Every fallible call returns a
 * vc_status; on failure vc_last_error() holds a message for the calling
 * thread until its next failing call. Distinct handles may be used from
 * different threads concurrently.
 */
#ifndef VOLCONF_VOLCONF_H
#define VOLCONF_VOLCONF_H

#include <stddef.h>
#include <stdint.h>

#if defined(VOLCONF_BUILDING_LIBRARY)
#define VC_API __attribute__((visibility("default")))
#else
#define VC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vc_status {
  VC_OK = 0,
  VC_E_INVALID_ARGUMENT = 1,
  VC_E_OUT_OF_RANGE = 2,
  VC_E_INFEASIBLE = 3,
  VC_E_PROTOCOL = 4,
  VC_E_IO = 5,
  VC_E_INTERNAL = 6
} vc_status;

typedef struct vc_interval {
  double lo;
  double hi;
} vc_interval;

typedef enum vc_schedule_kind {
  VC_SCHEDULE_ARBITRARY_ORDER = 0,
  VC_SCHEDULE_EXCHANGEABLE = 1,
  VC_SCHEDULE_CUSTOM_TABLE = 2
} vc_schedule_kind;

/* rates/rates_len are read only for VC_SCHEDULE_CUSTOM_TABLE and are copied. */
typedef struct vc_config {
  double minwidth;
  double mu;
  size_t horizon;
  vc_schedule_kind schedule;
  double alpha;
  double c;
  const double* rates;
  size_t rates_len;
} vc_config;

typedef struct vc_day_record {
  vc_interval played;
  double observed;
  int covered;
  int reset;
  int has_base;
  vc_interval base;
} vc_day_record;

typedef struct vc_metrics {
  size_t horizon;
  double coverage;
  size_t mistakes;
  double avg_volume;
  double max_volume;
  double opt_volume;
  double mu_avg;
  double mu_max;
  size_t resets;
} vc_metrics;

typedef struct vc_phase_audit {
  size_t epoch_start;
  size_t reset_count;
  size_t resets_in_epoch;
  size_t reset_count_bound;
  int growth_ok;
  int reset_count_ok;
} vc_phase_audit;

typedef struct vc_mistake_bound {
  size_t mistakes;
  double bound;
  int ok;
} vc_mistake_bound;

typedef struct vc_uc_report {
  size_t prefix_len;
  size_t trials;
  double median_deviation;
  double max_deviation;
  double worst_deviation;
  double bound;
  int within;
} vc_uc_report;

typedef enum vc_family {
  VC_FAMILY_PHASED = 0,
  VC_FAMILY_DK_IID = 1,
  VC_FAMILY_DK_THEN_CONSTANT = 2,
  VC_FAMILY_PERMUTATION = 3,
  VC_FAMILY_CUSTOM = 4
} vc_family;

/* Fields unused by a family are ignored. values/values_len carry the
 * multiset (permutation) or the sequence itself (custom). */
typedef struct vc_sequence_spec {
  vc_family family;
  double alpha;
  size_t horizon;
  unsigned k;
  double eps;
  unsigned phase;
  size_t switch_day;
  const double* values;
  size_t values_len;
  uint64_t seed;
  int symmetric;
} vc_sequence_spec;

typedef struct vc_predictor vc_predictor;
typedef struct vc_trace vc_trace;
typedef struct vc_sequence vc_sequence;

VC_API const char* vc_version(void);
VC_API const char* vc_last_error(void);
VC_API const char* vc_status_name(vc_status status);

/* Interval helpers. */
VC_API double vc_volume(vc_interval interval);
VC_API vc_interval vc_scale(vc_interval interval, double s);
VC_API vc_interval vc_clip_unit(vc_interval interval);
VC_API int vc_contains(vc_interval interval, double y);

/* Schedules. */
VC_API vc_status vc_schedule_rate(const vc_config* config, size_t t, double* out_rate);

/* Online predictor. */
VC_API vc_status vc_predictor_create(const vc_config* config, vc_predictor** out);
VC_API void vc_predictor_destroy(vc_predictor* predictor);
VC_API vc_status vc_predictor_predict(vc_predictor* predictor, vc_interval* out_played);
VC_API vc_status vc_predictor_update(vc_predictor* predictor, double y, int* out_covered);
VC_API size_t vc_predictor_day(const vc_predictor* predictor);
VC_API vc_interval vc_predictor_current(const vc_predictor* predictor);
VC_API size_t vc_predictor_misses(const vc_predictor* predictor);

/* Whole runs and traces. */
VC_API vc_status vc_run(const vc_config* config, const double* sequence, size_t len, vc_trace** out);
VC_API void vc_trace_destroy(vc_trace* trace);
VC_API size_t vc_trace_length(const vc_trace* trace);
VC_API vc_status vc_trace_day(const vc_trace* trace, size_t index, vc_day_record* out);
VC_API size_t vc_trace_mistakes(const vc_trace* trace);
VC_API size_t vc_trace_resets(const vc_trace* trace);
VC_API vc_status vc_halfway_conformal_set(const vc_config* config, const double* prefix, size_t len,
                                          vc_interval* out);

/* Optimality oracle and metrics. */
VC_API vc_status vc_opt_volume(const double* sequence, size_t len, double alpha, double* out_volume,
                               vc_interval* out_witness);
VC_API vc_status vc_brute_force_opt(const double* sequence, size_t len, double alpha, double* out_volume,
                                    vc_interval* out_witness);
VC_API vc_status vc_compute_metrics(const vc_trace* trace, const double* sequence, size_t len, double alpha,
                                    const vc_config* config, vc_metrics* out);

/* Trace analysis. */
VC_API vc_status vc_phase_audit_run(const vc_trace* trace, const vc_config* config, vc_phase_audit* out);
VC_API vc_status vc_mistake_bound_check(const vc_trace* trace, const vc_config* config, double alpha,
                                        vc_mistake_bound* out);
VC_API vc_status vc_uc_max_deviation(const double* sequence, size_t len, size_t first, size_t last,
                                     double* out);
/* out must hold n_prefix reports. */
VC_API vc_status vc_uc_profile(const double* multiset, size_t len, const size_t* prefix_lens, size_t n_prefix,
                               size_t trials, double c, uint64_t seed, vc_uc_report* out);

/* D^(K) distribution. */
VC_API vc_status vc_dk_cdf(double alpha, double eps, unsigned k, double x, double* out);
VC_API vc_status vc_dk_inverse_cdf(double alpha, double eps, unsigned k, double u, double* out);
VC_API vc_status vc_dk_vstar(double alpha, double eps, unsigned k, double c, double* out);

/* Sequences. */
VC_API vc_status vc_sequence_generate(const vc_sequence_spec* spec, vc_sequence** out);
VC_API vc_status vc_sequence_from_values(const double* values, size_t len, const char* header, vc_sequence** out);
VC_API vc_status vc_sequence_read(const char* path, vc_sequence** out);
VC_API vc_status vc_sequence_write(const vc_sequence* sequence, const char* path);
VC_API void vc_sequence_destroy(vc_sequence* sequence);
VC_API size_t vc_sequence_length(const vc_sequence* sequence);
VC_API const double* vc_sequence_values(const vc_sequence* sequence);
VC_API const char* vc_sequence_header(const vc_sequence* sequence);

/* Shortest round-trip text of a double into buf, truncated and NUL-terminated;
 * returns the full length. */
VC_API size_t vc_format_real(double value, char* buf, size_t buf_len);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif /* VOLCONF_VOLCONF_H */
