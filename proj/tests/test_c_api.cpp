#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "volconf/volconf.h"

namespace {

vc_config arbitrary(double alpha, size_t T, double mu, double minwidth) {
  vc_config cfg{};
  cfg.minwidth = minwidth;
  cfg.mu = mu;
  cfg.horizon = T;
  cfg.schedule = VC_SCHEDULE_ARBITRARY_ORDER;
  cfg.alpha = alpha;
  cfg.c = 1.0;
  return cfg;
}

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(vc_version()) == "0.1.0");
  CHECK(std::string(vc_status_name(VC_OK)) == "ok");
  CHECK(std::string(vc_status_name(VC_E_PROTOCOL)) == "protocol violation");
}

TEST_CASE("interval helpers") {
  CHECK(vc_volume({0.2, 0.7}) == doctest::Approx(0.5));
  const vc_interval s = vc_scale({0.4, 0.6}, 3.0);
  CHECK(s.lo == doctest::Approx(0.2));
  CHECK(s.hi == doctest::Approx(0.8));
  const vc_interval c = vc_clip_unit({-0.2, 0.8});
  CHECK(c.lo == 0.0);
  CHECK(c.hi == 0.8);
  CHECK(vc_contains({0.2, 0.5}, 0.2));
  CHECK_FALSE(vc_contains({0.2, 0.5}, 0.6));
}

TEST_CASE("schedule rate") {
  const vc_config cfg = arbitrary(0.1, 100, 2.0, 0.1);
  double r = 0.0;
  CHECK(vc_schedule_rate(&cfg, 50, &r) == VC_OK);
  CHECK(r == doctest::Approx(0.2));
  CHECK(vc_schedule_rate(&cfg, 100, &r) == VC_E_OUT_OF_RANGE);
  CHECK(std::string(vc_last_error()).find("outside") != std::string::npos);

  vc_config custom = arbitrary(0.0, 2, 2.0, 0.1);
  custom.schedule = VC_SCHEDULE_CUSTOM_TABLE;
  const double rates[] = {1.0, 0.5};
  custom.rates = rates;
  custom.rates_len = 2;
  CHECK(vc_schedule_rate(&custom, 1, &r) == VC_OK);
  CHECK(r == 0.5);
  CHECK(vc_schedule_rate(nullptr, 1, &r) == VC_E_INVALID_ARGUMENT);
}

TEST_CASE("predictor handle: hand execution and protocol") {
  const vc_config cfg = arbitrary(0.0, 2, 2.0, 0.1);
  vc_predictor* p = nullptr;
  REQUIRE(vc_predictor_create(&cfg, &p) == VC_OK);
  vc_interval played{};
  int covered = -1;
  CHECK(vc_predictor_update(p, 0.5, &covered) == VC_E_PROTOCOL);
  CHECK(vc_predictor_predict(p, &played) == VC_OK);
  CHECK(played.lo == 0.0);
  CHECK(played.hi == 0.0);
  CHECK(vc_predictor_predict(p, &played) == VC_E_PROTOCOL);
  CHECK(vc_predictor_update(p, 0.5, &covered) == VC_OK);
  CHECK(covered == 0);
  CHECK(vc_predictor_misses(p) == 1);
  CHECK(vc_predictor_day(p) == 2);
  CHECK(vc_predictor_predict(p, &played) == VC_OK);
  CHECK(played.lo == doctest::Approx(0.4));
  CHECK(played.hi == doctest::Approx(0.6));
  CHECK(vc_predictor_update(p, 0.5, &covered) == VC_OK);
  CHECK(covered == 1);
  CHECK(vc_predictor_predict(p, &played) == VC_E_OUT_OF_RANGE);
  vc_predictor_destroy(p);
  vc_predictor_destroy(nullptr);

  vc_config bad = cfg;
  bad.mu = 0.5;
  vc_predictor* q = nullptr;
  CHECK(vc_predictor_create(&bad, &q) == VC_E_INVALID_ARGUMENT);
  CHECK(q == nullptr);
  CHECK(std::string(vc_last_error()).find("mu") != std::string::npos);
}

TEST_CASE("run, trace, metrics, audit") {
  const vc_config cfg = arbitrary(0.0, 2, 2.0, 0.1);
  const double seq[] = {0.5, 0.5};
  vc_trace* trace = nullptr;
  REQUIRE(vc_run(&cfg, seq, 2, &trace) == VC_OK);
  CHECK(vc_trace_length(trace) == 2);
  CHECK(vc_trace_mistakes(trace) == 1);
  CHECK(vc_trace_resets(trace) == 1);
  vc_day_record day{};
  REQUIRE(vc_trace_day(trace, 1, &day) == VC_OK);
  CHECK(day.reset == 1);
  CHECK(day.has_base == 1);
  CHECK(day.base.lo == 0.5);
  CHECK(day.covered == 1);
  CHECK(vc_trace_day(trace, 2, &day) == VC_E_OUT_OF_RANGE);

  vc_metrics m{};
  REQUIRE(vc_compute_metrics(trace, seq, 2, 0.0, &cfg, &m) == VC_OK);
  CHECK(m.coverage == 0.5);
  CHECK(m.resets == 1);
  CHECK(m.mu_max == doctest::Approx(2.0));

  vc_phase_audit audit{};
  CHECK(vc_phase_audit_run(trace, &cfg, &audit) == VC_E_INVALID_ARGUMENT);
  vc_trace_destroy(trace);

  const vc_config five = arbitrary(0.05, 2000, 5.0, 1e-4);
  std::vector<double> flat(2000, 1.0);
  REQUIRE(vc_run(&five, flat.data(), flat.size(), &trace) == VC_OK);
  REQUIRE(vc_phase_audit_run(trace, &five, &audit) == VC_OK);
  CHECK(audit.reset_count_bound == 15);
  CHECK(audit.growth_ok == 1);
  vc_mistake_bound mb{};
  REQUIRE(vc_mistake_bound_check(trace, &five, 0.05, &mb) == VC_OK);
  CHECK(mb.bound == doctest::Approx(1817.0));
  CHECK(mb.ok == 1);
  CHECK(mb.mistakes == 101);  // [0,0] is kept until the budget of 100 misses is spent
  vc_trace_destroy(trace);

  CHECK(vc_run(&cfg, seq, 1, &trace) == VC_E_INVALID_ARGUMENT);
}

TEST_CASE("opt and uc") {
  const double s[] = {0.1, 0.2, 0.9};
  double v = 0.0;
  vc_interval w{};
  REQUIRE(vc_opt_volume(s, 3, 1.0 / 3.0, &v, &w) == VC_OK);
  CHECK(v == doctest::Approx(0.1));
  CHECK(w.lo == 0.1);
  CHECK(w.hi == 0.2);
  REQUIRE(vc_brute_force_opt(s, 3, 0.0, &v, &w) == VC_OK);
  CHECK(v == doctest::Approx(0.8));
  CHECK(vc_opt_volume(s, 0, 0.1, &v, &w) != VC_OK);

  const double two[] = {0.0, 1.0};
  REQUIRE(vc_uc_max_deviation(two, 2, 1, 1, &v) == VC_OK);
  CHECK(v == doctest::Approx(0.5));
  CHECK(vc_uc_max_deviation(two, 2, 0, 1, &v) == VC_E_INVALID_ARGUMENT);

  std::vector<double> flat(100, 0.3);
  const size_t lens[] = {10, 100};
  vc_uc_report reps[2];
  REQUIRE(vc_uc_profile(flat.data(), flat.size(), lens, 2, 5, 1.0, 1, reps) == VC_OK);
  CHECK(reps[0].prefix_len == 10);
  CHECK(reps[1].max_deviation == 0.0);
  CHECK(reps[1].within == 1);
}

TEST_CASE("dk functions") {
  double out = 0.0;
  REQUIRE(vc_dk_cdf(0.1, 0.3, 2, 0.3, &out) == VC_OK);
  CHECK(out == doctest::Approx(0.9));
  REQUIRE(vc_dk_inverse_cdf(0.1, 0.3, 2, 0.0, &out) == VC_OK);
  CHECK(out == doctest::Approx(0.027));
  REQUIRE(vc_dk_vstar(0.1, 0.3, 2, 1.0, &out) == VC_OK);
  CHECK(out == doctest::Approx(0.973));
  CHECK(vc_dk_cdf(0.1, 0.3, 5, 0.3, &out) == VC_E_INVALID_ARGUMENT);
}

TEST_CASE("sequences: generate, write, read") {
  vc_sequence_spec spec{};
  spec.family = VC_FAMILY_PHASED;
  spec.alpha = 0.5;
  spec.horizon = 4;
  spec.k = 2;
  spec.eps = 0.5;
  spec.phase = 2;
  spec.seed = 9;
  vc_sequence* seq = nullptr;
  REQUIRE(vc_sequence_generate(&spec, &seq) == VC_OK);
  CHECK(vc_sequence_length(seq) == 4);
  CHECK(std::string(vc_sequence_header(seq)) == "family=phased alpha=0.5 T=4 K=2 eps=0.5 i=2 seed=9 symmetric=0");
  const double* values = vc_sequence_values(seq);
  CHECK(values[0] <= 0.5);

  const std::string path = (std::filesystem::temp_directory_path() / "volconf_c_api_seq.txt").string();
  REQUIRE(vc_sequence_write(seq, path.c_str()) == VC_OK);
  vc_sequence* back = nullptr;
  REQUIRE(vc_sequence_read(path.c_str(), &back) == VC_OK);
  REQUIRE(vc_sequence_length(back) == 4);
  for (size_t i = 0; i < 4; ++i) CHECK(vc_sequence_values(back)[i] == values[i]);
  CHECK(std::string(vc_sequence_header(back)) == vc_sequence_header(seq));
  vc_sequence_destroy(back);
  vc_sequence_destroy(seq);
  std::remove(path.c_str());

  spec.k = 30;
  CHECK(vc_sequence_generate(&spec, &seq) == VC_E_INVALID_ARGUMENT);
  CHECK(std::string(vc_last_error()).find("1/alpha") != std::string::npos);
  CHECK(vc_sequence_read("/nonexistent/dir/x.txt", &seq) == VC_E_IO);

  char buf[8];
  CHECK(vc_format_real(0.123456789, buf, sizeof buf) == 11);
  CHECK(std::string(buf) == "0.12345");
}

TEST_CASE("halfway set") {
  const vc_config cfg = arbitrary(0.1, 2, 2.0, 0.1);
  const double prefix[] = {0.5};
  vc_interval out{};
  REQUIRE(vc_halfway_conformal_set(&cfg, prefix, 1, &out) == VC_OK);
  CHECK(out.lo == 0.0);
  CHECK(out.hi == 0.0);
  CHECK(vc_halfway_conformal_set(&cfg, prefix, 0, &out) == VC_E_INVALID_ARGUMENT);
}
