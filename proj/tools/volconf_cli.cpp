// Command-line front end. Uses only the C interface in volconf/volconf.h.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "volconf/volconf.h"

namespace {

constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBounds = 3;

struct CliError {
  int exit_code;
  std::string message;
};

void check(vc_status status) {
  if (status == VC_OK) return;
  const int code = (status == VC_E_IO || status == VC_E_INTERNAL) ? kExitIo : kExitConfig;
  throw CliError{code, std::string(vc_status_name(status)) + ": " + vc_last_error()};
}

[[noreturn]] void config_error(const std::string& message) { throw CliError{kExitConfig, message}; }

struct SequenceDeleter {
  void operator()(vc_sequence* s) const { vc_sequence_destroy(s); }
};
struct TraceDeleter {
  void operator()(vc_trace* t) const { vc_trace_destroy(t); }
};
using SequencePtr = std::unique_ptr<vc_sequence, SequenceDeleter>;
using TracePtr = std::unique_ptr<vc_trace, TraceDeleter>;

std::string real(double v) {
  char buf[40];
  vc_format_real(v, buf, sizeof buf);
  return buf;
}

SequencePtr read_sequence(const std::string& path) {
  vc_sequence* raw = nullptr;
  check(vc_sequence_read(path.c_str(), &raw));
  return SequencePtr(raw);
}

std::vector<double> values_of(const vc_sequence* s) {
  const double* v = vc_sequence_values(s);
  return {v, v + vc_sequence_length(s)};
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw CliError{kExitIo, "cannot open '" + path + "' for writing"};
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void finish(const std::string& path) {
    stream().flush();
    if (!stream()) throw CliError{kExitIo, "write to '" + (path.empty() ? std::string("stdout") : path) + "' failed"};
  }

 private:
  std::ofstream file_;
};

// ---------------------------------------------------------------------------
// Shared option groups

struct FamilyOptions {
  std::string family = "phased";
  std::size_t horizon = 1000;
  std::optional<double> eps;
  unsigned phase = 0;  // 0 selects i = K
  std::size_t switch_day = 0;
  std::string multiset;
  std::uint64_t seed = 0;
  bool symmetric = false;
};

struct PredictorOptions {
  std::string schedule = "arbitrary";
  double mu = 5.0;
  double minwidth = 1e-3;
  double c = 1.0;
  std::string rates_file;
};

void add_family_options(CLI::App* cmd, FamilyOptions& f, bool with_seed = true) {
  cmd->add_option("--family", f.family, "Sequence family: phased, dk-iid, dk-then-constant, permutation")
      ->check(CLI::IsMember({"phased", "dk-iid", "dk-then-constant", "permutation"}))
      ->capture_default_str();
  cmd->add_option("-T,--horizon", f.horizon, "Sequence length T")->capture_default_str();
  cmd->add_option("--eps", f.eps, "Scale ratio (default: (2*minwidth)^(1/K) for phased, 1/2 for D^(K))");
  cmd->add_option("--phase", f.phase, "Phased family index i (default K)");
  cmd->add_option("--switch-day", f.switch_day, "Last i.i.d. day for dk-then-constant");
  cmd->add_option("--multiset", f.multiset, "Sequence file holding the multiset to permute");
  if (with_seed) cmd->add_option("--seed", f.seed, "Generator seed")->capture_default_str();
  cmd->add_flag("--symmetric", f.symmetric, "Use the variant symmetric about 1/2");
}

void add_predictor_options(CLI::App* cmd, PredictorOptions& p, bool with_mu = true) {
  if (with_mu) cmd->add_option("--mu", p.mu, "Volume approximation factor mu >= 1")->capture_default_str();
  cmd->add_option("--minwidth", p.minwidth, "Scale lower bound in (0, 1]")->capture_default_str();
  cmd->add_option("--C", p.c, "Constant of the exchangeable schedule")->capture_default_str();
  cmd->add_option("--rates-file", p.rates_file, "Sequence-format file of T rates for the custom schedule");
}

SequencePtr generate_sequence(const FamilyOptions& f, double alpha, unsigned k, double minwidth, std::uint64_t seed) {
  vc_sequence_spec spec{};
  spec.alpha = alpha;
  spec.horizon = f.horizon;
  spec.k = k;
  spec.phase = f.phase == 0 ? k : f.phase;
  spec.switch_day = f.switch_day;
  spec.seed = seed;
  spec.symmetric = f.symmetric ? 1 : 0;
  std::vector<double> multiset;
  if (f.family == "phased") {
    spec.family = VC_FAMILY_PHASED;
    spec.eps = f.eps ? *f.eps : std::min(1.0, std::pow(2.0 * minwidth, 1.0 / std::max(1u, k)));
  } else if (f.family == "dk-iid" || f.family == "dk-then-constant") {
    spec.family = f.family == "dk-iid" ? VC_FAMILY_DK_IID : VC_FAMILY_DK_THEN_CONSTANT;
    spec.eps = f.eps ? *f.eps : 0.5;
  } else if (f.family == "permutation") {
    if (f.multiset.empty()) config_error("permutation family needs --multiset");
    multiset = values_of(read_sequence(f.multiset).get());
    spec.family = VC_FAMILY_PERMUTATION;
    spec.values = multiset.data();
    spec.values_len = multiset.size();
  } else {
    config_error("unknown family '" + f.family + "'");
  }
  vc_sequence* raw = nullptr;
  check(vc_sequence_generate(&spec, &raw));
  return SequencePtr(raw);
}

struct PredictorSetup {
  vc_config config{};
  std::vector<double> rates;
};

PredictorSetup make_config(const PredictorOptions& p, const std::string& schedule, double mu, double alpha,
                           std::size_t horizon) {
  PredictorSetup s;
  s.config.minwidth = p.minwidth;
  s.config.mu = mu;
  s.config.horizon = horizon;
  s.config.alpha = alpha;
  s.config.c = p.c;
  if (schedule == "arbitrary") {
    s.config.schedule = VC_SCHEDULE_ARBITRARY_ORDER;
  } else if (schedule == "exchangeable") {
    s.config.schedule = VC_SCHEDULE_EXCHANGEABLE;
  } else if (schedule == "custom") {
    if (p.rates_file.empty()) config_error("custom schedule needs --rates-file");
    s.rates = values_of(read_sequence(p.rates_file).get());
    s.config.schedule = VC_SCHEDULE_CUSTOM_TABLE;
  } else {
    config_error("unknown schedule '" + schedule + "'");
  }
  return s;
}

// vc_config holds a pointer into rates; bind it only once the setup is in place.
const vc_config* bind(PredictorSetup& s) {
  s.config.rates = s.rates.data();
  s.config.rates_len = s.rates.size();
  return &s.config;
}

struct RunOutcome {
  vc_metrics metrics{};
  std::vector<std::string> violations;
};

RunOutcome evaluate(const vc_config* config, const vc_trace* trace, const std::vector<double>& values, double alpha) {
  RunOutcome out;
  check(vc_compute_metrics(trace, values.data(), values.size(), alpha, config, &out.metrics));
  if (config->schedule != VC_SCHEDULE_ARBITRARY_ORDER) return out;
  const double cap = config->mu * std::max(out.metrics.opt_volume, config->minwidth) + 1e-9;
  if (out.metrics.max_volume > cap) {
    out.violations.push_back("volume cap: max volume " + real(out.metrics.max_volume) + " > " + real(cap));
  }
  if (config->mu > 3.0) {
    vc_phase_audit audit{};
    check(vc_phase_audit_run(trace, config, &audit));
    if (!audit.growth_ok) out.violations.push_back("reset growth below (mu-1)/2 inside the epoch");
    if (!audit.reset_count_ok) {
      out.violations.push_back("epoch resets " + std::to_string(audit.resets_in_epoch) + " > bound " +
                               std::to_string(audit.reset_count_bound));
    }
    vc_mistake_bound mb{};
    check(vc_mistake_bound_check(trace, config, alpha, &mb));
    if (!mb.ok) {
      out.violations.push_back("mistakes " + std::to_string(mb.mistakes) + " > derived bound " + real(mb.bound));
    }
  }
  return out;
}

const char* kMetricsColumns =
    "sequence,schedule,T,alpha,C,mu,minwidth,seed,coverage,mistakes,avg_volume,max_volume,opt_volume,mu_avg,mu_max,"
    "resets";

std::string metrics_row(const std::string& sequence, const std::string& schedule, const vc_config& c,
                        std::uint64_t seed, const vc_metrics& m) {
  std::ostringstream os;
  os << sequence << ',' << schedule << ',' << c.horizon << ',' << real(c.alpha) << ',' << real(c.c) << ','
     << real(c.mu) << ',' << real(c.minwidth) << ',' << seed << ',' << real(m.coverage) << ',' << m.mistakes << ','
     << real(m.avg_volume) << ',' << real(m.max_volume) << ',' << real(m.opt_volume) << ',' << real(m.mu_avg) << ','
     << real(m.mu_max) << ',' << m.resets;
  return os.str();
}

std::string config_echo(const std::string& schedule, const vc_config& c) {
  return "schedule=" + schedule + " T=" + std::to_string(c.horizon) + " alpha=" + real(c.alpha) + " C=" + real(c.c) +
         " mu=" + real(c.mu) + " minwidth=" + real(c.minwidth);
}

// ---------------------------------------------------------------------------
// generate

struct GenerateOptions {
  FamilyOptions family;
  double alpha = 0.05;
  unsigned k = 2;
  double minwidth = 1e-3;
  std::string out;
};

void register_generate(CLI::App& app, GenerateOptions& g) {
  auto* cmd = app.add_subcommand("generate", "Write a generated sequence file");
  add_family_options(cmd, g.family);
  cmd->add_option("--alpha", g.alpha, "Miscoverage rate alpha")->capture_default_str();
  cmd->add_option("-K,--K", g.k, "Number of scales K")->capture_default_str();
  cmd->add_option("--minwidth", g.minwidth, "Scale lower bound (sets the default phased eps)")->capture_default_str();
  cmd->add_option("--out", g.out, "Output path")->required();
}

int run_generate(const GenerateOptions& g) {
  const SequencePtr seq = generate_sequence(g.family, g.alpha, g.k, g.minwidth, g.family.seed);
  check(vc_sequence_write(seq.get(), g.out.c_str()));
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOptions {
  FamilyOptions family;
  PredictorOptions predictor;
  std::string in;
  double alpha = 0.05;
  unsigned k = 2;
  std::string out;
  bool assert_bounds = false;
};

void register_simulate(CLI::App& app, SimulateOptions& s) {
  auto* cmd = app.add_subcommand("simulate", "Run the predictor on one sequence and write trace and metrics CSV");
  add_family_options(cmd, s.family);
  add_predictor_options(cmd, s.predictor);
  cmd->add_option("--schedule", s.predictor.schedule, "arbitrary, exchangeable or custom")
      ->check(CLI::IsMember({"arbitrary", "exchangeable", "custom"}))
      ->capture_default_str();
  cmd->add_option("--in", s.in, "Sequence file to read instead of generating one");
  cmd->add_option("--alpha", s.alpha, "Target miscoverage rate alpha")->capture_default_str();
  cmd->add_option("-K,--K", s.k, "Number of scales K for generated sequences")->capture_default_str();
  cmd->add_option("--out", s.out, "Output prefix: writes PREFIX.trace.csv and PREFIX.metrics.csv");
  cmd->add_flag("--assert-bounds", s.assert_bounds, "Exit 3 when a guaranteed bound is violated");
}

int run_simulate(const SimulateOptions& s) {
  SequencePtr seq = s.in.empty() ? generate_sequence(s.family, s.alpha, s.k, s.predictor.minwidth, s.family.seed)
                                 : read_sequence(s.in);
  const std::vector<double> values = values_of(seq.get());
  const std::string description = vc_sequence_header(seq.get());
  PredictorSetup setup = make_config(s.predictor, s.predictor.schedule, s.predictor.mu, s.alpha, values.size());
  const vc_config* config = bind(setup);

  vc_trace* raw = nullptr;
  check(vc_run(config, values.data(), values.size(), &raw));
  const TracePtr trace(raw);
  const RunOutcome outcome = evaluate(config, trace.get(), values, s.alpha);
  const std::string echo = "# volconf simulate " + config_echo(s.predictor.schedule, *config) + " | " + description;

  if (!s.out.empty()) {
    const std::string path = s.out + ".trace.csv";
    Output out(path);
    auto& os = out.stream();
    os << echo << '\n' << "day,played_lo,played_hi,y,covered,reset\n";
    vc_day_record rec{};
    for (std::size_t i = 0; i < vc_trace_length(trace.get()); ++i) {
      check(vc_trace_day(trace.get(), i, &rec));
      os << (i + 1) << ',' << real(rec.played.lo) << ',' << real(rec.played.hi) << ',' << real(rec.observed) << ','
         << rec.covered << ',' << rec.reset << '\n';
    }
    out.finish(path);
  }
  const std::string metrics_path = s.out.empty() ? std::string() : s.out + ".metrics.csv";
  Output out(metrics_path);
  out.stream() << echo << '\n'
               << kMetricsColumns << '\n'
               << metrics_row(description, s.predictor.schedule, *config, s.family.seed, outcome.metrics) << '\n';
  out.finish(metrics_path);

  if (s.assert_bounds && !outcome.violations.empty()) {
    for (const auto& v : outcome.violations) std::cerr << "bound violated: " << v << '\n';
    return kExitBounds;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOptions {
  FamilyOptions family;
  PredictorOptions predictor;
  std::vector<double> mus{5.0};
  std::vector<unsigned> ks{2};
  std::vector<double> alphas{0.05};
  std::vector<std::string> schedules{"arbitrary"};
  std::size_t trials = 1;
  std::size_t jobs = 1;
  std::string out;
  bool assert_bounds = false;
};

void register_sweep(CLI::App& app, SweepOptions& s) {
  auto* cmd = app.add_subcommand("sweep", "Run a parameter grid and write per-trial and aggregate metrics CSV");
  add_family_options(cmd, s.family);
  add_predictor_options(cmd, s.predictor, false);
  cmd->add_option("--mu", s.mus, "Grid of mu values")->delimiter(',')->expected(0, -1);
  cmd->add_option("-K,--K", s.ks, "Grid of K values")->delimiter(',')->expected(0, -1);
  cmd->add_option("--alpha", s.alphas, "Grid of alpha values")->delimiter(',')->expected(0, -1);
  cmd->add_option("--schedule", s.schedules, "Grid of schedules")->delimiter(',')->expected(0, -1);
  cmd->add_option("--trials", s.trials, "Trials per cell; trial j uses seed + j")->capture_default_str();
  cmd->add_option("--jobs", s.jobs, "Worker threads")->capture_default_str();
  cmd->add_option("--out", s.out, "Output CSV path (default stdout)");
  cmd->add_flag("--assert-bounds", s.assert_bounds, "Exit 3 when a guaranteed bound is violated");
}

struct SweepCell {
  double mu;
  unsigned k;
  double alpha;
  std::string schedule;
};

struct SweepResult {
  std::string sequence;
  vc_config config{};
  vc_metrics metrics{};
  std::vector<std::string> violations;
  std::optional<CliError> error;
};

int run_sweep(const SweepOptions& s) {
  if (s.mus.empty() || s.ks.empty() || s.alphas.empty() || s.schedules.empty()) config_error("sweep: empty grid");
  if (s.trials == 0) config_error("sweep: --trials must be >= 1");
  std::vector<SweepCell> cells;
  for (const auto& schedule : s.schedules)
    for (double alpha : s.alphas)
      for (unsigned k : s.ks)
        for (double mu : s.mus) cells.push_back({mu, k, alpha, schedule});

  std::vector<SweepResult> results(cells.size() * s.trials);
  auto work = [&](std::size_t task) {
    SweepResult& r = results[task];
    try {
      const SweepCell& cell = cells[task / s.trials];
      const std::uint64_t seed = s.family.seed + task % s.trials;
      SequencePtr seq = generate_sequence(s.family, cell.alpha, cell.k, s.predictor.minwidth, seed);
      const std::vector<double> values = values_of(seq.get());
      r.sequence = vc_sequence_header(seq.get());
      PredictorSetup setup = make_config(s.predictor, cell.schedule, cell.mu, cell.alpha, values.size());
      const vc_config* config = bind(setup);
      vc_trace* raw = nullptr;
      check(vc_run(config, values.data(), values.size(), &raw));
      const TracePtr trace(raw);
      RunOutcome outcome = evaluate(config, trace.get(), values, cell.alpha);
      r.config = *config;
      r.config.rates = nullptr;
      r.metrics = outcome.metrics;
      r.violations = std::move(outcome.violations);
    } catch (const CliError& e) {
      r.error = e;
    }
  };

  const std::size_t jobs = std::max<std::size_t>(1, std::min(s.jobs, results.size()));
  if (jobs == 1) {
    for (std::size_t t = 0; t < results.size(); ++t) work(t);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < jobs; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t t = w; t < results.size(); t += jobs) work(t);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& r : results) {
    if (r.error) throw *r.error;
  }

  Output out(s.out);
  auto& os = out.stream();
  os << "# volconf sweep family=" << s.family.family << " T=" << s.family.horizon << " minwidth="
     << real(s.predictor.minwidth) << " C=" << real(s.predictor.c) << " trials=" << s.trials
     << " seed=" << s.family.seed << " symmetric=" << (s.family.symmetric ? 1 : 0) << '\n';
  os << "row,cell,trial," << kMetricsColumns << '\n';
  bool violated = false;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::vector<double> sums(8, 0.0), squares(8, 0.0);
    for (std::size_t j = 0; j < s.trials; ++j) {
      const SweepResult& r = results[c * s.trials + j];
      os << "trial," << c << ',' << j << ','
         << metrics_row(r.sequence, cells[c].schedule, r.config, s.family.seed + j, r.metrics) << '\n';
      const double fields[8] = {r.metrics.coverage,   static_cast<double>(r.metrics.mistakes), r.metrics.avg_volume,
                                r.metrics.max_volume, r.metrics.opt_volume, r.metrics.mu_avg, r.metrics.mu_max,
                                static_cast<double>(r.metrics.resets)};
      for (int f = 0; f < 8; ++f) {
        sums[f] += fields[f];
        squares[f] += fields[f] * fields[f];
      }
      for (const auto& v : r.violations) {
        violated = true;
        std::cerr << "bound violated (cell " << c << ", trial " << j << "): " << v << '\n';
      }
    }
    const auto n = static_cast<double>(s.trials);
    const vc_config& cfg = results[c * s.trials].config;
    for (const char* kind : {"mean", "std"}) {
      os << kind << ',' << c << ",," << "" << ',' << cells[c].schedule << ',' << cfg.horizon << ',' << real(cfg.alpha)
         << ',' << real(cfg.c) << ',' << real(cfg.mu) << ',' << real(cfg.minwidth) << ',' << s.family.seed;
      for (int f = 0; f < 8; ++f) {
        const double mean = sums[f] / n;
        double value = mean;
        if (std::string(kind) == "std") {
          value = s.trials > 1 ? std::sqrt(std::max(0.0, (squares[f] - n * mean * mean) / (n - 1.0))) : 0.0;
        }
        os << ',' << real(value);
      }
      os << '\n';
    }
  }
  out.finish(s.out);
  return (s.assert_bounds && violated) ? kExitBounds : 0;
}

// ---------------------------------------------------------------------------
// uc-check

struct UcOptions {
  std::string multiset;
  std::vector<std::size_t> prefix_lens;
  std::size_t trials = 100;
  double c = 1.0;
  std::uint64_t seed = 0;
  std::string out;
};

void register_uc(CLI::App& app, UcOptions& u) {
  auto* cmd = app.add_subcommand("uc-check", "Empirical uniform convergence of prefix coverage under permutation");
  cmd->add_option("--multiset", u.multiset, "Sequence file holding the multiset")->required();
  cmd->add_option("--prefix-lens", u.prefix_lens, "Prefix lengths t")->delimiter(',')->required();
  cmd->add_option("--trials", u.trials, "Random permutations")->capture_default_str();
  cmd->add_option("--C", u.c, "Bound constant: C * sqrt(ln T / t)")->capture_default_str();
  cmd->add_option("--seed", u.seed, "Permutation seed; trial j uses seed + j")->capture_default_str();
  cmd->add_option("--out", u.out, "Output CSV path (default stdout)");
}

int run_uc(const UcOptions& u) {
  const SequencePtr seq = read_sequence(u.multiset);
  const std::vector<double> values = values_of(seq.get());
  std::vector<vc_uc_report> reports(u.prefix_lens.size());
  check(vc_uc_profile(values.data(), values.size(), u.prefix_lens.data(), u.prefix_lens.size(), u.trials, u.c,
                      u.seed, reports.data()));
  Output out(u.out);
  auto& os = out.stream();
  os << "# volconf uc-check T=" << values.size() << " trials=" << u.trials << " C=" << real(u.c) << " seed=" << u.seed
     << " | " << vc_sequence_header(seq.get()) << '\n';
  os << "prefix_len,trials,median_deviation,p95_deviation,worst_deviation,bound,within\n";
  for (const auto& r : reports) {
    os << r.prefix_len << ',' << r.trials << ',' << real(r.median_deviation) << ',' << real(r.max_deviation) << ','
       << real(r.worst_deviation) << ',' << real(r.bound) << ',' << r.within << '\n';
  }
  out.finish(u.out);
  return 0;
}

// ---------------------------------------------------------------------------
// opt

struct OptOptions {
  std::string in;
  double alpha = 0.05;
  std::string out;
};

void register_opt(CLI::App& app, OptOptions& o) {
  auto* cmd = app.add_subcommand("opt", "Print the hindsight-optimal interval Opt_S(alpha) of a sequence file");
  cmd->add_option("--in", o.in, "Sequence file")->required();
  cmd->add_option("--alpha", o.alpha, "Miscoverage rate alpha")->capture_default_str();
  cmd->add_option("--out", o.out, "Output CSV path (default stdout)");
}

int run_opt(const OptOptions& o) {
  const SequencePtr seq = read_sequence(o.in);
  const std::vector<double> values = values_of(seq.get());
  double vol = 0.0;
  vc_interval witness{};
  check(vc_opt_volume(values.data(), values.size(), o.alpha, &vol, &witness));
  Output out(o.out);
  out.stream() << "# volconf opt | " << vc_sequence_header(seq.get()) << '\n'
               << "T,alpha,opt_volume,witness_lo,witness_hi\n"
               << values.size() << ',' << real(o.alpha) << ',' << real(vol) << ',' << real(witness.lo) << ','
               << real(witness.hi) << '\n';
  out.finish(o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"volconf: volume-efficient online conformal prediction on [0, 1]"};
  app.set_config("--config", "", "Read options from a TOML/INI file ([subcommand] sections)");
  app.require_subcommand(1);

  GenerateOptions generate;
  SimulateOptions simulate;
  SweepOptions sweep;
  UcOptions uc;
  OptOptions opt;
  register_generate(app, generate);
  register_simulate(app, simulate);
  register_sweep(app, sweep);
  register_uc(app, uc);
  register_opt(app, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (app.got_subcommand("generate")) return run_generate(generate);
    if (app.got_subcommand("simulate")) return run_simulate(simulate);
    if (app.got_subcommand("sweep")) return run_sweep(sweep);
    if (app.got_subcommand("uc-check")) return run_uc(uc);
    if (app.got_subcommand("opt")) return run_opt(opt);
  } catch (const CliError& e) {
    std::cerr << "volconf: " << e.message << '\n';
    return e.exit_code;
  }
  return kExitConfig;
}
