// Drives the volconf executable. argv[1] is its path, argv[2] a scratch
// directory.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

std::string g_cli;
fs::path g_work;

namespace {

int sh(const std::string& args) {
  const std::string cmd = "'" + g_cli + "' " + args + " >/dev/null 2>" + (g_work / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string path(const std::string& name) { return (g_work / name).string(); }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  for (std::string cell; std::getline(is, cell, ',');) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

/// Column name -> value for the data row that follows the column line.
std::map<std::string, std::string> row_of(const std::string& columns, const std::string& row) {
  std::map<std::string, std::string> out;
  const auto names = split(columns);
  const auto cells = split(row);
  REQUIRE(names.size() == cells.size());
  for (std::size_t i = 0; i < names.size(); ++i) out[names[i]] = cells[i];
  return out;
}

void write(const std::string& name, const std::string& text) {
  std::ofstream out(g_work / name, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("generate is deterministic and records its spec") {
  const std::string base = "generate --family phased --alpha 0.05 -T 2000 -K 4 --eps 0.3 --phase 2 --seed 7 --out ";
  REQUIRE(sh(base + path("g1.txt")) == 0);
  REQUIRE(sh(base + path("g2.txt")) == 0);
  const std::string a = slurp(path("g1.txt"));
  CHECK(a == slurp(path("g2.txt")));
  const auto ls = lines(a);
  REQUIRE(ls.size() == 2001);
  CHECK(ls[0] == "# family=phased alpha=0.05 T=2000 K=4 eps=0.3 i=2 seed=7 symmetric=0");

  REQUIRE(sh("generate --family phased --alpha 0.05 -T 2000 -K 4 --eps 0.3 --phase 2 --seed 8 --out " + path("g3.txt")) == 0);
  CHECK(a != slurp(path("g3.txt")));
}

TEST_CASE("generate validation errors exit 2") {
  CHECK(sh("generate --alpha 0.05 -T 2000 -K 30 --out " + path("bad.txt")) == 2);
  CHECK(slurp(path("stderr.txt")).find("1/alpha") != std::string::npos);
  CHECK(sh("generate --family nope --out " + path("bad.txt")) == 2);
  CHECK(sh("generate --family permutation --out " + path("bad.txt")) == 2);
  CHECK(sh("frobnicate") == 2);
  CHECK(sh("generate -T 10 --out /nonexistent/dir/file.txt") == 1);
}

TEST_CASE("simulate the T = 2 constant sequence") {
  write("const2.txt", "# constant\n0.5\n0.5\n");
  REQUIRE(sh("simulate --in " + path("const2.txt") + " --alpha 0 --mu 2 --minwidth 0.1 --out " + path("c2")) == 0);
  const auto trace = lines(slurp(path("c2.trace.csv")));
  REQUIRE(trace.size() == 4);
  CHECK(trace[1] == "day,played_lo,played_hi,y,covered,reset");
  CHECK(trace[2] == "1,0,0,0.5,0,0");
  CHECK(trace[3].substr(0, 2) == "2,");
  CHECK(trace[3].substr(trace[3].size() - 8) == ",0.5,1,1");

  const auto metrics = lines(slurp(path("c2.metrics.csv")));
  REQUIRE(metrics.size() == 3);
  CHECK(metrics[0].find("# volconf simulate schedule=arbitrary T=2 alpha=0") == 0);
  CHECK(metrics[0].find("constant") != std::string::npos);
  auto row = row_of(metrics[1], metrics[2]);
  CHECK(row["mistakes"] == "1");
  CHECK(row["resets"] == "1");
  CHECK(row["coverage"] == "0.5");
  CHECK(std::stod(row["mu_max"]) == doctest::Approx(2.0));
}

TEST_CASE("simulate reruns are byte identical and coverage matches mistakes") {
  const std::string args = "simulate --family dk-iid --alpha 0.1 -K 2 --eps 0.3 -T 3000 --seed 5 --mu 4 --out ";
  REQUIRE(sh(args + path("r1")) == 0);
  REQUIRE(sh(args + path("r2")) == 0);
  CHECK(slurp(path("r1.trace.csv")) == slurp(path("r2.trace.csv")));
  CHECK(slurp(path("r1.metrics.csv")) == slurp(path("r2.metrics.csv")));

  const auto trace = lines(slurp(path("r1.trace.csv")));
  std::size_t covered = 0;
  for (std::size_t i = 2; i < trace.size(); ++i) covered += split(trace[i])[4] == "1" ? 1 : 0;
  const auto metrics = lines(slurp(path("r1.metrics.csv")));
  auto row = row_of(metrics[1], metrics[2]);
  CHECK(std::stoul(row["mistakes"]) == 3000 - covered);
  CHECK(std::stod(row["coverage"]) == doctest::Approx(covered / 3000.0).epsilon(1e-15));
  CHECK(row["seed"] == "5");
}

TEST_CASE("generate then simulate equals in-process generation") {
  const std::string spec = "--family phased --alpha 0.05 -T 4000 -K 4 --eps 0.2 --seed 11";
  REQUIRE(sh("generate " + spec + " --out " + path("rt.txt")) == 0);
  REQUIRE(sh("simulate --in " + path("rt.txt") + " --alpha 0.05 --mu 5 --out " + path("rt_file")) == 0);
  REQUIRE(sh("simulate " + spec + " --mu 5 --out " + path("rt_mem")) == 0);
  CHECK(slurp(path("rt_file.trace.csv")) == slurp(path("rt_mem.trace.csv")));
  const auto a = lines(slurp(path("rt_file.metrics.csv")));
  const auto b = lines(slurp(path("rt_mem.metrics.csv")));
  auto ra = row_of(a[1], a[2]);
  auto rb = row_of(b[1], b[2]);
  for (const char* col : {"mistakes", "avg_volume", "max_volume", "opt_volume", "resets", "sequence"}) CHECK(ra[col] == rb[col]);
}

TEST_CASE("assert-bounds passes on guaranteed runs") {
  CHECK(sh("simulate --family phased --alpha 0.05 -T 20000 -K 8 --mu 5 --minwidth 1e-6 --seed 3 --assert-bounds") == 0);
  CHECK(sh("simulate --family dk-iid -K 2 --eps 0.3 --alpha 0.1 -T 2000 --mu 4 --assert-bounds") == 0);
  CHECK(sh("sweep --family dk-iid -K 2 --eps 0.3 --alpha 0.1 -T 1000 --mu 4,5 --trials 5 --assert-bounds --out " +
           path("swab.csv")) == 0);
}

TEST_CASE("sweep: one cell and one trial matches simulate") {
  const std::string fam = "--family phased --alpha 0.05 -T 4000 -K 4 --eps 0.2 --seed 11";
  REQUIRE(sh("sweep " + fam + " --mu 5 --out " + path("sw1.csv")) == 0);
  REQUIRE(sh("simulate " + fam + " --mu 5 --out " + path("sim1")) == 0);
  const auto sw = lines(slurp(path("sw1.csv")));
  REQUIRE(sw.size() == 5);
  CHECK(sw[1] == "row,cell,trial,sequence,schedule,T,alpha,C,mu,minwidth,seed,coverage,mistakes,avg_volume,max_volume,"
                 "opt_volume,mu_avg,mu_max,resets");
  const auto sim = lines(slurp(path("sim1.metrics.csv")));
  CHECK(sw[2] == "trial,0,0," + sim[2]);
  CHECK(sw[3].rfind("mean,0,,,arbitrary,", 0) == 0);
  CHECK(sw[4].rfind("std,0,,,arbitrary,", 0) == 0);
}

TEST_CASE("sweep: row counts, ordering and thread independence") {
  const std::string base = "sweep --family dk-iid -K 2 --eps 0.3 -T 500 --alpha 0.1 --mu 4,8 --trials 200 --seed 1";
  REQUIRE(sh(base + " --jobs 1 --out " + path("sw200a.csv")) == 0);
  REQUIRE(sh(base + " --jobs 4 --out " + path("sw200b.csv")) == 0);
  const std::string a = slurp(path("sw200a.csv"));
  CHECK(a == slurp(path("sw200b.csv")));
  const auto ls = lines(a);
  REQUIRE(ls.size() == 2 + 2 * (200 + 2));
  std::size_t trials = 0;
  for (std::size_t i = 2; i < ls.size(); ++i) trials += ls[i].rfind("trial,", 0) == 0 ? 1 : 0;
  CHECK(trials == 400);
  CHECK(ls[2].rfind("trial,0,0,", 0) == 0);
  CHECK(ls[201].rfind("trial,0,199,", 0) == 0);
  CHECK(ls[202].rfind("mean,0,", 0) == 0);
  CHECK(ls[204].rfind("trial,1,0,", 0) == 0);
}

TEST_CASE("sweep: mistakes fall as mu grows") {
  REQUIRE(sh("sweep --family phased --alpha 0.05 -T 4000 -K 8 --minwidth 1e-4 --mu 4,8,16 --trials 20 --seed 2 --jobs 4 "
             "--out " + path("swmu.csv")) == 0);
  const auto ls = lines(slurp(path("swmu.csv")));
  std::vector<double> means;
  for (const auto& l : ls) {
    if (l.rfind("mean,", 0) == 0) means.push_back(std::stod(row_of(ls[1], l)["mistakes"]));
  }
  REQUIRE(means.size() == 3);
  CHECK(means[0] >= means[1]);
  CHECK(means[1] >= means[2]);
}

TEST_CASE("sweep: empty grid exits 2") {
  CHECK(sh("sweep --mu \"\" --out " + path("empty.csv")) == 2);
  CHECK(sh("sweep --trials 0 --out " + path("empty.csv")) == 2);
}

TEST_CASE("uc-check") {
  std::string two = "# two point\n";
  for (int i = 0; i < 1000; ++i) two += i < 500 ? "0\n" : "1\n";
  write("two.txt", two);
  REQUIRE(sh("uc-check --multiset " + path("two.txt") + " --prefix-lens 100,500 --trials 50 --seed 4 --out " + path("uc1.csv")) == 0);
  REQUIRE(sh("uc-check --multiset " + path("two.txt") + " --prefix-lens 100,500 --trials 50 --seed 4 --out " + path("uc2.csv")) == 0);
  const std::string a = slurp(path("uc1.csv"));
  CHECK(a == slurp(path("uc2.csv")));
  const auto ls = lines(a);
  REQUIRE(ls.size() == 4);
  CHECK(ls[0].find("seed=4") != std::string::npos);
  CHECK(ls[1] == "prefix_len,trials,median_deviation,p95_deviation,worst_deviation,bound,within");
  CHECK(row_of(ls[1], ls[3])["within"] == "1");

  REQUIRE(sh("uc-check --multiset " + path("two.txt") + " --prefix-lens 500 --trials 50 --C 0.01 --out " + path("uc3.csv")) == 0);
  const auto tight = lines(slurp(path("uc3.csv")));
  CHECK(row_of(tight[1], tight[2])["within"] == "0");

  write("flat.txt", "# flat\n0.3\n0.3\n0.3\n0.3\n");
  REQUIRE(sh("uc-check --multiset " + path("flat.txt") + " --prefix-lens 1,2 --trials 5 --C 0.001 --out " + path("uc4.csv")) == 0);
  const auto flat = lines(slurp(path("uc4.csv")));
  CHECK(row_of(flat[1], flat[2])["p95_deviation"] == "0");
  CHECK(row_of(flat[1], flat[3])["within"] == "1");

  CHECK(sh("uc-check --multiset " + path("two.txt") + " --prefix-lens 0 --out " + path("uc5.csv")) == 2);
  CHECK(sh("uc-check --multiset " + path("missing.txt") + " --prefix-lens 1") == 1);
}

TEST_CASE("opt") {
  write("s3.txt", "# three\n0.1\n0.2\n0.9\n");
  REQUIRE(sh("opt --in " + path("s3.txt") + " --alpha 0.3333333333333333 --out " + path("opt.csv")) == 0);
  const auto ls = lines(slurp(path("opt.csv")));
  REQUIRE(ls.size() == 3);
  auto row = row_of(ls[1], ls[2]);
  CHECK(std::stod(row["opt_volume"]) == doctest::Approx(0.1));
  CHECK(row["witness_lo"] == "0.1");
  CHECK(row["witness_hi"] == "0.2");
}

TEST_CASE("config file drives a subcommand") {
  write("exp.toml",
        "[simulate]\nfamily = \"dk-iid\"\nK = 2\neps = 0.3\nalpha = 0.1\nhorizon = 1500\nseed = 9\nmu = 4\n"
        "schedule = \"exchangeable\"\nout = \"" + path("cfg") + "\"\n");
  REQUIRE(sh("--config " + path("exp.toml") + " simulate") == 0);
  REQUIRE(sh("simulate --family dk-iid -K 2 --eps 0.3 --alpha 0.1 -T 1500 --seed 9 --mu 4 --schedule exchangeable --out " +
             path("cli")) == 0);
  CHECK(slurp(path("cfg.metrics.csv")) == slurp(path("cli.metrics.csv")));
  CHECK(slurp(path("cfg.metrics.csv")).find("schedule=exchangeable") != std::string::npos);

  write("bad.toml", "[simulate]\nmu = \"lots\"\n");
  CHECK(sh("--config " + path("bad.toml") + " simulate") == 2);
}

TEST_CASE("custom schedule from a rates file") {
  std::string rates = "# ones\n", seq = "# seq\n";
  for (int i = 0; i < 20; ++i) {
    rates += "1\n";
    seq += i % 2 ? "0.7\n" : "0\n";
  }
  write("ones.txt", rates);
  write("alt.txt", seq);
  REQUIRE(sh("simulate --in " + path("alt.txt") + " --schedule custom --rates-file " + path("ones.txt") + " --out " + path("cu")) == 0);
  const auto m = lines(slurp(path("cu.metrics.csv")));
  auto row = row_of(m[1], m[2]);
  CHECK(row["resets"] == "0");
  CHECK(row["mistakes"] == "10");
  CHECK(sh("simulate --in " + path("alt.txt") + " --schedule custom") == 2);
}

int main(int argc, char** argv) {
  if (argc < 3) return 2;
  g_cli = argv[1];
  g_work = argv[2];
  fs::create_directories(g_work);
  std::vector<char*> rest{argv[0]};
  rest.insert(rest.end(), argv + 3, argv + argc);
  doctest::Context ctx;
  ctx.applyCommandLine(static_cast<int>(rest.size()), rest.data());
  return ctx.run();
}
