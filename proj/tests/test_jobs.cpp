#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "optent/jobs.hpp"

using namespace optent;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json small_sweep_config(const std::string& out) {
  // cheap structural sweep: tiny grid, adiabatic partition
  return json{
      {"task", "sweep"},
      {"system", {{"preset", "free_mass"}, {"omega_q_hz", 100.0}, {"mech_freq_hz", 1.0}}},
      {"noise",
       {{"family", "structural"}, {"mass_kg", 1.0}, {"omega_f_hz", 100.0},
        {"omega_x_over_omega_f", 2.0}, {"phi", 0.05}, {"omega_c_hz", 0.05}}},
      {"grid", {{"dt_ms", 1.0}, {"duration_s", 0.03}}},
      {"partition", "adiabatic"},
      {"sweep",
       {{"axes", json::array({json{{"param", "omega_x_over_omega_f"},
                                   {"values", {1.5, 2.5, 3.5, 4.5}}}})}}},
      {"out", out}};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("config parsing and validation") {
  JobConfig c = parse_job_config(small_sweep_config("/tmp/x"));
  CHECK(c.task == "sweep");
  CHECK(c.grid.n_bins == 30);
  CHECK(c.axes.size() == 1);
  CHECK(c.axes[0].values.size() == 4);
  CHECK(c.partition == Partition::AdiabaticNoCavity);
  CHECK(!c.config_hash().empty());

  // empty axis rejected
  json bad = small_sweep_config("/tmp/x");
  bad["sweep"]["axes"][0].erase("values");
  CHECK_THROWS(parse_job_config(bad));

  // sweep needs axes
  json no_axes = small_sweep_config("/tmp/x");
  no_axes.erase("sweep");
  CHECK_THROWS(parse_job_config(no_axes));

  // log-range expansion
  json lr = small_sweep_config("/tmp/x");
  lr["sweep"]["axes"][0] = json{{"param", "alpha_f1"}, {"log_range", {1e-16, 1e-12}},
                                {"count", 5}};
  lr["noise"] = json{{"family", "ligo"}};
  JobConfig c2 = parse_job_config(lr);
  CHECK(c2.axes[0].values.size() == 5);
  CHECK(c2.axes[0].values[1] == doctest::Approx(1e-15).epsilon(1e-9));
}

TEST_CASE("row-major sweep expansion") {
  json doc = small_sweep_config("/tmp/x");
  doc["sweep"]["axes"].push_back(json{{"param", "omega_q_hz"}, {"values", {50.0, 100.0}}});
  JobConfig c = parse_job_config(doc);
  auto points = sweep_points(c);
  REQUIRE(points.size() == 8);
  CHECK(points[0]["omega_x_over_omega_f"] == 1.5);
  CHECK(points[0]["omega_q_hz"] == 50.0);
  CHECK(points[1]["omega_q_hz"] == 100.0);
  CHECK(points[2]["omega_x_over_omega_f"] == 2.5);
}

TEST_CASE("sweep runs, caches, and is worker-count independent") {
  TempDir serial("optent_sweep_serial");
  TempDir parallel("optent_sweep_parallel");

  json cfg1 = small_sweep_config(serial.path.string());
  cfg1["workers"] = 1;
  JobConfig c1 = parse_job_config(cfg1);
  REQUIRE(run_job(c1) == 0);

  json cfg2 = small_sweep_config(parallel.path.string());
  cfg2["workers"] = 4;
  JobConfig c2 = parse_job_config(cfg2);
  REQUIRE(run_job(c2) == 0);

  // parallel/serial equivalence: byte-identical records and summary
  CHECK(slurp(serial.path / "records.jsonl") == slurp(parallel.path / "records.jsonl"));
  CHECK(slurp(serial.path / "summary.json") == slurp(parallel.path / "summary.json"));

  // resume: a second run reuses the cache and reproduces the summary
  const std::string before = slurp(serial.path / "summary.json");
  REQUIRE(run_job(c1) == 0);
  CHECK(slurp(serial.path / "summary.json") == before);
  json rec = json::parse(slurp(serial.path / "records.jsonl").substr(
      0, slurp(serial.path / "records.jsonl").find('\n')));
  CHECK(rec["cached"].get<bool>());

  // line export exists and is sorted by abscissa
  const std::string line = slurp(serial.path / "line.csv");
  CHECK(line.find("axis,partition") == 0);
  CHECK(line.find("1.5") != std::string::npos);
}

TEST_CASE("records embed settings and verdicts; undecidable rows carry no e_n") {
  std::vector<SweepRecord> records;
  SweepRecord a;
  a.index = 0;
  a.axes = json{{"alpha_f1", 1e-15}};
  a.partition = "full";
  a.ok = true;
  a.lambda_b = 1e-10;
  a.lambda_n = -0.2;
  a.nu_min = 0.75;
  a.e_n = 0.4;
  a.verdict = Verdict::Entangled;
  SweepRecord b = a;
  b.index = 1;
  b.axes = json{{"alpha_f1", 1e-12}};
  b.verdict = Verdict::Undecidable;
  records = {a, b};
  const std::string csv = emit_plot_data(records, "line");
  // undecidable row: empty e_n column and flag set
  CHECK(csv.find(",,undecidable,1") != std::string::npos);
  CHECK(csv.find("entangled,0") != std::string::npos);

  json ja = a.to_json();
  CHECK(ja["e_n"] == 0.4);
  json jb = b.to_json();
  CHECK(jb["e_n"].is_null());
  SweepRecord back = SweepRecord::from_json(ja);
  CHECK(back.e_n == 0.4);
  CHECK(back.verdict == Verdict::Entangled);
}

TEST_CASE("contour export has one row per axis pair") {
  std::vector<SweepRecord> records;
  int idx = 0;
  for (double a1 : {1e-15, 1e-13})
    for (double a2 : {0.5, 1.0, 2.0}) {
      SweepRecord r;
      r.index = idx++;
      r.axes = json{{"alpha_f1", a1}, {"alpha_f2", a2}};
      r.partition = "full";
      r.ok = true;
      r.verdict = Verdict::Separable;
      records.push_back(r);
    }
  const std::string csv = emit_plot_data(records, "contour");
  int rows = 0;
  for (char ch : csv)
    if (ch == '\n') ++rows;
  CHECK(rows == 7);  // header + 6 points
}

TEST_CASE("fnv hash and quantization are stable") {
  CHECK(fnv1a_hex("abc") == fnv1a_hex("abc"));
  CHECK(fnv1a_hex("abc") != fnv1a_hex("abd"));
  CHECK(quantize12(quantize12(0.1234567890123456789)) == quantize12(0.1234567890123456789));
}

TEST_CASE("negativity task writes a reproducible summary") {
  TempDir dir("optent_negativity");
  json cfg{{"task", "negativity"},
           {"system", {{"preset", "free_mass"}, {"omega_q_hz", 80.0}, {"mech_freq_hz", 1.0},
                       {"mech_damping_hz", 0.01}}},
           {"noise", {{"family", "white"}, {"mass_kg", 1.0}, {"omega_f_hz", 100.0},
                      {"omega_x_hz", 300.0}}},
           {"grid", {{"dt_ms", 1.0}, {"duration_s", 0.03}}},
           {"partition", "adiabatic"},
           {"out", dir.path.string()}};
  JobConfig c = parse_job_config(cfg);
  REQUIRE(run_job(c) == 0);
  const std::string first = slurp(dir.path / "summary.json");
  REQUIRE(run_job(c) == 0);
  CHECK(slurp(dir.path / "summary.json") == first);
  json summary = json::parse(first);
  CHECK(summary["n_records"] == 1);
  CHECK(summary["records"][0].contains("verdict"));
  CHECK(summary["effective_config"]["grid"]["n_bins"] == 30);
}
