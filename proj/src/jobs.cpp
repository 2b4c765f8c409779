#include "optent/jobs.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "optent/errors.hpp"
#include "optent/json_io.hpp"
#include "optent/noise_fit.hpp"
#include "optent/oracles.hpp"

namespace optent {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

double quantize12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::strtod(buf, nullptr);
}

json SweepRecord::to_json() const {
  json j{{"index", index},
         {"axes", axes},
         {"partition", partition},
         {"ok", ok},
         {"cached", cached},
         {"hash", hash}};
  if (ok) {
    j["lambda_b"] = quantize12(lambda_b);
    j["lambda_n"] = quantize12(lambda_n);
    j["nu_min"] = quantize12(nu_min);
    j["verdict"] = verdict_name(verdict);
    if (verdict == Verdict::Undecidable)
      j["e_n"] = nullptr;
    else
      j["e_n"] = quantize12(e_n);
  } else {
    j["error"] = error;
  }
  j["seconds"] = seconds;
  return j;
}

SweepRecord SweepRecord::from_json(const json& j) {
  SweepRecord r;
  r.index = j.value("index", 0);
  r.axes = j.value("axes", json::object());
  r.partition = j.value("partition", "");
  r.ok = j.value("ok", false);
  r.cached = true;
  r.hash = j.value("hash", "");
  r.seconds = j.value("seconds", 0.0);
  if (r.ok) {
    r.lambda_b = j.value("lambda_b", 0.0);
    r.lambda_n = j.value("lambda_n", 0.0);
    r.nu_min = j.value("nu_min", 0.0);
    std::string v = j.value("verdict", "undecidable");
    r.verdict = v == "entangled" ? Verdict::Entangled
                                 : (v == "separable" ? Verdict::Separable : Verdict::Undecidable);
    if (!j.contains("e_n") || j["e_n"].is_null())
      r.e_n = 0.0;
    else
      r.e_n = j["e_n"].get<double>();
  } else {
    r.error = j.value("error", "");
  }
  return r;
}

std::string JobConfig::config_hash() const { return fnv1a_hex(effective.dump()); }

JobConfig parse_job_config(const json& j) {
  JobConfig c;
  c.task = j.value("task", "negativity");
  if (j.contains("system")) c.system = system_params_from_json(j["system"]);
  if (j.contains("noise")) c.noise = noise_model_from_json(j["noise"]);
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    const double dt = g.contains("dt_ms") ? g["dt_ms"].get<double>() * 1e-3 : c.grid.dt;
    const double dur = g.value("duration_s", 0.1);
    c.grid.dt = dt;
    c.grid.n_bins = std::max(2, static_cast<int>(std::llround(dur / dt)));
    c.grid.validate();
  }
  if (j.contains("integrator")) {
    const auto& g = j["integrator"];
    c.integrator.omega_max = g.value("omega_max_rad_s", 0.0);
    c.integrator.osc_factor = g.value("osc_factor", 1.0);
    c.integrator.plateau_tol = g.value("plateau_tol", 1e-3);
    c.integrator.tail_tol = g.value("tail_tol", 1e-5);
    c.integrator.richardson_check = g.value("richardson_check", false);
    c.integrator.richardson_tol = g.value("richardson_tol", 1e-6);
    c.integrator.extended_accum = g.value("extended_accum", false);
  }
  const std::string part = j.value("partition", "traced");
  if (part == "both") {
    c.both_partitions = true;
    c.partition = Partition::WithCavity;
  } else {
    c.partition = partition_from_name(part);
  }
  if (j.contains("sweep")) {
    for (const auto& ax : j["sweep"].value("axes", json::array())) {
      JobConfig::Axis axis;
      axis.param = ax.at("param").get<std::string>();
      if (ax.contains("values")) {
        axis.values = ax["values"].get<std::vector<double>>();
      } else if (ax.contains("log_range")) {
        const auto lr = ax["log_range"].get<std::vector<double>>();
        const int count = ax.value("count", 7);
        if (lr.size() != 2 || lr[0] <= 0.0 || lr[1] <= 0.0 || count < 2)
          throw ConfigError("sweep axis: log_range needs [lo, hi] > 0 and count >= 2");
        for (int i = 0; i < count; ++i)
          axis.values.push_back(
              std::exp(std::log(lr[0]) + (std::log(lr[1]) - std::log(lr[0])) * i / (count - 1)));
      } else if (ax.contains("range")) {
        const auto r = ax["range"].get<std::vector<double>>();
        const int count = ax.value("count", 7);
        if (r.size() != 2 || count < 2) throw ConfigError("sweep axis: range needs [lo, hi]");
        for (int i = 0; i < count; ++i)
          axis.values.push_back(r[0] + (r[1] - r[0]) * i / (count - 1));
      }
      if (axis.values.empty()) throw ConfigError("sweep axis '" + axis.param + "' is empty");
      c.axes.push_back(std::move(axis));
    }
  }
  if (c.task == "sweep" && (c.axes.empty() || c.axes.size() > 2))
    throw ConfigError("sweep task needs 1 or 2 axes");
  if (j.contains("convergence"))
    c.scan_dt_ms = j["convergence"].value("dt_ms", c.scan_dt_ms);
  c.out_dir = j.value("out", "out");
  c.workers = std::max(1, j.value("workers", 1));
  c.force = j.value("force", false);
  c.cache_covariance = j.value("cache_covariance", false);
  if (j.contains("fit")) {
    c.fit_input = j["fit"].value("input", "");
    c.fit_template = j["fit"].value("template", "ligo_force");
  }

  // Canonical echo: everything that affects results, nothing that doesn't.
  json axes = json::array();
  for (const auto& a : c.axes) axes.push_back(json{{"param", a.param}, {"values", a.values}});
  c.effective = json{{"task", c.task},
                     {"system", to_json(c.system)},
                     {"noise", to_json(c.noise)},
                     {"grid", {{"n_bins", c.grid.n_bins}, {"dt_s", c.grid.dt}}},
                     {"integrator",
                      {{"omega_max_rad_s", c.integrator.omega_max},
                       {"osc_factor", c.integrator.osc_factor},
                       {"plateau_tol", c.integrator.plateau_tol},
                       {"tail_tol", c.integrator.tail_tol},
                       {"richardson_check", c.integrator.richardson_check},
                       {"richardson_tol", c.integrator.richardson_tol},
                       {"extended_accum", c.integrator.extended_accum}}},
                     {"partition", c.both_partitions ? "both" : partition_name(c.partition)},
                     {"axes", axes},
                     {"scan_dt_ms", c.scan_dt_ms},
                     {"fit", {{"input", c.fit_input}, {"template", c.fit_template}}}};
  return c;
}

std::vector<json> sweep_points(const JobConfig& config) {
  std::vector<json> points;
  if (config.axes.empty()) {
    points.push_back(json::object());
    return points;
  }
  if (config.axes.size() == 1) {
    for (double v : config.axes[0].values)
      points.push_back(json{{config.axes[0].param, v}});
    return points;
  }
  for (double v0 : config.axes[0].values)
    for (double v1 : config.axes[1].values)
      points.push_back(json{{config.axes[0].param, v0}, {config.axes[1].param, v1}});
  return points;
}

namespace {

void apply_axis(SystemParams& params, NoiseModel& noise, const std::string& name, double value) {
  if (name == "omega_q_hz") {
    params.coupling =
        0.5 * kTwoPi * value * std::sqrt(params.mass * params.cavity_decay / kHbar);
  } else if (name == "mass_kg") {
    params.mass = value;
  } else if (name == "mech_damping_hz") {
    params.mech_damping = kTwoPi * value;
  } else {
    noise.set_knob(name, value);
  }
}

struct PointOutcome {
  std::vector<SweepRecord> records;  // one per partition evaluated
};

PointOutcome compute_point(const JobConfig& config, const json& axes, int base_index) {
  PointOutcome out;
  const auto t0 = std::chrono::steady_clock::now();
  SystemParams params = config.system;
  NoiseModel noise = config.noise;
  std::string err;
  bool setup_ok = true;
  try {
    for (auto it = axes.begin(); it != axes.end(); ++it)
      apply_axis(params, noise, it.key(), it.value().get<double>());
    params.validate();
  } catch (const std::exception& e) {
    setup_ok = false;
    err = e.what();
  }

  auto finish = [&](SweepRecord& r) {
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  std::vector<Partition> parts;
  if (config.both_partitions)
    parts = {Partition::WithCavity, Partition::CavityTraced};
  else
    parts = {config.partition};

  if (!setup_ok) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      SweepRecord r;
      r.index = base_index + static_cast<int>(i);
      r.axes = axes;
      r.partition = partition_name(parts[i]);
      r.error = err;
      finish(r);
      out.records.push_back(r);
    }
    return out;
  }

  // Both partitions share one with-cavity build.
  std::optional<CovarianceSet> with_cavity;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    SweepRecord r;
    r.index = base_index + static_cast<int>(i);
    r.axes = axes;
    r.partition = partition_name(parts[i]);
    try {
      CovarianceSet set = [&] {
        if (parts[i] == Partition::AdiabaticNoCavity)
          return build_covariance(params, noise, parts[i], config.grid, config.integrator);
        if (!with_cavity)
          with_cavity = build_covariance(params, noise, Partition::WithCavity, config.grid,
                                         config.integrator);
        if (parts[i] == Partition::CavityTraced) return cavity_traced(*with_cavity);
        return *with_cavity;
      }();
      EntanglementReport rep = analyze(set);
      r.lambda_b = rep.lambda_b;
      r.lambda_n = rep.lambda_n;
      r.nu_min = rep.nu_min;
      r.e_n = rep.e_n;
      r.verdict = rep.verdict;
      r.ok = true;
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    finish(r);
    out.records.push_back(r);
  }
  return out;
}

std::string point_hash(const JobConfig& config, const json& axes) {
  json key = config.effective;
  key["point_axes"] = axes;
  key.erase("axes");
  key.erase("task");
  return fnv1a_hex(key.dump());
}

std::string csv_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void write_summary(const JobConfig& config, const std::vector<SweepRecord>& records,
                   json extra = json::object()) {
  json digest = json::array();
  for (const auto& r : records) {
    json d{{"index", r.index}, {"axes", r.axes}, {"partition", r.partition}, {"ok", r.ok}};
    if (r.ok) {
      d["lambda_b"] = quantize12(r.lambda_b);
      d["lambda_n"] = quantize12(r.lambda_n);
      d["nu_min"] = quantize12(r.nu_min);
      d["verdict"] = verdict_name(r.verdict);
      if (r.verdict == Verdict::Undecidable)
        d["e_n"] = nullptr;
      else
        d["e_n"] = quantize12(r.e_n);
    } else {
      d["error"] = r.error;
    }
    digest.push_back(d);
  }
  int failed = 0;
  for (const auto& r : records)
    if (!r.ok) ++failed;
  json summary{{"task", config.task},
               {"config_hash", config.config_hash()},
               {"effective_config", config.effective},
               {"n_records", records.size()},
               {"n_failed", failed},
               {"records", digest}};
  for (auto it = extra.begin(); it != extra.end(); ++it) summary[it.key()] = it.value();
  std::ofstream f(fs::path(config.out_dir) / "summary.json");
  f << summary.dump(2) << "\n";
}

void write_records(const JobConfig& config, const std::vector<SweepRecord>& records) {
  std::ofstream f(fs::path(config.out_dir) / "records.jsonl");
  for (const auto& r : records) f << r.to_json().dump() << "\n";
}

int run_sweep_like(const JobConfig& config) {
  fs::create_directories(fs::path(config.out_dir) / "cache");
  const std::vector<json> points = sweep_points(config);
  const int per_point = config.both_partitions ? 2 : 1;
  std::vector<PointOutcome> outcomes(points.size());
  std::vector<bool> from_cache(points.size(), false);

  // Resume: reuse cached point records unless forced.
  std::vector<std::string> hashes(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    hashes[i] = point_hash(config, points[i]);
    const fs::path cpath = fs::path(config.out_dir) / "cache" / (hashes[i] + ".json");
    if (!config.force && fs::exists(cpath)) {
      try {
        json doc;
        std::ifstream in(cpath);
        in >> doc;
        PointOutcome o;
        for (const auto& rj : doc.at("records")) o.records.push_back(SweepRecord::from_json(rj));
        if (static_cast<int>(o.records.size()) == per_point) {
          outcomes[i] = std::move(o);
          from_cache[i] = true;
        }
      } catch (...) {
        // unreadable cache entry: recompute
      }
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) break;
      if (from_cache[i]) continue;
      outcomes[i] = compute_point(config, points[i], static_cast<int>(i) * per_point);
      for (auto& r : outcomes[i].records) r.hash = hashes[i];
    }
  };
  const int n_workers = std::max(1, std::min<int>(config.workers, points.size()));
  std::vector<std::thread> pool;
  for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::vector<SweepRecord> records;
  for (std::size_t i = 0; i < points.size(); ++i) {
    // Re-number cached records so ordering stays row-major deterministic.
    int k = 0;
    for (auto& r : outcomes[i].records) {
      r.index = static_cast<int>(i) * per_point + k++;
      r.hash = hashes[i];
      records.push_back(r);
    }
    if (!from_cache[i]) {
      json doc{{"records", json::array()}};
      for (const auto& r : outcomes[i].records) doc["records"].push_back(r.to_json());
      std::ofstream out(fs::path(config.out_dir) / "cache" / (hashes[i] + ".json"));
      out << doc.dump() << "\n";
    }
  }

  write_records(config, records);
  write_summary(config, records);
  if (config.task == "sweep") {
    const std::string kind = config.axes.size() == 2 ? "contour" : "line";
    std::ofstream f(fs::path(config.out_dir) / (kind + ".csv"));
    f << emit_plot_data(records, kind);
  }

  bool any_ok = false;
  for (const auto& r : records) any_ok = any_ok || r.ok;
  return any_ok ? 0 : 1;
}

int run_negativity(const JobConfig& config) {
  const int rc = run_sweep_like(config);
  if (config.cache_covariance && rc == 0 && !config.both_partitions) {
    const std::string hash = point_hash(config, json::object());
    const fs::path cov_path = fs::path(config.out_dir) / "cache" / (hash + ".cov");
    if (config.force || !fs::exists(cov_path)) {
      CovarianceSet set = build_covariance(config.system, config.noise, config.partition,
                                           config.grid, config.integrator);
      save_covariance(set, cov_path.string());
    }
  }
  return rc;
}

int run_mode(const JobConfig& config) {
  fs::create_directories(config.out_dir);
  CovarianceSet set =
      build_covariance(config.system, config.noise, config.partition, config.grid,
                       config.integrator);
  EntanglementReport rep = analyze(set, true);
  json extra{{"report", rep.to_json()}};
  if (rep.mode) {
    std::ofstream f(fs::path(config.out_dir) / "mode.csv");
    f << "t_s,re_e1,im_e1,re_e2,im_e2\n";
    const auto& m = *rep.mode;
    for (std::size_t i = 0; i < m.times.size(); ++i)
      f << csv_num(m.times[i]) << "," << csv_num(m.e1(i).real()) << "," << csv_num(m.e1(i).imag())
        << "," << csv_num(m.e2(i).real()) << "," << csv_num(m.e2(i).imag()) << "\n";
  }
  SweepRecord r;
  r.index = 0;
  r.axes = json::object();
  r.partition = partition_name(config.partition);
  r.lambda_b = rep.lambda_b;
  r.lambda_n = rep.lambda_n;
  r.nu_min = rep.nu_min;
  r.e_n = rep.e_n;
  r.verdict = rep.verdict;
  r.ok = true;
  write_summary(config, {r}, extra);
  return rep.mode ? 0 : 1;
}

int run_convergence(const JobConfig& config) {
  fs::create_directories(config.out_dir);
  std::vector<double> dts;
  for (double ms : config.scan_dt_ms) dts.push_back(ms * 1e-3);
  ScanResult scan = convergence_scan(config.system, config.noise, config.partition,
                                     config.grid.duration(), dts, config.integrator);
  std::ofstream f(fs::path(config.out_dir) / "convergence.csv");
  f << "dt_ms,n_bins,lambda_b,lambda_n,ok\n";
  json pts = json::array();
  for (const auto& p : scan.points) {
    f << csv_num(p.dt * 1e3) << "," << p.n_bins << ",";
    if (p.ok)
      f << csv_num(quantize12(p.lambda_b)) << "," << csv_num(quantize12(p.lambda_n)) << ",1\n";
    else
      f << ",,0\n";
    pts.push_back(json{{"dt_ms", p.dt * 1e3},
                       {"n_bins", p.n_bins},
                       {"ok", p.ok},
                       {"lambda_b", p.ok ? json(quantize12(p.lambda_b)) : json()},
                       {"lambda_n", p.ok ? json(quantize12(p.lambda_n)) : json()},
                       {"error", p.error}});
  }
  write_summary(config, {}, json{{"converged", scan.converged}, {"scan", pts}});
  bool any_ok = false;
  for (const auto& p : scan.points) any_ok = any_ok || p.ok;
  return any_ok ? 0 : 1;
}

int run_fit(const JobConfig& config) {
  fs::create_directories(config.out_dir);
  std::ifstream in(config.fit_input);
  if (!in) throw ConfigError("fit: cannot open input table '" + config.fit_input + "'");
  std::vector<double> f_hz, psd;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double f, p;
    if (ss >> f >> p) {
      f_hz.push_back(f);
      psd.push_back(p);
    }
  }
  NoiseFitResult res = fit_noise_model(f_hz, psd, NoiseFitTemplate::from_name(config.fit_template));
  json out = res.to_json();
  out["template"] = config.fit_template;
  out["n_samples"] = f_hz.size();
  std::ofstream f(fs::path(config.out_dir) / "fit.json");
  f << out.dump(2) << "\n";
  write_summary(config, {}, json{{"fit", out}});
  return 0;
}

int run_self_check(const JobConfig& config) {
  SelfCheckResult res = self_check();
  for (const auto& c : res.checks)
    std::printf("%-24s %s  %s\n", c["name"].get<std::string>().c_str(),
                c["pass"].get<bool>() ? "PASS" : "FAIL", c["detail"].get<std::string>().c_str());
  if (!config.out_dir.empty()) {
    fs::create_directories(config.out_dir);
    write_summary(config, {}, json{{"self_check", res.checks}, {"passed", res.passed}});
  }
  return res.passed ? 0 : 1;
}

}  // namespace

std::string emit_plot_data(const std::vector<SweepRecord>& records, const std::string& kind) {
  std::ostringstream out;
  if (kind == "line") {
    out << "axis,partition,lambda_b,lambda_n,nu_min,e_n,verdict,undecidable\n";
    std::vector<const SweepRecord*> rs;
    for (const auto& r : records) rs.push_back(&r);
    std::stable_sort(rs.begin(), rs.end(), [](const SweepRecord* a, const SweepRecord* b) {
      const double xa = a->axes.empty() ? 0.0 : a->axes.begin().value().get<double>();
      const double xb = b->axes.empty() ? 0.0 : b->axes.begin().value().get<double>();
      return xa < xb;
    });
    for (const auto* r : rs) {
      if (!r->ok) continue;
      const double x = r->axes.empty() ? 0.0 : r->axes.begin().value().get<double>();
      const bool und = r->verdict == Verdict::Undecidable;
      out << csv_num(x) << "," << r->partition << "," << csv_num(quantize12(r->lambda_b)) << ","
          << csv_num(quantize12(r->lambda_n)) << "," << csv_num(quantize12(r->nu_min)) << ","
          << (und ? "" : csv_num(quantize12(r->e_n))) << "," << verdict_name(r->verdict) << ","
          << (und ? 1 : 0) << "\n";
    }
    return out.str();
  }
  if (kind == "contour") {
    out << "axis1,axis2,partition,lambda_b,lambda_n,e_n,verdict,undecidable\n";
    for (const auto& r : records) {
      if (!r.ok) {
        // failed points still occupy their grid slot, marked undecidable
        if (r.axes.size() >= 2) {
          auto it = r.axes.begin();
          const double a1 = it.value().get<double>();
          const double a2 = (++it).value().get<double>();
          out << csv_num(a1) << "," << csv_num(a2) << "," << r.partition << ",,,,failed,1\n";
        }
        continue;
      }
      auto it = r.axes.begin();
      const double a1 = it.value().get<double>();
      const double a2 = (++it).value().get<double>();
      const bool und = r.verdict == Verdict::Undecidable;
      out << csv_num(a1) << "," << csv_num(a2) << "," << r.partition << ","
          << csv_num(quantize12(r.lambda_b)) << "," << csv_num(quantize12(r.lambda_n)) << ","
          << (und ? "" : csv_num(quantize12(r.e_n))) << "," << verdict_name(r.verdict) << ","
          << (und ? 1 : 0) << "\n";
    }
    return out.str();
  }
  throw ConfigError("emit_plot_data: unknown kind '" + kind + "'");
}

int run_job(const JobConfig& config) {
  fs::create_directories(config.out_dir);
  if (config.task == "negativity") return run_negativity(config);
  if (config.task == "sweep") return run_sweep_like(config);
  if (config.task == "convergence") return run_convergence(config);
  if (config.task == "mode") return run_mode(config);
  if (config.task == "fit") return run_fit(config);
  if (config.task == "self-check") return run_self_check(config);
  throw ConfigError("unknown task '" + config.task + "'");
}

}  // namespace optent
