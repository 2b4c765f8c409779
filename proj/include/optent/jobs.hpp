#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "optent/covariance.hpp"
#include "optent/entanglement.hpp"
#include "optent/model.hpp"
#include "optent/spectra.hpp"

namespace optent {

/// One grid point of a parameter sweep.
struct SweepRecord {
  int index = 0;
  nlohmann::json axes;  // {name: value}
  std::string partition;
  double lambda_b = 0.0;
  double lambda_n = 0.0;
  double nu_min = 0.0;
  double e_n = 0.0;
  Verdict verdict = Verdict::Undecidable;
  bool ok = false;
  std::string error;
  double seconds = 0.0;
  std::string hash;
  bool cached = false;

  nlohmann::json to_json() const;
  static SweepRecord from_json(const nlohmann::json& j);
};

struct JobConfig {
  std::string task = "negativity";
  SystemParams system = SystemParams::aligo();
  NoiseModel noise = NoiseModel::aligo_baseline();
  TimeGrid grid{400, 0.25e-3};
  IntegratorSettings integrator;
  Partition partition = Partition::CavityTraced;
  bool both_partitions = false;

  struct Axis {
    std::string param;
    std::vector<double> values;
  };
  std::vector<Axis> axes;
  std::vector<double> scan_dt_ms{10.0, 5.0, 2.0, 1.0, 0.5, 0.25, 0.1};

  std::string out_dir = "out";
  int workers = 1;
  bool force = false;
  bool cache_covariance = false;
  std::string fit_input;
  std::string fit_template = "ligo_force";

  nlohmann::json effective;  // canonical echo of everything above
  std::string config_hash() const;
};

/// Parse + validate a config document; fills the canonical echo.
JobConfig parse_job_config(const nlohmann::json& j);

/// Execute the configured task, writing records.jsonl, summary.json and CSV
/// plot tables under out_dir. Nonzero exit only when nothing succeeded.
int run_job(const JobConfig& config);

/// Deterministic row-major expansion of the sweep axes (partition fastest).
std::vector<nlohmann::json> sweep_points(const JobConfig& config);

/// Plot-ready tables: "line" for single-axis sweeps, "contour" for two-axis.
/// Undecidable rows carry an empty e_n and a flag column.
std::string emit_plot_data(const std::vector<SweepRecord>& records, const std::string& kind);

/// 64-bit FNV-1a, hex-encoded.
std::string fnv1a_hex(const std::string& data);

/// Round a double through 12 significant digits so cached and fresh runs
/// serialize byte-identically.
double quantize12(double x);

}  // namespace optent
