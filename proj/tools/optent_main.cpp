#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "optent/errors.hpp"
#include "optent/jobs.hpp"

using nlohmann::json;

namespace {

json load_config_file(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream f(path);
  if (!f) throw optent::ConfigError("cannot open config file '" + path + "'");
  json j;
  f >> j;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  // Deterministic per-point numerics: the sweep scheduler owns parallelism.
  setenv("OPENBLAS_NUM_THREADS", "1", 0);

  CLI::App app{"Stationary optomechanical entanglement calculator"};
  app.require_subcommand(1);

  std::string config_path, out_dir, partition, fit_input, fit_template;
  int workers = 0;
  bool force = false;
  double dt_ms = 0.0, duration_s = 0.0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "job config file (JSON)");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--workers", workers, "parallel grid-point workers");
    cmd->add_flag("--force", force, "ignore cached results");
    cmd->add_option("--dt", dt_ms, "bin width, ms");
    cmd->add_option("--duration", duration_s, "sampled duration, s");
    cmd->add_option("--partition", partition, "traced|full|adiabatic|both");
  };

  CLI::App* negativity = app.add_subcommand("negativity", "single-point logarithmic negativity");
  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep over 1 or 2 axes");
  CLI::App* convergence = app.add_subcommand("convergence", "grid-resolution scan");
  CLI::App* mode = app.add_subcommand("mode", "extract and fit the entangled output mode");
  CLI::App* fit = app.add_subcommand("fit", "fit a noise model to a budget export");
  CLI::App* selfcheck = app.add_subcommand("self-check", "run the built-in oracle comparisons");
  for (CLI::App* cmd : {negativity, sweep, convergence, mode, fit, selfcheck}) add_common(cmd);
  fit->add_option("--input", fit_input, "two-column CSV (frequency_hz, psd)");
  fit->add_option("--template", fit_template, "ligo_force|ligo_sensing|suspension|...");

  CLI11_PARSE(app, argc, argv);

  try {
    json doc = load_config_file(config_path);
    doc["task"] = app.get_subcommands().front()->get_name();
    if (!out_dir.empty()) doc["out"] = out_dir;
    if (workers > 0) doc["workers"] = workers;
    if (force) doc["force"] = true;
    if (!partition.empty()) doc["partition"] = partition;
    if (dt_ms > 0.0) doc["grid"]["dt_ms"] = dt_ms;
    if (duration_s > 0.0) doc["grid"]["duration_s"] = duration_s;
    if (!fit_input.empty()) doc["fit"]["input"] = fit_input;
    if (!fit_template.empty()) doc["fit"]["template"] = fit_template;

    optent::JobConfig config = optent::parse_job_config(doc);
    return optent::run_job(config);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
