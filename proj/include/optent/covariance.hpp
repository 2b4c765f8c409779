#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include <json.hpp>

#include "optent/dynamics.hpp"
#include "optent/freq_grid.hpp"
#include "optent/model.hpp"
#include "optent/spectra.hpp"

namespace optent {

/// Output-field sampling grid: N bins of width dt at t_a = -(a + 1/2) dt.
struct TimeGrid {
  int n_bins = 0;
  double dt = 0.0;
  double duration() const { return n_bins * dt; }
  double t(int a) const { return -(a + 0.5) * dt; }
  void validate() const;
};

struct IntegratorSettings {
  double omega_max = 0.0;       // 0 = auto: max(16 gamma, 8 pi/dt); adiabatic: 8 pi/dt
  double osc_factor = 1.0;      // scales the oscillation-resolution panel cap
  double plateau_tol = 1e-3;    // tail-model validation at 0.75 omega_max
  double tail_tol = 1e-5;       // allowed unresolved-tail weight, relative to max(1, |entry|)
  bool richardson_check = false;
  double richardson_tol = 1e-6;
  bool extended_accum = false;  // long-double accumulation for the eigen-stage inputs
};

enum class Partition { WithCavity, CavityTraced, AdiabaticNoCavity };

std::string partition_name(Partition p);
Partition partition_from_name(const std::string& name);

/// Real antisymmetric commutator structure J (K = iJ): one [[0,1],[-1,0]]
/// block per mode in the fixed ordering (B1,B2[,A1,A2],v1(t0),v2(t0),...).
Eigen::MatrixXd commutator_j(int dim);

/// Discretized stationary covariance matrix with its grid and partition tag.
struct CovarianceSet {
  Eigen::MatrixXd v;
  TimeGrid grid;
  Partition partition = Partition::WithCavity;
  nlohmann::json metadata = nlohmann::json::object();

  int dim() const { return static_cast<int>(v.rows()); }
  int n_q() const { return dim() - 2 * grid.n_bins; }
  Eigen::MatrixXd j() const { return commutator_j(dim()); }
};

/// Steady-state covariance of the kept quadratures,
/// V_JK = int_0^inf dW/2pi S_QjQk(W). 4x4 for the full model, 2x2 adiabatic.
Eigen::MatrixXd build_v_qq(const SystemParams& params, const NoiseModel& model,
                           const IntegratorSettings& settings, ModelKind kind = ModelKind::Full,
                           std::optional<TimeGrid> grid = std::nullopt);

/// Mode-bin cross block, entries sqrt(dt)/2 <{Q_J, v_m(t_a)}>.
Eigen::MatrixXd build_v_qv(const SystemParams& params, const NoiseModel& model,
                           const TimeGrid& grid, const IntegratorSettings& settings,
                           ModelKind kind = ModelKind::Full);

/// Stationary bin-bin block, block-Toeplitz by construction.
Eigen::MatrixXd build_v_vv(const SystemParams& params, const NoiseModel& model,
                           const TimeGrid& grid, const IntegratorSettings& settings,
                           ModelKind kind = ModelKind::Full);

/// Glue blocks into a CovarianceSet for the requested partition.
CovarianceSet assemble(Partition partition, const Eigen::MatrixXd& qq, const Eigen::MatrixXd& qv,
                       const Eigen::MatrixXd& vv, const TimeGrid& grid,
                       nlohmann::json metadata = {});

/// One-shot build sharing a single frequency sweep across all blocks.
CovarianceSet build_covariance(const SystemParams& params, const NoiseModel& model,
                               Partition partition, const TimeGrid& grid,
                               const IntegratorSettings& settings = {});

/// Delete the cavity rows/columns of a with-cavity set.
CovarianceSet cavity_traced(const CovarianceSet& full);

/// Negate the B2 row and column, diagonal element untouched.
CovarianceSet partial_transpose(const CovarianceSet& set);

/// Binary container with JSON sidecar (path + ".json").
void save_covariance(const CovarianceSet& set, const std::string& path);
CovarianceSet load_covariance(const std::string& path);

}  // namespace optent
