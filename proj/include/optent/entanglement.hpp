#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "optent/covariance.hpp"
#include "optent/mode_fit.hpp"

namespace optent {

enum class Verdict { Entangled, Separable, Undecidable };
std::string verdict_name(Verdict v);

/// Zero threshold for eigenvalue sign decisions: 1e-9 max(1, ||V||_inf).
double epsilon_num(const CovarianceSet& set);

/// Minimum eigenvalue of the Hermitian matrix V + iJ/2. Negative values
/// flag a non-physical (under-resolved) covariance.
double physicality_lambda(const CovarianceSet& set);

/// Same for the partially transposed set; negative means PPT violation.
double ppt_lambda(const CovarianceSet& set);

/// Vacuum-normalized symplectic eigenvalues 2|eig(J^-1 V)|, one per mode,
/// ascending. Uses the Hermitian similarity V^1/2 (iJ) V^1/2 when V is
/// positive definite, otherwise falls back to a general eigensolve.
struct SymplecticSpectrum {
  std::vector<double> nu;
  bool hermitian_route = true;
};
SymplecticSpectrum symplectic_spectrum(const CovarianceSet& set, bool transposed);

/// E_N = sum_j max(0, -log2 nu_j).
double log_negativity(const std::vector<double>& nu);

Verdict decide_verdict(double lambda_b, double lambda_n, double eps);

/// Temporal profile of the output-field mode carrying the negative PPT
/// eigenvalue, plus its decaying-sinusoid fit e^{-g|t|} sin(w t + theta)
/// over the curves (Re e1, Im e1, Re e2, Im e2).
struct ModeFunction {
  std::vector<double> times;
  Eigen::VectorXcd e1, e2;  // unit discrete norm over the v sector
  ModeFit fit;
};

/// Requires lambda_N < -eps on a converged grid; throws std::domain_error
/// otherwise. A diverging fit is reported with converged = false.
ModeFunction extract_mode(const CovarianceSet& set);

struct EntanglementReport {
  double lambda_b = 0.0;
  double lambda_n = 0.0;
  double nu_min = 0.0;
  double e_n = 0.0;
  Verdict verdict = Verdict::Undecidable;
  bool hermitian_route = true;
  double eps = 0.0;
  std::optional<ModeFunction> mode;
  nlohmann::json to_json() const;
};

/// Full pipeline on one covariance set.
EntanglementReport analyze(const CovarianceSet& set, bool with_mode = false);

struct ScanPoint {
  double dt = 0.0;
  int n_bins = 0;
  double lambda_b = 0.0;
  double lambda_n = 0.0;
  bool ok = false;
  std::string error;
};

struct ScanResult {
  std::vector<ScanPoint> points;
  bool converged = false;  // both lambdas changed < 5% over the last dt pair
};

/// Grid-resolution scan at fixed duration; per-point failures are recorded
/// and the scan continues.
ScanResult convergence_scan(const SystemParams& params, const NoiseModel& model,
                            Partition partition, double duration,
                            const std::vector<double>& dt_list,
                            const IntegratorSettings& settings = {});

}  // namespace optent
