#include "optent/covariance.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "optent/errors.hpp"
#include "optent/json_io.hpp"
#include "optent/math_special.hpp"

namespace optent {

using cd = std::complex<double>;
using nlohmann::json;

void TimeGrid::validate() const {
  if (dt <= 0.0) throw std::domain_error("TimeGrid: dt must be positive");
  if (n_bins < 2) throw std::domain_error("TimeGrid: need at least 2 bins");
}

std::string partition_name(Partition p) {
  switch (p) {
    case Partition::WithCavity: return "full";
    case Partition::CavityTraced: return "traced";
    case Partition::AdiabaticNoCavity: return "adiabatic";
  }
  return "?";
}

Partition partition_from_name(const std::string& name) {
  if (name == "full" || name == "with-cavity") return Partition::WithCavity;
  if (name == "traced" || name == "cavity-traced") return Partition::CavityTraced;
  if (name == "adiabatic" || name == "adiabatic-no-cavity") return Partition::AdiabaticNoCavity;
  throw ConfigError("unknown partition '" + name + "'");
}

Eigen::MatrixXd commutator_j(int dim) {
  if (dim % 2 != 0) throw std::domain_error("commutator_j: dimension must be even");
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 0; k < dim; k += 2) {
    j(k, k + 1) = 1.0;
    j(k + 1, k) = -1.0;
  }
  return j;
}

namespace {

// Tail model fitted per spectral entry from probes at omega_max/2 and
// omega_max: S(W) ~ p + c/(g_r^2 + W^2). The plateau handles white content
// (Dirac-delta rule in the bin basis); the rational term captures cavity-pole
// tails and feeds an analytic correction for the truncated band.
struct TailModel {
  cd p{0.0, 0.0};
  double c = 0.0;
};

struct BuildRequest {
  bool qq = false;
  bool qv = false;
  bool vv = false;
};

class Builder {
 public:
  Builder(const SystemParams& params, const NoiseModel& model, ModelKind kind,
          const TimeGrid* grid, const IntegratorSettings& settings)
      : params_(params), model_(model), kind_(kind), grid_(grid), settings_(settings) {
    params_.validate();
    if (grid_) grid_->validate();
    n_q_ = kind_ == ModelKind::Full ? 4 : 2;
    n_out_ = n_q_ + 2;
    n_bins_ = grid_ ? grid_->n_bins : 0;
    dt_ = grid_ ? grid_->dt : 0.0;

    const bool damping_absent =
        model_.is_structural() ? model_.phi() == 0.0 : params_.mech_damping == 0.0;
    seed_ground_ = damping_absent && params_.coupling == 0.0 && model_.force_is_zero();
    if (damping_absent && !seed_ground_)
      throw IntegrationError(
          "undamped mechanical resonance with a nonzero drive: the stationary "
          "covariance does not exist");
  }

  void run(const BuildRequest& req) {
    if ((req.qv || req.vv) && !grid_)
      throw std::domain_error("covariance builder: time grid required for qv/vv blocks");
    if (settings_.osc_factor < 1.0)
      throw std::domain_error("IntegratorSettings: osc_factor must be >= 1");
    setup_band();
    build_grid(1.0);
    fit_tails();
    if (settings_.extended_accum)
      accumulate<long double>(req);
    else
      accumulate<double>(req);
    finalize(req);
    if (settings_.richardson_check) richardson(req);
  }

  Eigen::MatrixXd qq, qv, vv;
  json diagnostics;

 private:
  void setup_band() {
    omega_max_ = settings_.omega_max;
    if (omega_max_ <= 0.0) {
      omega_max_ = grid_ ? 8.0 * kPi / dt_ : 0.0;
      if (kind_ == ModelKind::Full)
        omega_max_ = std::max(omega_max_, 16.0 * params_.cavity_decay);
      if (omega_max_ <= 0.0)
        throw std::domain_error("covariance builder: cannot infer omega_max without a grid");
    }

    features_.clear();
    const double wm = params_.mech_freq;
    double mech_width;
    if (model_.is_structural())
      mech_width = 0.5 * wm * loss_angle(wm, model_.phi(), model_.omega_c());
    else
      mech_width = 0.5 * params_.mech_damping;
    if (mech_width > 0.0) features_.push_back({wm, mech_width});

    double low = wm;
    if (kind_ == ModelKind::Full) {
      features_.push_back({0.0, params_.cavity_decay});
      low = std::min(low, params_.cavity_decay);
    }
    switch (model_.family()) {
      case NoiseModel::Family::Structural:
        low = std::min(low, model_.omega_c());
        break;
      case NoiseModel::Family::LigoParam: {
        const auto& p = model_.ligo_params();
        const double knee = p.omega_f / p.alpha_f2;
        features_.push_back({knee, knee / 14.0});
        low = std::min(low, knee);
        for (const auto& r : p.resonances) features_.push_back({r.omega, 0.5 * r.fwhm});
        break;
      }
      case NoiseModel::Family::SuspensionOnly:
        features_.push_back({model_.omega_st(), model_.omega_st() / 8.0});
        break;
      default:
        break;
    }
    low_scale_ = low / 4.0;
  }

  void build_grid(double refine) {
    const double tau_max = grid_ ? grid_->duration() : 0.0;
    fgrid_ = build_frequency_grid(omega_max_, tau_max, features_, low_scale_,
                                  refine / settings_.osc_factor);
  }

  // Output cross-spectra with the exactly-known slow pieces removed:
  //  - the decoupled-cavity reflection part of the A rows (its bin-basis
  //    correlations vanish at t < 0, restored analytically),
  //  - the direct sensing feedthrough of the eliminated cavity for the
  //    structural model (restored via its truncated cosine transform).
  Eigen::MatrixXcd eval_entries(double w) const {
    TransferMatrix t = kind_ == ModelKind::Full ? transfer_full(w, params_, model_)
                                                : transfer_adiabatic(w, params_, model_);
    Eigen::MatrixXcd s = output_cross_spectrum(t, model_);
    if (kind_ == ModelKind::Full) {
      const double gamma = params_.cavity_decay;
      const double d2 = gamma * gamma + w * w;
      const double sv_aa = 2.0 * gamma / d2;
      const cd sv_av = std::sqrt(2.0 * gamma) * cd(-gamma, w) / d2;
      s(2, 2) -= sv_aa;
      s(3, 3) -= sv_aa;
      s(2, 4) -= sv_av;
      s(4, 2) -= std::conj(sv_av);
      s(3, 5) -= sv_av;
      s(5, 3) -= std::conj(sv_av);
    } else if (model_.is_structural()) {
      const double a = params_.alpha();
      s(3, 3) -= a * a * model_.sensing_spectrum(w);
    }
    return s;
  }

  static int upper_index(int j, int k, int n) { return j * n - j * (j - 1) / 2 + (k - j); }

  void fit_tails() {
    gamma_r_ = kind_ == ModelKind::Full ? params_.cavity_decay : omega_max_ / 8.0;
    const double x = omega_max_;
    const Eigen::MatrixXcd s_half = eval_entries(0.5 * x);
    const Eigen::MatrixXcd s_thr = eval_entries(0.75 * x);
    const Eigen::MatrixXcd s_full = eval_entries(x);
    const double l_half = 1.0 / (gamma_r_ * gamma_r_ + 0.25 * x * x);
    const double l_thr = 1.0 / (gamma_r_ * gamma_r_ + 0.5625 * x * x);
    const double l_full = 1.0 / (gamma_r_ * gamma_r_ + x * x);

    tails_.assign(static_cast<std::size_t>(n_out_) * n_out_, TailModel{});
    resid75_.assign(tails_.size(), 0.0);
    for (int j = 0; j < n_out_; ++j) {
      for (int k = 0; k < n_out_; ++k) {
        TailModel m;
        m.c = (s_half(j, k).real() - s_full(j, k).real()) / (l_half - l_full);
        m.p = s_full(j, k) - m.c * l_full;
        const cd pred = m.p + m.c * l_thr;
        tails_[j * n_out_ + k] = m;
        resid75_[j * n_out_ + k] = std::abs(s_thr(j, k) - pred);
      }
    }
  }

  template <class Acc>
  void accumulate(const BuildRequest& req) {
    const int nq = n_q_;
    const int n_qq = nq * (nq + 1) / 2;
    acc_qq_.assign(n_qq, 0.0);
    acc_qv_.assign(req.qv ? static_cast<std::size_t>(nq) * 2 * n_bins_ : 0, 0.0);
    acc_vv_.assign(req.vv ? static_cast<std::size_t>(4) * n_bins_ : 0, 0.0);
    std::vector<Acc> aqq(acc_qq_.size(), 0);
    std::vector<Acc> aqv(acc_qv_.size(), 0);
    std::vector<Acc> avv(acc_vv_.size(), 0);

    const std::size_t n_nodes = fgrid_.size();
    std::vector<cd> zqv(static_cast<std::size_t>(nq) * 2);
    std::vector<cd> zvv(4);

    for (std::size_t idx = 0; idx < n_nodes; ++idx) {
      const double w = fgrid_.omega[idx];
      const double wt = fgrid_.weight[idx];
      const Eigen::MatrixXcd s = eval_entries(w);
      const double lor = 1.0 / (gamma_r_ * gamma_r_ + w * w);

      if (req.qq) {
        int u = 0;
        for (int j = 0; j < nq; ++j)
          for (int k = j; k < nq; ++k, ++u)
            aqq[u] += static_cast<Acc>(wt * (s(j, k).real() - tails_[j * n_out_ + k].c * lor));
      }
      if (req.qv || req.vv) {
        if (req.qv)
          for (int j = 0; j < nq; ++j)
            for (int m = 0; m < 2; ++m) {
              const auto& tm = tails_[j * n_out_ + (nq + m)];
              zqv[j * 2 + m] = s(j, nq + m) - tm.p - tm.c * lor;
            }
        if (req.vv)
          for (int l = 0; l < 2; ++l)
            for (int m = 0; m < 2; ++m) {
              const auto& tm = tails_[(nq + l) * n_out_ + (nq + m)];
              zvv[l * 2 + m] = s(nq + l, nq + m) - tm.p - tm.c * lor;
            }

        const cd step = std::polar(1.0, -w * dt_);
        cd ph_qv = std::polar(1.0, -w * dt_ * 0.5);  // e^{i w t_0}
        cd ph_vv(1.0, 0.0);                          // e^{-i w (0 dt)}
        for (int a = 0; a < n_bins_; ++a) {
          if (req.qv) {
            const double pr = ph_qv.real(), pi = ph_qv.imag();
            for (std::size_t q = 0; q < zqv.size(); ++q)
              aqv[q * n_bins_ + a] +=
                  static_cast<Acc>(wt * (zqv[q].real() * pr - zqv[q].imag() * pi));
            ph_qv *= step;
          }
          if (req.vv) {
            const double pr = ph_vv.real(), pi = ph_vv.imag();
            for (std::size_t q = 0; q < 4; ++q)
              avv[q * n_bins_ + a] +=
                  static_cast<Acc>(wt * (zvv[q].real() * pr - zvv[q].imag() * pi));
            ph_vv *= step;
          }
        }
      }
    }
    for (std::size_t i = 0; i < aqq.size(); ++i) acc_qq_[i] = static_cast<double>(aqq[i]);
    for (std::size_t i = 0; i < aqv.size(); ++i) acc_qv_[i] = static_cast<double>(aqv[i]);
    for (std::size_t i = 0; i < avv.size(); ++i) acc_vv_[i] = static_cast<double>(avv[i]);
  }

  void finalize(const BuildRequest& req) {
    const int nq = n_q_;
    const double inv2pi = 1.0 / kTwoPi;
    double tail_worst = 0.0;

    auto tail_check = [&](int j, int k, double entry_scale, double osc_supp) {
      const double est = resid75_[j * n_out_ + k] * omega_max_ * inv2pi / osc_supp;
      const double rel = est / std::max(1.0, entry_scale);
      tail_worst = std::max(tail_worst, rel);
      if (rel > settings_.tail_tol)
        throw IntegrationError("covariance builder: unresolved spectral tail in entry (" +
                               std::to_string(j) + "," + std::to_string(k) + "), estimate " +
                               std::to_string(est));
    };

    if (req.qq) {
      qq.setZero(nq, nq);
      int u = 0;
      for (int j = 0; j < nq; ++j)
        for (int k = j; k < nq; ++k, ++u) {
          double val = acc_qq_[u] * inv2pi + tails_[j * n_out_ + k].c / (4.0 * gamma_r_);
          qq(j, k) = qq(k, j) = val;
        }
      if (kind_ == ModelKind::Full) {
        qq(2, 2) += 0.5;
        qq(3, 3) += 0.5;
      }
      if (seed_ground_) {
        qq(0, 0) += 0.5;
        qq(1, 1) += 0.5;
      }
      for (int j = 0; j < nq; ++j)
        for (int k = j; k < nq; ++k) {
          tail_check(j, k, std::abs(qq(j, k)), 1.0);
          // Plateau content beyond the cutoff is dropped; fail if it matters.
          const double plateau_rest =
              std::abs(tails_[j * n_out_ + k].p) * omega_max_ * inv2pi;
          if (plateau_rest > settings_.tail_tol * std::max(1.0, std::abs(qq(j, k))))
            throw IntegrationError("covariance builder: non-decaying spectrum in Q block");
        }
    }

    const double osc = std::max(1.0, omega_max_ * dt_ * 0.5);
    if (req.qv) {
      qv.setZero(nq, 2 * n_bins_);
      const double root_dt = std::sqrt(dt_);
      for (int j = 0; j < nq; ++j)
        for (int m = 0; m < 2; ++m) {
          const auto& tm = tails_[j * n_out_ + (nq + m)];
          for (int a = 0; a < n_bins_; ++a) {
            const double t = grid_->t(a);
            double val = acc_qv_[(static_cast<std::size_t>(j) * 2 + m) * n_bins_ + a] * inv2pi;
            val += tm.c * std::exp(-gamma_r_ * std::abs(t)) / (4.0 * gamma_r_);
            qv(j, 2 * a + m) = root_dt * val;
          }
        }
      for (int j = 0; j < nq; ++j)
        for (int m = 0; m < 2; ++m) tail_check(j, nq + m, qv.row(j).cwiseAbs().maxCoeff(), osc);
    }

    if (req.vv) {
      // Lag tables first; the block inherits exact Toeplitz structure.
      const double ft_scale = kind_ == ModelKind::Adiabatic && model_.is_structural() &&
                                      !model_.sensing_is_zero()
                                  ? params_.alpha() * params_.alpha() * 2.0 * kHbar /
                                        (model_.mass() * model_.omega_x())
                                  : 0.0;
      Eigen::MatrixXd lag(4, n_bins_);
      for (int l = 0; l < 2; ++l)
        for (int m = 0; m < 2; ++m) {
          const auto& tm = tails_[(nq + l) * n_out_ + (nq + m)];
          const auto& tmt = tails_[(nq + m) * n_out_ + (nq + l)];
          const double p_sym = 0.5 * (tm.p.real() + tmt.p.real());
          for (int k = 0; k < n_bins_; ++k) {
            const double tau = k * dt_;
            double val = acc_vv_[(static_cast<std::size_t>(l) * 2 + m) * n_bins_ + k] * inv2pi;
            val += tm.c * std::exp(-gamma_r_ * tau) / (4.0 * gamma_r_);
            if (l == 1 && m == 1 && ft_scale != 0.0)
              val += ft_scale * inv2pi *
                     math::truncated_cos_over_linear(model_.omega_c(), tau, omega_max_);
            val *= dt_;
            if (k == 0) val += 0.5 * p_sym;
            lag(l * 2 + m, k) = val;
          }
          tail_check(nq + l, nq + m, std::abs(lag(l * 2 + m, 0)), osc);
        }
      vv.setZero(2 * n_bins_, 2 * n_bins_);
      for (int a = 0; a < n_bins_; ++a)
        for (int ap = 0; ap < n_bins_; ++ap) {
          const int k = ap - a;
          for (int l = 0; l < 2; ++l)
            for (int m = 0; m < 2; ++m)
              vv(2 * a + l, 2 * ap + m) = k >= 0 ? lag(l * 2 + m, k) : lag(m * 2 + l, -k);
        }
    }

    diagnostics = json{{"omega_max_rad_s", omega_max_},
                       {"nodes", fgrid_.size()},
                       {"tail_worst_rel", tail_worst},
                       {"gamma_r_rad_s", gamma_r_},
                       {"seeded_ground_state", seed_ground_},
                       {"extended_accum", settings_.extended_accum}};
    if (model_.is_structural())
      diagnostics["notes"] = json::array({"structural damping: velocity damping disabled"});
  }

  void richardson(const BuildRequest& req) {
    Eigen::MatrixXd qq0 = qq, qv0 = qv, vv0 = vv;
    build_grid(0.5);
    fit_tails();
    if (settings_.extended_accum)
      accumulate<long double>(req);
    else
      accumulate<double>(req);
    IntegratorSettings saved = settings_;
    settings_.richardson_check = false;
    finalize(req);
    settings_ = saved;

    double worst = 0.0;
    auto cmp = [&](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
      if (a.size() == 0) return;
      const double floor = 1e-12 * b.cwiseAbs().maxCoeff() + 1e-300;
      worst = std::max(worst,
                       ((a - b).cwiseAbs().array() / (b.cwiseAbs().array() + floor)).maxCoeff());
    };
    cmp(qq0, qq);
    cmp(qv0, qv);
    cmp(vv0, vv);
    diagnostics["richardson_rel_change"] = worst;
    if (worst > settings_.richardson_tol)
      throw IntegrationError("covariance builder: frequency grid not converged, doubling "
                             "changed entries by " +
                             std::to_string(worst));
  }

  SystemParams params_;
  NoiseModel model_;
  ModelKind kind_;
  const TimeGrid* grid_;
  IntegratorSettings settings_;

  int n_q_ = 0, n_out_ = 0, n_bins_ = 0;
  double dt_ = 0.0, omega_max_ = 0.0, low_scale_ = 0.0, gamma_r_ = 0.0;
  bool seed_ground_ = false;
  std::vector<SpectralFeature> features_;
  FrequencyGrid fgrid_;
  std::vector<TailModel> tails_;
  std::vector<double> resid75_;
  std::vector<double> acc_qq_, acc_qv_, acc_vv_;
};

}  // namespace

Eigen::MatrixXd build_v_qq(const SystemParams& params, const NoiseModel& model,
                           const IntegratorSettings& settings, ModelKind kind,
                           std::optional<TimeGrid> grid) {
  Builder b(params, model, kind, grid ? &*grid : nullptr, settings);
  b.run({.qq = true});
  return b.qq;
}

Eigen::MatrixXd build_v_qv(const SystemParams& params, const NoiseModel& model,
                           const TimeGrid& grid, const IntegratorSettings& settings,
                           ModelKind kind) {
  Builder b(params, model, kind, &grid, settings);
  b.run({.qv = true});
  return b.qv;
}

Eigen::MatrixXd build_v_vv(const SystemParams& params, const NoiseModel& model,
                           const TimeGrid& grid, const IntegratorSettings& settings,
                           ModelKind kind) {
  Builder b(params, model, kind, &grid, settings);
  b.run({.vv = true});
  return b.vv;
}

CovarianceSet assemble(Partition partition, const Eigen::MatrixXd& qq, const Eigen::MatrixXd& qv,
                       const Eigen::MatrixXd& vv, const TimeGrid& grid, json metadata) {
  const int nq = static_cast<int>(qq.rows());
  const int nv = static_cast<int>(vv.rows());
  if (qq.cols() != nq || qv.rows() != nq || qv.cols() != nv || vv.cols() != nv ||
      nv != 2 * grid.n_bins)
    throw std::domain_error("assemble: block dimensions inconsistent with the grid");
  if ((partition == Partition::AdiabaticNoCavity && nq != 2) ||
      (partition != Partition::AdiabaticNoCavity && nq != 4))
    throw std::domain_error("assemble: block dimensions inconsistent with the partition");

  CovarianceSet set;
  set.grid = grid;
  set.partition = partition == Partition::CavityTraced ? Partition::WithCavity : partition;
  set.v.setZero(nq + nv, nq + nv);
  set.v.topLeftCorner(nq, nq) = qq;
  set.v.topRightCorner(nq, nv) = qv;
  set.v.bottomLeftCorner(nv, nq) = qv.transpose();
  set.v.bottomRightCorner(nv, nv) = vv;
  set.metadata = std::move(metadata);
  set.metadata["partition"] = partition_name(set.partition);
  if (partition == Partition::CavityTraced) return cavity_traced(set);
  return set;
}

CovarianceSet build_covariance(const SystemParams& params, const NoiseModel& model,
                               Partition partition, const TimeGrid& grid,
                               const IntegratorSettings& settings) {
  const ModelKind kind =
      partition == Partition::AdiabaticNoCavity ? ModelKind::Adiabatic : ModelKind::Full;
  Builder b(params, model, kind, &grid, settings);
  b.run({.qq = true, .qv = true, .vv = true});
  json meta{{"system", to_json(params)},
            {"noise", to_json(model)},
            {"grid", {{"n_bins", grid.n_bins}, {"dt_s", grid.dt}, {"duration_s", grid.duration()}}},
            {"integrator", b.diagnostics}};
  return assemble(partition, b.qq, b.qv, b.vv, grid, std::move(meta));
}

CovarianceSet cavity_traced(const CovarianceSet& full) {
  if (full.partition != Partition::WithCavity || full.n_q() != 4)
    throw std::domain_error("cavity_traced: input must be a with-cavity set");
  const int dim = full.dim();
  CovarianceSet out;
  out.grid = full.grid;
  out.partition = Partition::CavityTraced;
  out.metadata = full.metadata;
  out.metadata["partition"] = partition_name(out.partition);
  std::vector<int> keep;
  keep.reserve(dim - 2);
  for (int i = 0; i < dim; ++i)
    if (i != 2 && i != 3) keep.push_back(i);
  out.v.setZero(dim - 2, dim - 2);
  for (std::size_t r = 0; r < keep.size(); ++r)
    for (std::size_t c = 0; c < keep.size(); ++c) out.v(r, c) = full.v(keep[r], keep[c]);
  return out;
}

CovarianceSet partial_transpose(const CovarianceSet& set) {
  CovarianceSet out = set;
  out.v.row(1) *= -1.0;
  out.v.col(1) *= -1.0;  // diagonal element flips twice, so it is unchanged
  out.metadata["partial_transposed"] = !set.metadata.value("partial_transposed", false);
  return out;
}

void save_covariance(const CovarianceSet& set, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("save_covariance: cannot open " + path);
  const char magic[8] = {'O', 'P', 'T', 'C', 'O', 'V', '1', '\0'};
  f.write(magic, 8);
  const std::int32_t dim = set.dim(), nb = set.grid.n_bins,
                     part = static_cast<std::int32_t>(set.partition);
  f.write(reinterpret_cast<const char*>(&dim), 4);
  f.write(reinterpret_cast<const char*>(&nb), 4);
  f.write(reinterpret_cast<const char*>(&part), 4);
  f.write(reinterpret_cast<const char*>(&set.grid.dt), 8);
  f.write(reinterpret_cast<const char*>(set.v.data()),
          static_cast<std::streamsize>(sizeof(double)) * set.v.size());
  if (!f) throw std::runtime_error("save_covariance: write failed for " + path);
  std::ofstream side(path + ".json");
  side << set.metadata.dump(2) << "\n";
}

CovarianceSet load_covariance(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("load_covariance: cannot open " + path);
  char magic[8];
  f.read(magic, 8);
  if (std::memcmp(magic, "OPTCOV1\0", 8) != 0)
    throw std::runtime_error("load_covariance: bad magic in " + path);
  std::int32_t dim = 0, nb = 0, part = 0;
  f.read(reinterpret_cast<char*>(&dim), 4);
  f.read(reinterpret_cast<char*>(&nb), 4);
  f.read(reinterpret_cast<char*>(&part), 4);
  CovarianceSet set;
  set.grid.n_bins = nb;
  f.read(reinterpret_cast<char*>(&set.grid.dt), 8);
  set.partition = static_cast<Partition>(part);
  set.v.setZero(dim, dim);
  f.read(reinterpret_cast<char*>(set.v.data()),
         static_cast<std::streamsize>(sizeof(double)) * set.v.size());
  if (!f) throw std::runtime_error("load_covariance: truncated file " + path);
  std::ifstream side(path + ".json");
  if (side) side >> set.metadata;
  return set;
}

}  // namespace optent
