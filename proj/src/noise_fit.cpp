#include "optent/noise_fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "optent/errors.hpp"

namespace optent {

using nlohmann::json;

NoiseFitTemplate NoiseFitTemplate::from_name(const std::string& name) {
  NoiseFitTemplate t;
  if (name == "ligo_force")
    t.kind = Kind::LigoForce;
  else if (name == "ligo_sensing")
    t.kind = Kind::LigoSensing;
  else if (name == "suspension")
    t.kind = Kind::SuspensionOnly;
  else if (name == "white_force")
    t.kind = Kind::WhiteForce;
  else if (name == "white_sensing")
    t.kind = Kind::WhiteSensing;
  else if (name == "structural_force")
    t.kind = Kind::StructuralForce;
  else if (name == "structural_sensing")
    t.kind = Kind::StructuralSensing;
  else
    throw ConfigError("unknown fit template '" + name + "'");
  return t;
}

std::string NoiseFitTemplate::name() const {
  switch (kind) {
    case Kind::LigoForce: return "ligo_force";
    case Kind::LigoSensing: return "ligo_sensing";
    case Kind::SuspensionOnly: return "suspension";
    case Kind::WhiteForce: return "white_force";
    case Kind::WhiteSensing: return "white_sensing";
    case Kind::StructuralForce: return "structural_force";
    case Kind::StructuralSensing: return "structural_sensing";
  }
  return "?";
}

json NoiseFitResult::to_json() const {
  json p;
  for (std::size_t i = 0; i < names.size(); ++i) p[names[i]] = values[i];
  return json{{"params", p},
              {"residual_rms_log10", residual_rms},
              {"iterations", iterations},
              {"converged", converged},
              {"weighting", "log-uniform in frequency"}};
}

namespace {

struct Problem {
  std::vector<std::string> names;
  std::vector<double> init;  // linear scale
  std::function<double(const std::vector<double>&, double)> eval;  // (params, omega) -> psd
};

Problem make_problem(const NoiseFitTemplate& t, const std::vector<double>& f_hz,
                     const std::vector<double>& psd) {
  Problem p;
  const double top = *std::max_element(psd.begin(), psd.end());
  const double bottom = *std::min_element(psd.begin(), psd.end());
  // Frequency where the curve first drops below half of its low-frequency
  // value: a serviceable cutoff guess for the rational families.
  auto half_drop = [&]() {
    for (std::size_t i = 0; i < psd.size(); ++i)
      if (psd[i] < 0.5 * psd.front()) return kTwoPi * f_hz[i];
    return kTwoPi * f_hz.back();
  };
  using K = NoiseFitTemplate::Kind;
  switch (t.kind) {
    case K::LigoForce:
      p.names = {"tau_f", "omega_f"};
      p.init = {top, half_drop()};
      p.eval = [](const std::vector<double>& q, double w) {
        return q[0] / (std::pow(w / q[1], 14) + 1.0);
      };
      break;
    case K::SuspensionOnly:
      p.names = {"tau_st", "omega_st"};
      p.init = {top, half_drop()};
      p.eval = [](const std::vector<double>& q, double w) {
        return q[0] / (std::pow(w / q[1], 8) + 1.0);
      };
      break;
    case K::LigoSensing: {
      p.names = {"tau_x1", "tau_x2"};
      const double wx = t.omega_x;
      const double whi = kTwoPi * f_hz.back();
      p.init = {std::max(top - bottom, 0.1 * top) / ((whi / wx) * (whi / wx)), bottom};
      p.eval = [wx](const std::vector<double>& q, double w) {
        return q[0] * (w / wx) * (w / wx) + q[1];
      };
      break;
    }
    case K::WhiteForce: {
      p.names = {"omega_f"};
      const double m = t.mass;
      p.init = {std::sqrt(top / (2.0 * kHbar * m))};
      p.eval = [m](const std::vector<double>& q, double) { return 2.0 * kHbar * m * q[0] * q[0]; };
      break;
    }
    case K::WhiteSensing: {
      p.names = {"omega_x"};
      const double m = t.mass;
      p.init = {std::sqrt(2.0 * kHbar / (m * top))};
      p.eval = [m](const std::vector<double>& q, double) { return 2.0 * kHbar / (m * q[0] * q[0]); };
      break;
    }
    case K::StructuralForce: {
      p.names = {"omega_f"};
      const double m = t.mass, wc = t.omega_c;
      const double w0 = kTwoPi * f_hz.front();
      p.init = {std::cbrt(psd.front() * (w0 + wc) / (2.0 * kHbar * m))};
      p.eval = [m, wc](const std::vector<double>& q, double w) {
        return 2.0 * kHbar * m * q[0] * q[0] * q[0] / (w + wc);
      };
      break;
    }
    case K::StructuralSensing: {
      p.names = {"omega_x"};
      const double m = t.mass, wc = t.omega_c;
      const double w0 = kTwoPi * f_hz.front();
      p.init = {2.0 * kHbar / (m * psd.front() * (w0 + wc))};
      p.eval = [m, wc](const std::vector<double>& q, double w) {
        return 2.0 * kHbar / (m * q[0] * (w + wc));
      };
      break;
    }
  }
  return p;
}

}  // namespace

NoiseFitResult fit_noise_model(const std::vector<double>& freq_hz, const std::vector<double>& psd,
                               const NoiseFitTemplate& tmpl) {
  if (freq_hz.empty() || freq_hz.size() != psd.size())
    throw std::domain_error("fit_noise_model: empty or mismatched sample table");
  if (freq_hz.size() < 4) throw std::domain_error("fit_noise_model: need at least 4 samples");

  // Log-uniform resampling of the data.
  TabulatedSpectrum table(freq_hz, psd);
  const int n = 256;
  std::vector<double> w_grid(n), y(n);
  const double l0 = std::log(freq_hz.front()), l1 = std::log(freq_hz.back());
  for (int i = 0; i < n; ++i) {
    // clamp: exp/log round-tripping must not step outside the table
    const double f = std::clamp(std::exp(l0 + (l1 - l0) * i / (n - 1)), freq_hz.front(),
                                freq_hz.back());
    w_grid[i] = kTwoPi * f;
    y[i] = std::log10(table(w_grid[i]));
  }

  Problem prob = make_problem(tmpl, freq_hz, psd);
  const int np = static_cast<int>(prob.init.size());
  // Work in log10 parameter space: positivity for free.
  Eigen::VectorXd x(np);
  for (int i = 0; i < np; ++i) x(i) = std::log10(prob.init[i]);

  auto residuals = [&](const Eigen::VectorXd& xv) {
    std::vector<double> q(np);
    for (int i = 0; i < np; ++i) q[i] = std::pow(10.0, xv(i));
    Eigen::VectorXd r(n);
    for (int i = 0; i < n; ++i) r(i) = std::log10(prob.eval(q, w_grid[i])) - y[i];
    return r;
  };

  Eigen::VectorXd r = residuals(x);
  double sse = r.squaredNorm();
  double lambda = 1e-3;
  bool converged = false;
  int iter = 0;
  for (; iter < 500; ++iter) {
    Eigen::MatrixXd jac(n, np);
    for (int j = 0; j < np; ++j) {
      const double h = 1e-6;
      Eigen::VectorXd xp = x, xm = x;
      xp(j) += h;
      xm(j) -= h;
      jac.col(j) = (residuals(xp) - residuals(xm)) / (2.0 * h);
    }
    Eigen::VectorXd grad = jac.transpose() * r;
    if (grad.lpNorm<Eigen::Infinity>() < 1e-10) {
      converged = true;
      break;
    }
    Eigen::MatrixXd jtj = jac.transpose() * jac;
    bool improved = false;
    for (int tries = 0; tries < 16 && !improved; ++tries) {
      Eigen::MatrixXd a = jtj + lambda * jtj.diagonal().asDiagonal().toDenseMatrix() +
                          1e-12 * lambda * Eigen::MatrixXd::Identity(np, np);
      Eigen::VectorXd step = a.ldlt().solve(-grad);
      Eigen::VectorXd x_new = x + step;
      Eigen::VectorXd r_new = residuals(x_new);
      const double sse_new = r_new.squaredNorm();
      if (std::isfinite(sse_new) && sse_new < sse) {
        x = x_new;
        r = r_new;
        sse = sse_new;
        lambda = std::max(lambda * 0.3, 1e-14);
        improved = true;
      } else {
        lambda *= 8.0;
      }
    }
    if (!improved) break;
  }

  NoiseFitResult out;
  out.names = prob.names;
  for (int i = 0; i < np; ++i) out.values.push_back(std::pow(10.0, x(i)));
  out.residual_rms = std::sqrt(sse / n);
  out.iterations = iter;
  out.converged = converged;
  if (!converged) {
    // Gradient never reached tolerance: hand back the best point found.
    if (out.residual_rms > 1e-6)
      throw FitError("fit_noise_model: no convergence after " + std::to_string(iter) +
                         " iterations",
                     out.values, out.residual_rms);
    out.converged = true;  // stalled with a perfect fit: accept
  }
  return out;
}

}  // namespace optent
