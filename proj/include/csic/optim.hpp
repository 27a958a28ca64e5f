#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "csic/basis.hpp"
#include "csic/certify.hpp"
#include "csic/linalg.hpp"
#include "csic/povm.hpp"
#include "csic/rng.hpp"
#include "csic/scheme.hpp"

namespace csic {

enum class StepRule { Fixed, Backtracking };

struct OptimConfig {
  Scheme scheme;
  int restarts = 1;
  int max_iters = 1000;
  StepRule step_rule = StepRule::Backtracking;
  double step_size = 0.5;       // fixed step, or initial backtracking step
  double objective_tol = 1e-7;  // converged when the objective drops below
  double penalty_weight = 1.0;  // weight of the known-subspace penalty
  std::uint64_t seed = 0;
};

struct OptimReport {
  double best_objective = std::numeric_limits<double>::infinity();
  bool converged = false;
  int iterations = 0;   // gradient steps used by the best restart
  int best_restart = -1;
  std::vector<CVector> fiducials;  // phase-gauged unit vectors
  std::optional<CsicCertificate> certificate;  // attached on convergence
};

/// Squared HS deviation of the rank-1 equal-weight frame superoperator from
/// its optimal form A + ((n-1)/(N-1)) C, plus a penalty on overlaps with the
/// known subspace. Zero exactly at conditional SIC-POVMs for the scheme.
class FrameObjective {
 public:
  FrameObjective(Scheme scheme, double penalty_weight = 1.0)
      : scheme_(std::move(scheme)),
        basis_(HermitianBasis::gell_mann(scheme_.dim())),
        mu_(penalty_weight) {
    const int n = scheme_.dim();
    const int n2 = basis_.size();
    frame_count_ = scheme_.povm_size();
    weight_ = double(n) / double(frame_count_);
    target_ = RMatrix::Zero(n2, n2);
    target_(0, 0) = 1.0;
    const double kappa = double(n - 1) / double(frame_count_ - 1);
    for (int idx : scheme_.unknown()) target_(idx, idx) = kappa;
  }

  const Scheme& scheme() const { return scheme_; }
  const HermitianBasis& basis() const { return basis_; }
  int frame_count() const { return frame_count_; }

  RVector coordinates(const CVector& v) const {
    const int n2 = basis_.size();
    RVector x(n2);
    for (int a = 0; a < n2; ++a) {
      x(a) = (v.adjoint() * basis_[a] * v).value().real();
    }
    return x;
  }

  double value(const std::vector<CVector>& vectors) const {
    RMatrix g = deviation(vectors);
    double j = g.squaredNorm();
    for (const CVector& v : vectors) {
      RVector x = coordinates(v);
      for (int k : scheme_.known()) j += mu_ * x(k) * x(k);
    }
    return j;
  }

  /// Riemannian gradient: the ambient gradient projected onto each sphere's
  /// tangent space. Convention: the directional derivative along a tangent
  /// perturbation d equals Re sum_i <grad_i, d_i>.
  std::vector<CVector> gradient(const std::vector<CVector>& vectors) const {
    RMatrix g = deviation(vectors);
    std::vector<CVector> out;
    out.reserve(vectors.size());
    const int n2 = basis_.size();
    for (const CVector& v : vectors) {
      RVector x = coordinates(v);
      RVector gx = g * x;
      CMatrix m = CMatrix::Zero(scheme_.dim(), scheme_.dim());
      for (int a = 0; a < n2; ++a) {
        m += (8.0 * weight_ * gx(a)) * basis_[a];
      }
      for (int k : scheme_.known()) {
        m += (4.0 * mu_ * x(k)) * basis_[k];
      }
      CVector grad = m * v;
      double radial = (v.adjoint() * grad).value().real();
      grad -= radial * v;
      out.push_back(std::move(grad));
    }
    return out;
  }

 private:
  RMatrix deviation(const std::vector<CVector>& vectors) const {
    if (static_cast<int>(vectors.size()) != frame_count_) {
      throw std::invalid_argument("frame objective: expected N = n^2 - m vectors");
    }
    const int n2 = basis_.size();
    RMatrix f = RMatrix::Zero(n2, n2);
    for (const CVector& v : vectors) {
      if (v.size() != scheme_.dim()) {
        throw std::invalid_argument("frame objective: vector dimension mismatch");
      }
      RVector x = coordinates(v);
      f.noalias() += weight_ * x * x.transpose();
    }
    return f - target_;
  }

  Scheme scheme_;
  HermitianBasis basis_;
  double mu_;
  int frame_count_ = 0;
  double weight_ = 0.0;
  RMatrix target_;
};

inline double frame_objective(const std::vector<CVector>& vectors,
                              const Scheme& scheme,
                              double penalty_weight = 1.0) {
  return FrameObjective(scheme, penalty_weight).value(vectors);
}

inline std::vector<CVector> frame_gradient(const std::vector<CVector>& vectors,
                                           const Scheme& scheme,
                                           double penalty_weight = 1.0) {
  return FrameObjective(scheme, penalty_weight).gradient(vectors);
}

namespace detail {

inline std::vector<CVector> random_fiducials(int n, int count,
                                             std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<CVector> vectors(count);
  for (auto& v : vectors) {
    v = CVector(n);
    for (int i = 0; i < n; ++i) {
      double re = gauss(rng);
      double im = gauss(rng);
      v(i) = Complex(re, im);
    }
    v.normalize();
  }
  return vectors;
}

inline std::vector<CVector> retract(const std::vector<CVector>& vectors,
                                    const std::vector<CVector>& step,
                                    double eta) {
  std::vector<CVector> out(vectors.size());
  for (size_t i = 0; i < vectors.size(); ++i) {
    out[i] = vectors[i] - eta * step[i];
    out[i].normalize();
  }
  return out;
}

inline void fix_phase_gauge(std::vector<CVector>& vectors) {
  for (auto& v : vectors) {
    Complex lead = v(0);
    double mag = std::abs(lead);
    if (mag > 1e-12) v *= std::conj(lead) / mag;
  }
}

}  // namespace detail

/// Best-of-restarts projected gradient descent over N unit fiducials with
/// fixed equal weights n/N. Non-convergence is a reported outcome, not an
/// error; on convergence a certificate at tolerance 1e-4 is attached.
inline OptimReport optimize_frame(const OptimConfig& cfg) {
  if (cfg.restarts < 1 || cfg.max_iters < 1 || cfg.objective_tol <= 0.0) {
    throw std::invalid_argument("optimizer: invalid configuration");
  }
  FrameObjective objective(cfg.scheme, cfg.penalty_weight);
  const int n = cfg.scheme.dim();
  const int count = objective.frame_count();

  OptimReport report;
  for (int r = 0; r < cfg.restarts; ++r) {
    std::mt19937_64 rng = substream(cfg.seed, static_cast<std::uint64_t>(r));
    std::vector<CVector> v = detail::random_fiducials(n, count, rng);
    double j = objective.value(v);
    double eta = cfg.step_size;
    int iters = 0;
    for (; iters < cfg.max_iters && j >= cfg.objective_tol; ++iters) {
      std::vector<CVector> grad = objective.gradient(v);
      double grad_sq = 0.0;
      for (const CVector& g : grad) grad_sq += g.squaredNorm();
      if (grad_sq < 1e-30) break;  // stationary point

      if (cfg.step_rule == StepRule::Fixed) {
        v = detail::retract(v, grad, cfg.step_size);
        j = objective.value(v);
        continue;
      }
      eta = std::min(eta * 2.0, 1e3);
      bool accepted = false;
      while (eta >= 1e-18) {
        std::vector<CVector> trial = detail::retract(v, grad, eta);
        double jt = objective.value(trial);
        if (jt <= j - 1e-4 * eta * grad_sq) {
          v = std::move(trial);
          j = jt;
          accepted = true;
          break;
        }
        eta /= 2.0;
      }
      if (!accepted) break;  // no descent step available
    }
    if (j < report.best_objective) {
      report.best_objective = j;
      report.best_restart = r;
      report.iterations = iters;
      report.fiducials = std::move(v);
    }
  }

  detail::fix_phase_gauge(report.fiducials);
  report.converged = report.best_objective < cfg.objective_tol;
  if (report.converged) {
    Povm povm = Povm::from_fiducials(n, report.fiducials, 0.1);
    report.certificate =
        certify_povm(povm, cfg.scheme, objective.basis(), 1e-4);
  }
  return report;
}

}  // namespace csic
