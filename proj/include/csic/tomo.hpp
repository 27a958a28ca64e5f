#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "csic/basis.hpp"
#include "csic/dual.hpp"
#include "csic/linalg.hpp"
#include "csic/povm.hpp"
#include "csic/rng.hpp"
#include "csic/scheme.hpp"

namespace csic {

enum class StateModel { HaarPure, HsMixed, Fixed };

/// One Monte-Carlo tomography experiment: `trials` independent states, each
/// measured `shots` times, reconstructed linearly through the canonical dual
/// frame. Per-trial substreams derive from (seed, trial), so results are
/// reproducible regardless of evaluation order.
struct SimConfig {
  Povm povm;
  Scheme scheme;
  StateModel model = StateModel::HaarPure;
  CMatrix fixed_state;  // used when model == Fixed
  long long shots = 1;
  long long trials = 1;
  std::uint64_t seed = 0;
  bool exact_probabilities = false;  // reconstruct from exact p, no sampling
  bool record_trials = false;
};

struct TrialRecord {
  double sq_error = 0.0;
  double theoretical = 0.0;  // T for this trial's state (single measurement)
};

struct SimResult {
  double mean_sq_error = 0.0;
  double std_error = 0.0;
  double theoretical_mean = 0.0;  // average T over sampled states / shots
  long long shots = 0;
  long long trials = 0;
  std::vector<TrialRecord> records;  // filled iff record_trials
};

inline CMatrix sample_state(StateModel model, int n, std::mt19937_64& rng,
                            const CMatrix* fixed = nullptr) {
  switch (model) {
    case StateModel::HaarPure:
      return random_pure_density(n, rng);
    case StateModel::HsMixed:
      return random_density(n, rng);
    case StateModel::Fixed: {
      if (fixed == nullptr || fixed->rows() != n || fixed->cols() != n) {
        throw std::invalid_argument("sample_state: missing fixed state");
      }
      return *fixed;
    }
  }
  throw std::invalid_argument("sample_state: unknown state model");
}

/// Outcome distribution p_i = Tr(rho F_i). Entries in [-kTol, 0) are clamped
/// to zero (roundoff); anything more negative is an error, as is a total
/// farther than kTol from one. The result is renormalized to sum exactly 1.
inline RVector probabilities(const CMatrix& rho, const Povm& p) {
  if (rho.rows() != p.dim() || rho.cols() != p.dim()) {
    throw std::invalid_argument("probabilities: dimension mismatch");
  }
  RVector out(p.size());
  for (int i = 0; i < p.size(); ++i) {
    double v = hs_inner(p.element(i), rho).real();
    if (v < -kTol) {
      throw std::domain_error("probabilities: negative probability beyond tolerance");
    }
    out(i) = std::max(v, 0.0);
  }
  double total = out.sum();
  if (std::abs(total - 1.0) > kTol) {
    throw std::domain_error("probabilities: outcome distribution does not sum to 1");
  }
  return out / total;
}

inline std::vector<long long> sample_counts(const RVector& p, long long shots,
                                            std::mt19937_64& rng) {
  if (shots < 1) {
    throw std::invalid_argument("sample_counts: shots must be at least 1");
  }
  return multinomial_counts(p, shots, rng);
}

/// Linear estimate sum_i phat_i Q_i plus the known part of the state.
/// With exact probabilities this returns rho itself.
inline CMatrix reconstruct(const RVector& frequencies, const DualFrame& dual,
                           const CMatrix& known_part) {
  if (frequencies.size() != static_cast<Eigen::Index>(dual.elements.size())) {
    throw std::invalid_argument("reconstruct: frequency count mismatch");
  }
  CMatrix x = known_part;
  if (x.rows() != dual.dim || x.cols() != dual.dim) {
    throw std::invalid_argument("reconstruct: known part has wrong shape");
  }
  for (size_t i = 0; i < dual.elements.size(); ++i) {
    x += frequencies(static_cast<Eigen::Index>(i)) * dual.elements[i];
  }
  return x;
}

namespace detail {

inline double pairwise_sum(const double* data, size_t count) {
  if (count <= 32) {
    double s = 0.0;
    for (size_t i = 0; i < count; ++i) s += data[i];
    return s;
  }
  size_t half = count / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, count - half);
}

inline double pairwise_sum(const std::vector<double>& v) {
  return v.empty() ? 0.0 : pairwise_sum(v.data(), v.size());
}

}  // namespace detail

inline SimResult run_simulation(const SimConfig& cfg) {
  const int n = cfg.povm.dim();
  if (cfg.scheme.dim() != n) {
    throw std::invalid_argument("simulation: scheme dimension mismatch");
  }
  if (cfg.povm.size() != cfg.scheme.povm_size()) {
    throw std::invalid_argument(
        "simulation: POVM size does not match the scheme (needs N = n^2 - m)");
  }
  if (cfg.shots < 1 || cfg.trials < 1) {
    throw std::invalid_argument("simulation: shots and trials must be at least 1");
  }
  if (cfg.model == StateModel::Fixed) {
    if (cfg.fixed_state.rows() != n || cfg.fixed_state.cols() != n) {
      throw std::invalid_argument("simulation: fixed state has wrong shape");
    }
  }

  HermitianBasis basis = HermitianBasis::gell_mann(n);
  DualFrame dual = canonical_dual(cfg.povm, basis, cfg.scheme);

  // Everything runs in basis coordinates: the HS norm is the plain 2-norm
  // there, and the dual contracts to one matrix-vector product per trial.
  const int n2 = basis.size();
  RMatrix dual_coords(n2, cfg.povm.size());
  double quad = 0.0;
  for (int i = 0; i < cfg.povm.size(); ++i) {
    dual_coords.col(i) = basis.decompose(dual.elements[i]).theta;
    quad += cfg.povm.weight(i) * dual_coords.col(i).squaredNorm();
  }

  std::vector<double> errors(static_cast<size_t>(cfg.trials));
  std::vector<double> theos(static_cast<size_t>(cfg.trials));
  SimResult result;
  result.shots = cfg.shots;
  result.trials = cfg.trials;
  if (cfg.record_trials) result.records.resize(static_cast<size_t>(cfg.trials));

  for (long long t = 0; t < cfg.trials; ++t) {
    std::mt19937_64 rng = substream(cfg.seed, static_cast<std::uint64_t>(t));
    CMatrix rho = sample_state(cfg.model, n, rng,
                               cfg.model == StateModel::Fixed ? &cfg.fixed_state : nullptr);
    RVector theta = basis.decompose(rho).theta;
    RVector starred = theta;
    for (int idx : cfg.scheme.known()) starred(idx) = 0.0;

    RVector p = probabilities(rho, cfg.povm);
    RVector phat;
    if (cfg.exact_probabilities) {
      phat = p;
    } else {
      std::vector<long long> counts = sample_counts(p, cfg.shots, rng);
      phat = RVector(p.size());
      for (int i = 0; i < p.size(); ++i) {
        phat(i) = double(counts[static_cast<size_t>(i)]) / double(cfg.shots);
      }
    }

    RVector estimate = dual_coords * phat;
    double sq_error = (starred - estimate).squaredNorm();
    double theo = quad / double(n) - starred.squaredNorm();
    errors[static_cast<size_t>(t)] = sq_error;
    theos[static_cast<size_t>(t)] = theo;
    if (cfg.record_trials) {
      result.records[static_cast<size_t>(t)] = TrialRecord{sq_error, theo};
    }
  }

  const double trials_d = double(cfg.trials);
  result.mean_sq_error = detail::pairwise_sum(errors) / trials_d;
  result.theoretical_mean =
      detail::pairwise_sum(theos) / trials_d / double(cfg.shots);
  if (cfg.trials > 1) {
    std::vector<double> sq_dev(errors.size());
    for (size_t i = 0; i < errors.size(); ++i) {
      double d = errors[i] - result.mean_sq_error;
      sq_dev[i] = d * d;
    }
    double var = detail::pairwise_sum(sq_dev) / (trials_d - 1.0);
    result.std_error = std::sqrt(var / trials_d);
  }
  return result;
}

}  // namespace csic
