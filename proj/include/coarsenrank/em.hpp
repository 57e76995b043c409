#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "coarsenrank/types.hpp"

namespace coarsenrank {

// Independent Gamma(shape, rate) prior per item score. A single (shape, rate)
// pair broadcasts to every item. shape >= 1 and rate > 0.
class GammaPrior {
 public:
  GammaPrior() : GammaPrior(1.0, 2.0) {}
  GammaPrior(double shape, double rate);
  GammaPrior(std::vector<double> shape, std::vector<double> rate);

  double shape(int m) const { return shape_.size() == 1 ? shape_[0] : shape_[m]; }
  double rate(int m) const { return rate_.size() == 1 ? rate_[0] : rate_[m]; }

  // Checks broadcastability to num_items and the shape/rate bounds.
  void validate(int num_items) const;

 private:
  std::vector<double> shape_, rate_;
};

struct CoarsenConfig {
  // Robustness hyperparameter; +inf recovers the untempered fit.
  double alpha = std::numeric_limits<double>::infinity();
  GammaPrior prior{};
  int iterations = 15;
  // Target sum of scores; nullopt resolves to N/2.
  std::optional<double> calibration{};
  double score_floor = 1e-12;
  bool apply_c_step = true;
  // Optional early exit when the max relative score change drops below tol.
  bool early_exit = false;
  double early_exit_tol = 1e-8;
};

// tau = alpha / (alpha + N); exactly 1 for alpha = +inf.
double compute_tau(int num_preferences, double alpha);

// Expected auxiliary variables, one per non-terminal position of each
// preference: E[xi_n^i] = 1 / (suffix sum of scores from position i).
class AuxiliaryExpectations {
 public:
  AuxiliaryExpectations(std::vector<double> values, std::vector<int> offsets);

  int num_preferences() const { return static_cast<int>(offsets_.size()) - 1; }
  std::span<const double> for_preference(int n) const {
    return {values_.data() + offsets_[n],
            static_cast<std::size_t>(offsets_[n + 1] - offsets_[n])};
  }
  double at(int n, int i) const { return values_[offsets_[n] + i]; }

 private:
  std::vector<double> values_;
  std::vector<int> offsets_;
};

AuxiliaryExpectations e_step(const PreferenceDataset& ds, const ItemScores& theta);

// Closed-form update: theta_m = (tau*wins_m + shape_m - 1) / (tau*load_m + rate_m),
// where wins counts non-terminal appearances at the front of their suffix and
// load is the expectation-weighted suffix membership. Result floored at
// config.score_floor.
ItemScores m_step(const PreferenceDataset& ds, const AuxiliaryExpectations& aux,
                  double tau, const CoarsenConfig& config);

// Rescales scores to sum to calibration.
ItemScores c_step(const ItemScores& theta, double calibration);

// log prior + tau * log likelihood, the tempered objective the EM ascends.
double coarsened_log_posterior(const PreferenceDataset& ds, const ItemScores& theta,
                               double tau, const GammaPrior& prior);

struct FitResult {
  ItemScores theta;
  // Objective recorded after each m_step (before rescaling).
  std::vector<double> objective_trace;
  double tau_n = 1.0;
  int iterations_run = 0;
};

FitResult fit(const PreferenceDataset& ds, const CoarsenConfig& config);

}  // namespace coarsenrank
