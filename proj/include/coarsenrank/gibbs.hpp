#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coarsenrank/em.hpp"
#include "coarsenrank/types.hpp"

namespace coarsenrank {

// Shape used for the per-item Gamma full conditional of the sampler.
// kPaper:     max(tau*wins_m + shape_m - 1, 1e-6)   (mode-style exponent)
// kConjugate: shape_m + tau*wins_m                  (exact conjugate update)
enum class ConditionalMode { kPaper, kConjugate };

struct GibbsConfig {
  int samples = 50;
  int burn_in = 50;
  std::uint64_t seed = 0;
  ConditionalMode conditional_mode = ConditionalMode::kConjugate;
};

// Retained post-burn-in score draws, row per sweep.
class PosteriorSamples {
 public:
  PosteriorSamples(std::vector<double> data, int num_items, std::uint64_t seed);

  int num_samples() const {
    return static_cast<int>(data_.size()) / num_items_;
  }
  int num_items() const { return num_items_; }
  std::uint64_t seed() const { return seed_; }
  double at(int s, int m) const { return data_[static_cast<std::size_t>(s) * num_items_ + m]; }
  std::span<const double> sample(int s) const {
    return {data_.data() + static_cast<std::size_t>(s) * num_items_,
            static_cast<std::size_t>(num_items_)};
  }

 private:
  std::vector<double> data_;
  int num_items_;
  std::uint64_t seed_;
};

// Augmented Gibbs sweep: auxiliary rates from current scores, then per-item
// Gamma score draws with the tempered sufficient statistics.
PosteriorSamples gibbs_run(const PreferenceDataset& ds, double alpha,
                           const GammaPrior& prior, const GibbsConfig& config);

struct DicPoint {
  double alpha = 0.0;
  // f: posterior-mean log-likelihood. g: log-likelihood at the posterior mean
  // minus f (effective complexity). dic = g - f.
  double f = 0.0;
  double g = 0.0;
  double dic = 0.0;
};

// DIC from an existing set of samples; pure function of its inputs.
DicPoint dic_from_samples(const PreferenceDataset& ds, double alpha,
                          const PosteriorSamples& samples);

DicPoint dic(const PreferenceDataset& ds, double alpha, const GammaPrior& prior,
             const GibbsConfig& config);

struct DiagnoseResult {
  std::vector<DicPoint> curve;
  double selected_alpha = 0.0;
};

// Evaluates dic over an ascending alpha grid (chain seeds derived from
// config.seed + grid index) and selects the argmin, ties to the smaller alpha.
DiagnoseResult diagnose(const PreferenceDataset& ds,
                        const std::vector<double>& alpha_grid,
                        const GammaPrior& prior, const GibbsConfig& config);

}  // namespace coarsenrank
