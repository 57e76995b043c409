#include "coarsenrank/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "coarsenrank/ranking.hpp"

namespace coarsenrank {

namespace {

constexpr double kShapeFloor = 1e-6;

// Shape-rate parameterization; std::gamma_distribution takes a scale.
double gamma_sample(std::mt19937_64& rng, double shape, double rate) {
  std::gamma_distribution<double> dist(shape, 1.0 / rate);
  return dist(rng);
}

}  // namespace

PosteriorSamples::PosteriorSamples(std::vector<double> data, int num_items,
                                   std::uint64_t seed)
    : data_(std::move(data)), num_items_(num_items), seed_(seed) {
  if (num_items_ < 1 || data_.empty() || data_.size() % num_items_ != 0)
    throw std::invalid_argument("PosteriorSamples: inconsistent layout");
}

PosteriorSamples gibbs_run(const PreferenceDataset& ds, double alpha,
                           const GammaPrior& prior, const GibbsConfig& config) {
  const int n_count = ds.num_preferences();
  const int m_count = ds.num_items();
  if (n_count < 1) throw std::invalid_argument("gibbs_run: dataset has no preferences");
  if (m_count < 2) throw std::invalid_argument("gibbs_run: need at least two items");
  if (config.samples < 1)
    throw std::invalid_argument("gibbs_run: samples must be >= 1");
  if (config.burn_in < 0)
    throw std::invalid_argument("gibbs_run: burn_in must be >= 0");
  prior.validate(m_count);
  const double tau = compute_tau(n_count, alpha);

  // Non-terminal front appearances are fixed by the data.
  std::vector<double> wins(m_count, 0.0);
  for (int n = 0; n < n_count; ++n) {
    const std::vector<int>& items = ds.preference(n).items();
    for (int i = 0; i + 1 < static_cast<int>(items.size()); ++i)
      wins[items[i]] += 1.0;
  }
  std::vector<double> shape(m_count);
  for (int m = 0; m < m_count; ++m) {
    if (config.conditional_mode == ConditionalMode::kConjugate)
      shape[m] = prior.shape(m) + tau * wins[m];
    else
      shape[m] = std::max(tau * wins[m] + prior.shape(m) - 1.0, kShapeFloor);
  }

  std::mt19937_64 rng(config.seed);
  std::vector<double> theta(m_count);
  for (int m = 0; m < m_count; ++m) theta[m] = prior.shape(m) / prior.rate(m);

  std::vector<double> rate(m_count), eta, cum;
  std::vector<double> retained;
  retained.reserve(static_cast<std::size_t>(config.samples) * m_count);

  const int total_sweeps = config.burn_in + config.samples;
  for (int sweep = 0; sweep < total_sweeps; ++sweep) {
    for (int m = 0; m < m_count; ++m) rate[m] = prior.rate(m);
    for (int n = 0; n < n_count; ++n) {
      const std::vector<int>& items = ds.preference(n).items();
      const int k = static_cast<int>(items.size());
      eta.resize(k - 1);
      double suffix = theta[items[k - 1]];
      for (int i = k - 2; i >= 0; --i) {
        suffix += theta[items[i]];
        eta[i] = suffix;
      }
      cum.resize(k - 1);
      double acc = 0.0;
      for (int i = 0; i < k - 1; ++i) {
        acc += gamma_sample(rng, 1.0, eta[i]);
        cum[i] = acc;
      }
      for (int j = 0; j < k; ++j)
        rate[items[j]] += tau * cum[std::min(j, k - 2)];
    }
    for (int m = 0; m < m_count; ++m) {
      if (!(shape[m] > 0.0) || !std::isfinite(shape[m]) || !(rate[m] > 0.0) ||
          !std::isfinite(rate[m]))
        throw std::runtime_error("gibbs_run: sweep " + std::to_string(sweep) +
                                 ": invalid Gamma parameters for item " +
                                 std::to_string(m));
      theta[m] = std::max(gamma_sample(rng, shape[m], rate[m]),
                          std::numeric_limits<double>::min());
    }
    if (sweep >= config.burn_in)
      retained.insert(retained.end(), theta.begin(), theta.end());
  }
  return PosteriorSamples(std::move(retained), m_count, config.seed);
}

DicPoint dic_from_samples(const PreferenceDataset& ds, double alpha,
                          const PosteriorSamples& samples) {
  if (samples.num_items() != ds.num_items())
    throw std::invalid_argument("dic_from_samples: samples do not match dataset");
  const int s_count = samples.num_samples();
  const int m_count = samples.num_items();
  double f_sum = 0.0;
  std::vector<double> mean(m_count, 0.0);
  for (int s = 0; s < s_count; ++s) {
    const std::span<const double> row = samples.sample(s);
    double ll = 0.0;
    try {
      ll = dataset_log_likelihood(
          ds, ItemScores(std::vector<double>(row.begin(), row.end())));
    } catch (const std::exception& e) {
      throw std::domain_error("dic_from_samples: posterior sample " +
                              std::to_string(s) + ": " + e.what());
    }
    if (!std::isfinite(ll))
      throw std::domain_error("dic_from_samples: posterior sample " +
                              std::to_string(s) +
                              " has non-finite log-likelihood");
    f_sum += ll;
    for (int m = 0; m < m_count; ++m) mean[m] += row[m];
  }
  for (int m = 0; m < m_count; ++m) mean[m] /= s_count;
  const double f = f_sum / s_count;
  const double at_mean = dataset_log_likelihood(ds, ItemScores(std::move(mean)));
  if (!std::isfinite(at_mean))
    throw std::domain_error(
        "dic_from_samples: non-finite log-likelihood at the posterior mean");
  const double g = at_mean - f;
  return DicPoint{alpha, f, g, g - f};
}

DicPoint dic(const PreferenceDataset& ds, double alpha, const GammaPrior& prior,
             const GibbsConfig& config) {
  return dic_from_samples(ds, alpha, gibbs_run(ds, alpha, prior, config));
}

DiagnoseResult diagnose(const PreferenceDataset& ds,
                        const std::vector<double>& alpha_grid,
                        const GammaPrior& prior, const GibbsConfig& config) {
  if (alpha_grid.empty())
    throw std::invalid_argument("diagnose: empty alpha grid");
  for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
    if (std::isnan(alpha_grid[i]) || alpha_grid[i] <= 0.0)
      throw std::invalid_argument("diagnose: grid alphas must be positive");
    if (i > 0 && !(alpha_grid[i - 1] < alpha_grid[i]))
      throw std::invalid_argument("diagnose: grid must be strictly ascending");
  }

  DiagnoseResult result;
  result.curve.reserve(alpha_grid.size());
  for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
    GibbsConfig chain = config;
    chain.seed = config.seed + static_cast<std::uint64_t>(i);
    try {
      result.curve.push_back(dic(ds, alpha_grid[i], prior, chain));
    } catch (const std::domain_error& e) {
      throw std::domain_error("diagnose: alpha=" + std::to_string(alpha_grid[i]) +
                              ": " + e.what());
    } catch (const std::runtime_error& e) {
      throw std::runtime_error("diagnose: alpha=" + std::to_string(alpha_grid[i]) +
                               ": " + e.what());
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < result.curve.size(); ++i)
    if (result.curve[i].dic < result.curve[best].dic) best = i;
  result.selected_alpha = alpha_grid[best];
  return result;
}

}  // namespace coarsenrank
