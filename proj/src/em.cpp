#include "coarsenrank/em.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "coarsenrank/ranking.hpp"

namespace coarsenrank {

GammaPrior::GammaPrior(double shape, double rate)
    : shape_(1, shape), rate_(1, rate) {}

GammaPrior::GammaPrior(std::vector<double> shape, std::vector<double> rate)
    : shape_(std::move(shape)), rate_(std::move(rate)) {
  if (shape_.empty() || rate_.empty())
    throw std::invalid_argument("GammaPrior: empty parameter vector");
  if (shape_.size() != rate_.size())
    throw std::invalid_argument("GammaPrior: shape/rate size mismatch");
}

void GammaPrior::validate(int num_items) const {
  if (shape_.size() != 1 && static_cast<int>(shape_.size()) != num_items)
    throw std::invalid_argument("GammaPrior: parameter count does not match items");
  for (double s : shape_)
    if (!(s >= 1.0) || !std::isfinite(s))
      throw std::invalid_argument("GammaPrior: shape must be >= 1");
  for (double r : rate_)
    if (!(r > 0.0) || !std::isfinite(r))
      throw std::invalid_argument("GammaPrior: rate must be > 0");
}

double compute_tau(int num_preferences, double alpha) {
  if (num_preferences < 1)
    throw std::invalid_argument("compute_tau: need at least one preference");
  if (std::isnan(alpha) || alpha <= 0.0)
    throw std::invalid_argument("compute_tau: alpha must be positive");
  if (std::isinf(alpha)) return 1.0;
  return alpha / (alpha + static_cast<double>(num_preferences));
}

AuxiliaryExpectations::AuxiliaryExpectations(std::vector<double> values,
                                             std::vector<int> offsets)
    : values_(std::move(values)), offsets_(std::move(offsets)) {
  if (offsets_.empty() || offsets_.front() != 0 ||
      offsets_.back() != static_cast<int>(values_.size()))
    throw std::invalid_argument("AuxiliaryExpectations: inconsistent layout");
}

AuxiliaryExpectations e_step(const PreferenceDataset& ds, const ItemScores& theta) {
  if (theta.size() != ds.num_items())
    throw std::invalid_argument("e_step: score vector does not match items");
  const int n_count = ds.num_preferences();
  std::vector<int> offsets(n_count + 1, 0);
  for (int n = 0; n < n_count; ++n)
    offsets[n + 1] = offsets[n] + ds.preference(n).length() - 1;
  std::vector<double> values(offsets.back());
  for (int n = 0; n < n_count; ++n) {
    const std::vector<int>& items = ds.preference(n).items();
    const int k = static_cast<int>(items.size());
    double suffix = theta[items[k - 1]];
    for (int i = k - 2; i >= 0; --i) {
      suffix += theta[items[i]];
      const double expectation = 1.0 / suffix;
      if (!(suffix > 0.0) || !std::isfinite(expectation))
        throw std::domain_error("e_step: preference " + std::to_string(n) +
                                " has a non-positive suffix score sum");
      values[offsets[n] + i] = expectation;
    }
  }
  return AuxiliaryExpectations(std::move(values), std::move(offsets));
}

ItemScores m_step(const PreferenceDataset& ds, const AuxiliaryExpectations& aux,
                  double tau, const CoarsenConfig& config) {
  const int m_count = ds.num_items();
  const int n_count = ds.num_preferences();
  if (aux.num_preferences() != n_count)
    throw std::invalid_argument("m_step: expectations do not match dataset");
  if (!(tau > 0.0) || tau > 1.0)
    throw std::invalid_argument("m_step: tau must lie in (0, 1]");
  config.prior.validate(m_count);
  if (!(config.score_floor >= 0.0))
    throw std::invalid_argument("m_step: score_floor must be >= 0");

  std::vector<double> num(m_count), den(m_count);
  for (int m = 0; m < m_count; ++m) {
    num[m] = config.prior.shape(m) - 1.0;
    den[m] = config.prior.rate(m);
  }
  std::vector<double> prefix;
  for (int n = 0; n < n_count; ++n) {
    const std::vector<int>& items = ds.preference(n).items();
    const int k = static_cast<int>(items.size());
    const std::span<const double> exps = aux.for_preference(n);
    prefix.resize(k - 1);
    double cum = 0.0;
    for (int i = 0; i < k - 1; ++i) {
      num[items[i]] += tau;
      cum += exps[i];
      prefix[i] = cum;
    }
    for (int j = 0; j < k; ++j)
      den[items[j]] += tau * prefix[std::min(j, k - 2)];
  }

  std::vector<double> theta(m_count);
  for (int m = 0; m < m_count; ++m) {
    if (!(den[m] > 0.0))
      throw std::runtime_error("m_step: non-positive denominator for item " +
                               std::to_string(m));
    theta[m] = std::max(num[m] / den[m], config.score_floor);
  }
  return ItemScores(std::move(theta));
}

ItemScores c_step(const ItemScores& theta, double calibration) {
  if (!(calibration > 0.0) || !std::isfinite(calibration))
    throw std::invalid_argument("c_step: calibration must be positive and finite");
  // Summing in ascending value order makes the total independent of item
  // labeling, so refits of relabeled data permute bit-exactly.
  std::vector<double> sorted = theta.values();
  std::sort(sorted.begin(), sorted.end());
  double total = 0.0;
  for (double v : sorted) total += v;
  if (!(total > 0.0))
    throw std::domain_error("c_step: scores sum to zero");
  const double scale = calibration / total;
  std::vector<double> out(theta.values());
  for (double& v : out) v *= scale;
  return ItemScores(std::move(out));
}

double coarsened_log_posterior(const PreferenceDataset& ds, const ItemScores& theta,
                               double tau, const GammaPrior& prior) {
  double log_prior = 0.0;
  for (int m = 0; m < ds.num_items(); ++m) {
    const double a = prior.shape(m);
    const double b = prior.rate(m);
    log_prior += a * std::log(b) - std::lgamma(a) - b * theta[m];
    if (a != 1.0) log_prior += (a - 1.0) * std::log(theta[m]);
  }
  return log_prior + tau * dataset_log_likelihood(ds, theta);
}

FitResult fit(const PreferenceDataset& ds, const CoarsenConfig& config) {
  const int n_count = ds.num_preferences();
  const int m_count = ds.num_items();
  if (n_count < 1) throw std::invalid_argument("fit: dataset has no preferences");
  if (m_count < 2) throw std::invalid_argument("fit: need at least two items");
  if (config.iterations < 1)
    throw std::invalid_argument("fit: iterations must be >= 1");
  config.prior.validate(m_count);
  if (config.calibration && !(*config.calibration > 0.0))
    throw std::invalid_argument("fit: calibration must be positive");
  if (config.early_exit && !(config.early_exit_tol > 0.0))
    throw std::invalid_argument("fit: early_exit_tol must be positive");

  const double calibration = config.calibration.value_or(n_count / 2.0);
  const double tau = compute_tau(n_count, config.alpha);

  ItemScores theta(std::vector<double>(m_count, calibration / m_count));
  std::vector<double> trace;
  trace.reserve(config.iterations);

  for (int t = 0; t < config.iterations; ++t) {
    try {
      const AuxiliaryExpectations aux = e_step(ds, theta);
      ItemScores updated = m_step(ds, aux, tau, config);
      trace.push_back(coarsened_log_posterior(ds, updated, tau, config.prior));
      if (config.apply_c_step) {
        updated = c_step(updated, calibration);
        if (config.score_floor > 0.0) {
          std::vector<double> guarded = updated.values();
          for (double& v : guarded) v = std::max(v, config.score_floor);
          updated = ItemScores(std::move(guarded));
        }
      }
      double delta = 0.0;
      for (int m = 0; m < m_count; ++m) {
        const double base = std::max(theta[m], 1e-300);
        delta = std::max(delta, std::abs(updated[m] - theta[m]) / base);
      }
      theta = std::move(updated);
      if (config.early_exit && delta < config.early_exit_tol) break;
    } catch (const std::domain_error& e) {
      throw std::domain_error("fit: iteration " + std::to_string(t + 1) + ": " +
                              e.what());
    } catch (const std::runtime_error& e) {
      throw std::runtime_error("fit: iteration " + std::to_string(t + 1) + ": " +
                               e.what());
    }
  }

  FitResult result{std::move(theta), std::move(trace), tau, 0};
  result.iterations_run = static_cast<int>(result.objective_trace.size());
  return result;
}

}  // namespace coarsenrank
