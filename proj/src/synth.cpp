#include "coarsenrank/synth.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "coarsenrank/ranking.hpp"

namespace coarsenrank {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d4919d49853aedULL;
  return x ^ (x >> 31);
}

}  // namespace

SynthResult generate(const SynthSpec& spec) {
  if (spec.num_items < 2)
    throw std::invalid_argument("generate: need at least two items");
  if (spec.num_preferences < 1)
    throw std::invalid_argument("generate: need at least one preference");
  if (spec.min_length < 2 || spec.min_length > spec.max_length ||
      spec.max_length > spec.num_items)
    throw std::invalid_argument(
        "generate: need 2 <= min_length <= max_length <= num_items");
  if (!(spec.noise_fraction >= 0.0 && spec.noise_fraction <= 1.0))
    throw std::invalid_argument("generate: noise_fraction must lie in [0, 1]");
  if (spec.theta_truth) {
    if (spec.theta_truth->size() != spec.num_items)
      throw std::invalid_argument("generate: theta_truth size does not match items");
    for (int m = 0; m < spec.num_items; ++m)
      if (!((*spec.theta_truth)[m] > 0.0))
        throw std::invalid_argument("generate: theta_truth must be strictly positive");
  }

  std::mt19937_64 rng(spec.seed);
  ItemScores truth = [&] {
    if (spec.theta_truth) return *spec.theta_truth;
    std::gamma_distribution<double> prior_draw(2.0, 1.0);
    std::vector<double> drawn(spec.num_items);
    for (double& v : drawn) v = prior_draw(rng);
    return ItemScores(std::move(drawn));
  }();

  std::vector<std::string> ids(spec.num_items);
  for (int m = 0; m < spec.num_items; ++m) ids[m] = std::to_string(m);

  std::vector<int> universe(spec.num_items);
  std::iota(universe.begin(), universe.end(), 0);
  std::uniform_int_distribution<int> length_dist(spec.min_length, spec.max_length);

  std::vector<Preference> prefs;
  prefs.reserve(spec.num_preferences);
  std::vector<int> subset;
  for (int n = 0; n < spec.num_preferences; ++n) {
    const int k = length_dist(rng);
    subset.clear();
    std::sample(universe.begin(), universe.end(), std::back_inserter(subset), k, rng);
    prefs.push_back(sample_preference(truth, subset, k, rng));
  }

  PreferenceDataset ds(std::move(prefs), std::move(ids));
  if (spec.noise_fraction > 0.0)
    ds = inject_noise(ds, spec.noise_fraction, splitmix64(spec.seed), spec.noise_mode);

  Ranking ground_truth = scores_to_ranking(truth);
  return SynthResult{std::move(ds), std::move(ground_truth), std::move(truth)};
}

PreferenceDataset inject_noise(const PreferenceDataset& ds, double fraction,
                               std::uint64_t seed, NoiseMode mode) {
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw std::invalid_argument("inject_noise: fraction must lie in [0, 1]");
  const int n_count = ds.num_preferences();
  const long long replace = std::llround(fraction * n_count);

  std::vector<Preference> prefs = ds.preferences();
  if (replace > 0) {
    std::mt19937_64 rng(seed);
    std::vector<int> all(n_count);
    std::iota(all.begin(), all.end(), 0);
    std::vector<int> chosen;
    chosen.reserve(replace);
    std::sample(all.begin(), all.end(), std::back_inserter(chosen), replace, rng);

    std::vector<int> universe(ds.num_items());
    std::iota(universe.begin(), universe.end(), 0);
    for (int idx : chosen) {
      std::vector<int> items = prefs[idx].items();
      if (mode == NoiseMode::kFreshSubset) {
        const std::size_t k = items.size();
        items.clear();
        std::sample(universe.begin(), universe.end(), std::back_inserter(items), k,
                    rng);
      }
      std::shuffle(items.begin(), items.end(), rng);
      prefs[idx] = Preference(std::move(items));
    }
  }
  return PreferenceDataset(std::move(prefs), ds.item_ids());
}

}  // namespace coarsenrank
