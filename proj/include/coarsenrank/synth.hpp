#pragma once

#include <cstdint>
#include <optional>

#include "coarsenrank/types.hpp"

namespace coarsenrank {

// How a noise-injected preference is rebuilt.
// kShuffleWithinSubset: keep the item subset, randomize the order uniformly.
// kFreshSubset: draw a fresh uniform subset of the same size, uniform order.
enum class NoiseMode { kShuffleWithinSubset, kFreshSubset };

struct SynthSpec {
  int num_items = 0;
  int num_preferences = 0;
  int min_length = 2;
  int max_length = 2;
  // Ground-truth scores; drawn per item from Gamma(2, 1) when absent.
  std::optional<ItemScores> theta_truth{};
  double noise_fraction = 0.0;
  std::uint64_t seed = 0;
  NoiseMode noise_mode = NoiseMode::kShuffleWithinSubset;
};

struct SynthResult {
  PreferenceDataset dataset;
  Ranking ground_truth;
  ItemScores theta_truth;
};

SynthResult generate(const SynthSpec& spec);

// Replaces round(fraction * N) distinct preferences, chosen uniformly without
// replacement, by randomized ones per the mode. fraction = 0 returns an
// identical dataset.
PreferenceDataset inject_noise(const PreferenceDataset& ds, double fraction,
                               std::uint64_t seed,
                               NoiseMode mode = NoiseMode::kShuffleWithinSubset);

}  // namespace coarsenrank
