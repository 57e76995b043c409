#pragma once

#include <random>

#include "coarsenrank/types.hpp"

namespace coarsenrank {

// Log-probability of an ordered preference under per-item scores:
// log prod_i theta[rho_i] / (theta[rho_i] + ... + theta[rho_k]), i = 1..k-1.
// Suffix sums run in one backward pass. Throws std::domain_error if any item
// in the preference has zero score.
double pl_log_probability(const Preference& pref, const ItemScores& theta);

// Sum of pl_log_probability over the dataset, accumulated sequentially in
// dataset order.
double dataset_log_likelihood(const PreferenceDataset& ds, const ItemScores& theta);

// Draws an ordered preference of length k from the given item subset by
// sequential sampling without replacement, proportional to scores.
Preference sample_preference(const ItemScores& theta, const std::vector<int>& subset,
                             int k, std::mt19937_64& rng);

// Items sorted by score, descending; ties broken by smaller index first.
Ranking scores_to_ranking(const ItemScores& theta);

// Fraction of unordered item pairs on which the two rankings agree, in [0, 1].
double kendall_tau(const Ranking& a, const Ranking& b);

}  // namespace coarsenrank
