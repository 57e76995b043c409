#include "coarsenrank/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace coarsenrank {

namespace {

void check_items_scorable(const Preference& pref, const ItemScores& theta) {
  for (int idx : pref.items()) {
    if (idx >= theta.size())
      throw std::invalid_argument("pl_log_probability: item index " +
                                  std::to_string(idx) + " outside score vector");
    if (theta[idx] <= 0.0)
      throw std::domain_error("pl_log_probability: item " + std::to_string(idx) +
                              " has zero score");
  }
}

}  // namespace

double pl_log_probability(const Preference& pref, const ItemScores& theta) {
  check_items_scorable(pref, theta);
  const std::vector<int>& items = pref.items();
  const int k = pref.length();
  double suffix = theta[items[k - 1]];
  double log_p = 0.0;
  for (int i = k - 2; i >= 0; --i) {
    suffix += theta[items[i]];
    log_p += std::log(theta[items[i]]) - std::log(suffix);
  }
  return log_p;
}

double dataset_log_likelihood(const PreferenceDataset& ds, const ItemScores& theta) {
  double total = 0.0;
  for (int n = 0; n < ds.num_preferences(); ++n)
    total += pl_log_probability(ds.preference(n), theta);
  return total;
}

Preference sample_preference(const ItemScores& theta, const std::vector<int>& subset,
                             int k, std::mt19937_64& rng) {
  if (subset.empty())
    throw std::invalid_argument("sample_preference: empty subset");
  if (k < 2)
    throw std::invalid_argument("sample_preference: k must be at least 2");
  if (k > static_cast<int>(subset.size()))
    throw std::invalid_argument("sample_preference: k exceeds subset size");
  std::unordered_set<int> distinct(subset.begin(), subset.end());
  if (distinct.size() != subset.size())
    throw std::invalid_argument("sample_preference: duplicate item in subset");
  for (int idx : subset) {
    if (idx < 0 || idx >= theta.size())
      throw std::invalid_argument("sample_preference: item index " +
                                  std::to_string(idx) + " outside score vector");
    if (theta[idx] <= 0.0)
      throw std::domain_error("sample_preference: item " + std::to_string(idx) +
                              " has zero score");
  }

  std::vector<int> pool = subset;
  std::vector<int> chosen;
  chosen.reserve(k);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int draw = 0; draw < k; ++draw) {
    double total = 0.0;
    for (int idx : pool) total += theta[idx];
    const double u = unit(rng) * total;
    std::size_t pick = pool.size() - 1;
    double cum = 0.0;
    for (std::size_t j = 0; j < pool.size(); ++j) {
      cum += theta[pool[j]];
      if (u < cum) {
        pick = j;
        break;
      }
    }
    chosen.push_back(pool[pick]);
    pool.erase(pool.begin() + pick);
  }
  return Preference(std::move(chosen));
}

Ranking scores_to_ranking(const ItemScores& theta) {
  std::vector<int> order(theta.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&theta](int a, int b) {
    if (theta[a] != theta[b]) return theta[a] > theta[b];
    return a < b;
  });
  return Ranking(std::move(order));
}

double kendall_tau(const Ranking& a, const Ranking& b) {
  const int m = a.size();
  if (m != b.size())
    throw std::invalid_argument("kendall_tau: rankings cover different item sets");
  if (m < 2)
    throw std::invalid_argument("kendall_tau: need at least two items");
  std::vector<int> pos_a(m), pos_b(m);
  for (int r = 0; r < m; ++r) {
    pos_a[a.at(r)] = r;
    pos_b[b.at(r)] = r;
  }
  long long agree = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if ((pos_a[i] < pos_a[j]) == (pos_b[i] < pos_b[j])) ++agree;
  const double pairs = 0.5 * m * (m - 1);
  return static_cast<double>(agree) / pairs;
}

}  // namespace coarsenrank
