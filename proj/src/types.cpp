#include "coarsenrank/types.hpp"

#include <algorithm>
#include <stdexcept>

namespace coarsenrank {

Preference::Preference(std::vector<int> items) : items_(std::move(items)) {
  if (items_.size() < 2)
    throw std::invalid_argument("Preference: need at least two items");
  for (int idx : items_)
    if (idx < 0) throw std::invalid_argument("Preference: negative item index");
  std::vector<int> sorted = items_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("Preference: duplicate item index");
}

PreferenceDataset::PreferenceDataset(std::vector<Preference> preferences,
                                     std::vector<std::string> item_ids)
    : preferences_(std::move(preferences)), item_ids_(std::move(item_ids)) {
  if (item_ids_.empty())
    throw std::invalid_argument("PreferenceDataset: empty item universe");
  index_by_id_.reserve(item_ids_.size());
  for (int m = 0; m < static_cast<int>(item_ids_.size()); ++m) {
    auto [it, inserted] = index_by_id_.emplace(item_ids_[m], m);
    (void)it;
    if (!inserted)
      throw std::invalid_argument("PreferenceDataset: duplicate item id '" +
                                  item_ids_[m] + "'");
  }
  const int m_count = num_items();
  for (const Preference& p : preferences_)
    for (int idx : p.items())
      if (idx >= m_count)
        throw std::invalid_argument(
            "PreferenceDataset: preference refers to unknown item index " +
            std::to_string(idx));
}

int PreferenceDataset::index_of(std::string_view id) const {
  auto it = index_by_id_.find(std::string(id));
  return it == index_by_id_.end() ? -1 : it->second;
}

ItemScores::ItemScores(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("ItemScores: empty");
  bool any_positive = false;
  for (double v : values_) {
    if (!(v >= 0.0))
      throw std::invalid_argument("ItemScores: components must be >= 0");
    if (v > 0.0) any_positive = true;
  }
  if (!any_positive)
    throw std::invalid_argument("ItemScores: all components are zero");
}

Ranking::Ranking(std::vector<int> order) : order_(std::move(order)) {
  if (order_.empty()) throw std::invalid_argument("Ranking: empty");
  std::vector<char> seen(order_.size(), 0);
  for (int idx : order_) {
    if (idx < 0 || idx >= static_cast<int>(order_.size()))
      throw std::invalid_argument("Ranking: index out of range");
    if (seen[idx]) throw std::invalid_argument("Ranking: not a permutation");
    seen[idx] = 1;
  }
}

}  // namespace coarsenrank
