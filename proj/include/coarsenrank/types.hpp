#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace coarsenrank {

// An ordered preference over a subset of items, most preferred first.
// Holds at least two distinct item indices.
class Preference {
 public:
  explicit Preference(std::vector<int> items);

  int length() const { return static_cast<int>(items_.size()); }
  int item(int pos) const { return items_[pos]; }
  const std::vector<int>& items() const { return items_; }

  bool operator==(const Preference& other) const { return items_ == other.items_; }

 private:
  std::vector<int> items_;
};

// Immutable collection of preferences over a fixed item universe.
// Item ids are unique; every preference refers to indices < num_items().
class PreferenceDataset {
 public:
  PreferenceDataset(std::vector<Preference> preferences,
                    std::vector<std::string> item_ids);

  int num_items() const { return static_cast<int>(item_ids_.size()); }
  int num_preferences() const { return static_cast<int>(preferences_.size()); }
  const Preference& preference(int n) const { return preferences_[n]; }
  const std::vector<Preference>& preferences() const { return preferences_; }
  const std::string& item_id(int m) const { return item_ids_[m]; }
  const std::vector<std::string>& item_ids() const { return item_ids_; }

  // -1 if unknown.
  int index_of(std::string_view id) const;

 private:
  std::vector<Preference> preferences_;
  std::vector<std::string> item_ids_;
  std::unordered_map<std::string, int> index_by_id_;
};

// Nonnegative per-item scores with at least one positive component.
class ItemScores {
 public:
  explicit ItemScores(std::vector<double> values);

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int m) const { return values_[m]; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

// A total order over all items: a permutation of 0..M-1, best first.
class Ranking {
 public:
  explicit Ranking(std::vector<int> order);

  int size() const { return static_cast<int>(order_.size()); }
  int at(int pos) const { return order_[pos]; }
  const std::vector<int>& order() const { return order_; }

  bool operator==(const Ranking& other) const { return order_ == other.order_; }

 private:
  std::vector<int> order_;
};

}  // namespace coarsenrank
