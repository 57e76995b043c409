#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "coarsenrank/em.hpp"
#include "coarsenrank/ranking.hpp"
#include "coarsenrank/synth.hpp"
#include "doctest.h"

using namespace coarsenrank;

namespace {

bool same_preferences(const PreferenceDataset& a, const PreferenceDataset& b) {
  if (a.num_preferences() != b.num_preferences()) return false;
  for (int n = 0; n < a.num_preferences(); ++n)
    if (!(a.preference(n) == b.preference(n))) return false;
  return true;
}

int count_differing(const PreferenceDataset& a, const PreferenceDataset& b) {
  int diff = 0;
  for (int n = 0; n < a.num_preferences(); ++n)
    if (!(a.preference(n) == b.preference(n))) ++diff;
  return diff;
}

}  // namespace

TEST_CASE("generate shape and determinism") {
  SynthSpec spec;
  spec.num_items = 7;
  spec.num_preferences = 40;
  spec.min_length = 2;
  spec.max_length = 5;
  spec.seed = 3;
  const SynthResult a = generate(spec);
  const SynthResult b = generate(spec);

  CHECK(a.dataset.num_items() == 7);
  CHECK(a.dataset.num_preferences() == 40);
  CHECK(int(a.ground_truth.size()) == 7);
  CHECK(a.theta_truth.size() == 7);
  for (int n = 0; n < 40; ++n) {
    const int k = a.dataset.preference(n).length();
    CHECK(k >= 2);
    CHECK(k <= 5);
  }
  CHECK(same_preferences(a.dataset, b.dataset));
  CHECK(a.theta_truth.values() == b.theta_truth.values());
  CHECK(a.ground_truth == b.ground_truth);
  CHECK(a.ground_truth == scores_to_ranking(a.theta_truth));
  for (int m = 0; m < 7; ++m) CHECK(a.dataset.item_id(m) == std::to_string(m));

  spec.seed = 4;
  const SynthResult c = generate(spec);
  CHECK(!same_preferences(a.dataset, c.dataset));
}

TEST_CASE("generate honors an explicit truth vector") {
  SynthSpec spec;
  spec.num_items = 3;
  spec.num_preferences = 200;
  spec.min_length = 3;
  spec.max_length = 3;
  spec.theta_truth = ItemScores({100.0, 10.0, 1.0});
  spec.seed = 12;
  const SynthResult res = generate(spec);
  CHECK(res.theta_truth.values() == std::vector<double>{100.0, 10.0, 1.0});
  CHECK(res.ground_truth == Ranking({0, 1, 2}));

  // P(0 > 1 > 2) = (100/111)(10/11) under the model.
  int top_order = 0;
  for (int n = 0; n < 200; ++n)
    if (res.dataset.preference(n) == Preference({0, 1, 2})) ++top_order;
  const double expected = (100.0 / 111.0) * (10.0 / 11.0);
  CHECK(std::abs(top_order / 200.0 - expected) <= 0.05);
}

TEST_CASE("generate symmetric pair is balanced") {
  SynthSpec spec;
  spec.num_items = 2;
  spec.num_preferences = 1000;
  spec.theta_truth = ItemScores({1.0, 1.0});
  spec.seed = 99;
  const SynthResult res = generate(spec);
  int first = 0;
  for (int n = 0; n < 1000; ++n)
    if (res.dataset.preference(n).item(0) == 0) ++first;
  CHECK(std::abs(first / 1000.0 - 0.5) <= 0.05);
}

TEST_CASE("noise fraction zero leaves the data untouched") {
  SynthSpec clean;
  clean.num_items = 10;
  clean.num_preferences = 100;
  clean.min_length = 3;
  clean.max_length = 3;
  clean.seed = 8;
  SynthSpec noisy = clean;
  noisy.noise_fraction = 0.0;
  CHECK(same_preferences(generate(clean).dataset, generate(noisy).dataset));
}

TEST_CASE("noise replaces exactly the requested count") {
  // Length-8 shuffles virtually never reproduce the original order, so the
  // number of differing rows equals the number of corrupted rows.
  SynthSpec clean;
  clean.num_items = 20;
  clean.num_preferences = 1000;
  clean.min_length = 8;
  clean.max_length = 8;
  clean.seed = 3;
  SynthSpec noisy = clean;
  noisy.noise_fraction = 0.4;

  const SynthResult a = generate(clean);
  const SynthResult b = generate(noisy);
  CHECK(count_differing(a.dataset, b.dataset) == 400);

  // Shuffle mode keeps each corrupted row's item set.
  for (int n = 0; n < 1000; ++n) {
    std::multiset<int> sa(a.dataset.preference(n).items().begin(),
                          a.dataset.preference(n).items().end());
    std::multiset<int> sb(b.dataset.preference(n).items().begin(),
                          b.dataset.preference(n).items().end());
    CHECK(sa == sb);
  }
}

TEST_CASE("fresh-subset noise keeps lengths but may change items") {
  SynthSpec spec;
  spec.num_items = 12;
  spec.num_preferences = 300;
  spec.min_length = 4;
  spec.max_length = 4;
  spec.seed = 21;
  SynthSpec noisy = spec;
  noisy.noise_fraction = 0.5;
  noisy.noise_mode = NoiseMode::kFreshSubset;

  const SynthResult a = generate(spec);
  const SynthResult b = generate(noisy);
  bool item_set_changed = false;
  for (int n = 0; n < 300; ++n) {
    CHECK(b.dataset.preference(n).length() == 4);
    std::multiset<int> sa(a.dataset.preference(n).items().begin(),
                          a.dataset.preference(n).items().end());
    std::multiset<int> sb(b.dataset.preference(n).items().begin(),
                          b.dataset.preference(n).items().end());
    if (sa != sb) item_set_changed = true;
  }
  CHECK(item_set_changed);
}

TEST_CASE("full corruption drives recovery to chance level") {
  double tau_total = 0.0;
  const int seeds = 10;
  for (int seed = 0; seed < seeds; ++seed) {
    SynthSpec spec;
    spec.num_items = 20;
    spec.num_preferences = 1000;
    spec.min_length = 4;
    spec.max_length = 4;
    spec.noise_fraction = 1.0;
    spec.seed = seed;
    const SynthResult data = generate(spec);

    CoarsenConfig cfg;
    const FitResult fr = fit(data.dataset, cfg);
    tau_total += kendall_tau(scores_to_ranking(ItemScores(fr.theta)),
                             data.ground_truth);
  }
  const double mean_tau = tau_total / seeds;
  CHECK(mean_tau >= 0.4);
  CHECK(mean_tau <= 0.6);
}

TEST_CASE("clean data is recoverable") {
  SynthSpec spec;
  spec.num_items = 20;
  spec.num_preferences = 2000;
  spec.min_length = 5;
  spec.max_length = 5;
  spec.seed = 42;
  const SynthResult data = generate(spec);
  CoarsenConfig cfg;
  const FitResult fr = fit(data.dataset, cfg);
  CHECK(kendall_tau(scores_to_ranking(ItemScores(fr.theta)),
                    data.ground_truth) >= 0.9);
}

TEST_CASE("generate validation") {
  SynthSpec spec;
  spec.num_items = 3;
  spec.num_preferences = 10;

  SynthSpec bad = spec;
  bad.min_length = 1;
  CHECK_THROWS_AS(generate(bad), std::invalid_argument);
  bad = spec;
  bad.max_length = 4;
  CHECK_THROWS_AS(generate(bad), std::invalid_argument);
  bad = spec;
  bad.min_length = 3;
  bad.max_length = 2;
  CHECK_THROWS_AS(generate(bad), std::invalid_argument);
  bad = spec;
  bad.num_preferences = 0;
  CHECK_THROWS_AS(generate(bad), std::invalid_argument);
  bad = spec;
  bad.noise_fraction = 1.5;
  CHECK_THROWS_AS(generate(bad), std::invalid_argument);
  bad = spec;
  bad.noise_fraction = -0.1;
  CHECK_THROWS_AS(generate(bad), std::invalid_argument);
  bad = spec;
  bad.theta_truth = ItemScores({1.0, 2.0});
  CHECK_THROWS_AS(generate(bad), std::invalid_argument);
  bad = spec;
  bad.theta_truth = ItemScores({1.0, 2.0, 0.0});
  CHECK_THROWS_AS(generate(bad), std::invalid_argument);
}
