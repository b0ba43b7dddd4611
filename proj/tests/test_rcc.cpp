#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ratings/datasets.hpp"
#include "ratings/elo.hpp"
#include "ratings/evaluation.hpp"
#include "ratings/rcc.hpp"
#include "ratings/rng.hpp"

using namespace ratings;

namespace {

void check_invariants(const RccState& state) {
  const int m = state.config.categories;
  for (int a = 0; a < m; ++a) {
    REQUIRE(state.counter_table.at(a, a) == 0.0);
    for (int b = 0; b < m; ++b) {
      REQUIRE(std::fabs(state.counter_table.at(a, b) +
                        state.counter_table.at(b, a)) <= 1e-12);
      REQUIRE(state.counter_table.at(a, b) >= -1.0);
      REQUIRE(state.counter_table.at(a, b) <= 1.0);
    }
  }
  for (int p = 0; p < state.player_count(); ++p) {
    const std::vector<double> probs = category_distribution(state, p);
    double sum = 0.0;
    for (int c = 0; c < m; ++c) {
      REQUIRE(probs[c] >= 0.0);
      sum += probs[c];
      REQUIRE(state.expected_residuals.at(p, c) >= -1.0);
      REQUIRE(state.expected_residuals.at(p, c) <= 1.0);
    }
    REQUIRE(std::fabs(sum - 1.0) <= 1e-9);
  }
}

}  // namespace

TEST_CASE("init_rcc_state starts uniform and zeroed") {
  RccConfig config;
  config.categories = 3;
  const RccState state = init_rcc_state(3, config);
  for (int p = 0; p < 3; ++p) {
    const std::vector<double> probs = category_distribution(state, p);
    for (int c = 0; c < 3; ++c) {
      CHECK(state.category_logits.at(p, c) == 0.0);
      CHECK(probs[c] == 1.0 / 3.0);
    }
  }

  RccConfig wide;
  wide.categories = 81;
  const RccState wide_state = init_rcc_state(2, wide);
  for (int a = 0; a < 81; ++a)
    for (int b = 0; b < 81; ++b)
      REQUIRE(wide_state.counter_table.at(a, b) == 0.0);

  RccConfig nine;
  nine.categories = 9;
  const RccState nine_state = init_rcc_state(5, nine);
  for (int p = 0; p < 5; ++p) CHECK(nine_state.ratings[p] == 1000.0);
  for (int p = 0; p < 5; ++p)
    for (int c = 0; c < 9; ++c)
      CHECK(nine_state.expected_residuals.at(p, c) == 0.0);
}

TEST_CASE("init_rcc_state rejects degenerate sizes") {
  RccConfig config;
  config.categories = 0;
  CHECK_THROWS_AS(init_rcc_state(3, config), std::invalid_argument);
  config.categories = 3;
  CHECK_THROWS_AS(init_rcc_state(0, config), std::invalid_argument);
  config.dist_rate = 1.5;
  CHECK_THROWS_AS(init_rcc_state(3, config), std::invalid_argument);
}

TEST_CASE("residual_win_value is outcome minus expectation") {
  CHECK(residual_win_value(1.0, 0.5) == 0.5);
  CHECK(residual_win_value(0.5, 0.5) == 0.0);
  CHECK(residual_win_value(0.0, 10.0 / 11.0) ==
        doctest::Approx(-10.0 / 11.0).epsilon(1e-12));
}

TEST_CASE("sample_category follows the distribution row") {
  RccConfig config;
  config.categories = 3;
  RccState state = init_rcc_state(1, config);

  SUBCASE("uniform row") {
    Rng rng(17);
    std::vector<int> hits(3, 0);
    const int draws = 100000;
    for (int k = 0; k < draws; ++k) ++hits[sample_category(state, 0, rng)];
    for (int c = 0; c < 3; ++c)
      CHECK(static_cast<double>(hits[c]) / draws ==
            doctest::Approx(1.0 / 3.0).epsilon(0.03));
  }

  SUBCASE("effectively one-hot row") {
    // exp(-1000) underflows to zero, so the softmax is exactly one-hot.
    state.category_logits.at(0, 2) = 1000.0;
    const std::vector<double> probs = category_distribution(state, 0);
    CHECK(probs[0] == 0.0);
    CHECK(probs[1] == 0.0);
    CHECK(probs[2] == 1.0);
    Rng rng(17);
    for (int k = 0; k < 1000; ++k) CHECK(sample_category(state, 0, rng) == 2);
  }

  SUBCASE("deterministic given the stream position") {
    Rng a(23);
    Rng b(23);
    for (int k = 0; k < 1000; ++k)
      CHECK(sample_category(state, 0, a) == sample_category(state, 0, b));
  }

  SUBCASE("unknown player") {
    Rng rng(1);
    CHECK_THROWS_AS(sample_category(state, 9, rng), std::out_of_range);
  }
}

TEST_CASE("best_category is the argmax with low tie-break") {
  RccConfig config;
  config.categories = 3;
  RccState state = init_rcc_state(1, config);
  CHECK(best_category(state, 0) == 0);
  state.category_logits.at(0, 0) = 0.1;
  state.category_logits.at(0, 1) = 0.7;
  state.category_logits.at(0, 2) = 0.2;
  CHECK(best_category(state, 0) == 1);
  // Softmax is monotone, so the argmax matches the distribution's argmax.
  const std::vector<double> probs = category_distribution(state, 0);
  CHECK(probs[1] > probs[0]);
  CHECK(probs[1] > probs[2]);
}

TEST_CASE("an even tie between equals only nudges the distributions") {
  RccConfig config;
  config.categories = 3;
  RccState state = init_rcc_state(2, config);
  Rng rng(31);
  const RccMatchInfo info = process_match(state, {0, 1, 0.5}, rng);

  CHECK(info.expected == 0.5);
  CHECK(info.residual == 0.0);
  CHECK(state.ratings[0] == 1000.0);
  CHECK(state.ratings[1] == 1000.0);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(state.counter_table.at(a, b) == 0.0);
  for (int p = 0; p < 2; ++p)
    for (int c = 0; c < 3; ++c)
      CHECK(state.expected_residuals.at(p, c) == 0.0);

  CHECK(info.refined_i == 0);
  CHECK(info.refined_j == 0);
  const double toward = 0.01 * (1.0 - 1.0 / 3.0);
  const double away = 0.01 * (0.0 - 1.0 / 3.0);
  for (int p = 0; p < 2; ++p) {
    CHECK(state.category_logits.at(p, 0) == toward);
    CHECK(state.category_logits.at(p, 1) == away);
    CHECK(state.category_logits.at(p, 2) == away);

    // The gradient step preserves the logit row sum and tilts the softmax
    // toward the refined category.
    const double row_sum = state.category_logits.at(p, 0) +
                           state.category_logits.at(p, 1) +
                           state.category_logits.at(p, 2);
    CHECK(std::fabs(row_sum) <= 1e-12);
    const std::vector<double> probs = category_distribution(state, p);
    CHECK(probs[0] > 1.0 / 3.0);
    CHECK(probs[1] == probs[2]);
    CHECK(probs[1] < 1.0 / 3.0);
  }
}

TEST_CASE("a decisive first match writes the hand-computed cells") {
  RccConfig config;
  config.categories = 3;

  // Fresh uniform rows can sample the same category for both players; pick
  // the first seed where they differ so the table update is exercised.
  bool found = false;
  for (std::uint64_t seed = 1; seed <= 50 && !found; ++seed) {
    RccState state = init_rcc_state(2, config);
    Rng rng(seed);
    const RccMatchInfo info = process_match(state, {0, 1, 1.0}, rng);
    if (info.sampled_i == info.sampled_j) continue;
    found = true;

    CHECK(info.expected == 0.5);
    CHECK(info.residual == 0.5);
    CHECK(state.ratings[0] == 1000.05);
    CHECK(state.ratings[1] == 999.95);

    const int a = info.sampled_i;
    const int b = info.sampled_j;
    CHECK(state.counter_table.at(a, b) == 0.000125);
    CHECK(state.counter_table.at(b, a) == -0.000125);
    CHECK(state.expected_residuals.at(0, b) == 0.000125);
    CHECK(state.expected_residuals.at(1, a) == -0.000125);
  }
  REQUIRE(found);
}

TEST_CASE("same-category samples leave the diagonal at zero") {
  RccConfig config;
  config.categories = 3;
  bool found = false;
  for (std::uint64_t seed = 1; seed <= 50 && !found; ++seed) {
    RccState state = init_rcc_state(2, config);
    Rng rng(seed);
    const RccMatchInfo info = process_match(state, {0, 1, 1.0}, rng);
    if (info.sampled_i != info.sampled_j) continue;
    found = true;
    const int c = info.sampled_i;
    CHECK(state.counter_table.at(c, c) == 0.0);
    CHECK(state.expected_residuals.at(0, c) == 0.000125);
    CHECK(state.expected_residuals.at(1, c) == -0.000125);
  }
  REQUIRE(found);
}

TEST_CASE("process_match preserves every state invariant") {
  RccConfig config;
  config.categories = 5;
  RccState state = init_rcc_state(4, config);
  Rng match_rng(71);
  Rng rng(72);
  const double outcomes[] = {0.0, 0.5, 1.0};
  for (int k = 0; k < 20000; ++k) {
    const MatchRecord match{static_cast<int>(match_rng.next_below(4)),
                            static_cast<int>(match_rng.next_below(4)),
                            outcomes[match_rng.next_below(3)]};
    const double before =
        std::accumulate(state.ratings.begin(), state.ratings.end(), 0.0);
    process_match(state, match, rng);
    const double after =
        std::accumulate(state.ratings.begin(), state.ratings.end(), 0.0);
    REQUIRE(std::fabs(after - before) <= 1e-9);
    if (k % 100 == 0 || k > 19900) check_invariants(state);
  }
  check_invariants(state);

  // The gradient refinement never changes a logit row's sum, so rows keep
  // the zero sum they start with.
  for (int p = 0; p < 4; ++p) {
    double sum = 0.0;
    for (int c = 0; c < 5; ++c) sum += state.category_logits.at(p, c);
    CHECK(std::fabs(sum) <= 1e-9);
  }
}

TEST_CASE("training is deterministic in the seed") {
  const Dataset dataset = gen_rps(5000, 9);
  RccConfig config;
  config.categories = 9;

  const auto train = [&]() {
    RccState state = init_rcc_state(dataset.player_count(), config);
    Rng rng(404);
    for (const MatchRecord& match : dataset.matches)
      process_match(state, match, rng);
    return state;
  };

  const RccState first = train();
  const RccState second = train();
  CHECK(first.ratings == second.ratings);
  CHECK(first.counter_table.cells() == second.counter_table.cells());
  CHECK(first.expected_residuals.cells() ==
        second.expected_residuals.cells());
  CHECK(first.category_logits.cells() == second.category_logits.cells());
}

TEST_CASE("with one category the predictor reduces to plain Elo") {
  RccConfig config;
  config.categories = 1;
  config.rating_rate = 0.1;
  RccState state = init_rcc_state(4, config);
  RatingTable elo(4, 1000.0);

  Rng match_rng(55);
  Rng rng(56);
  const double outcomes[] = {0.0, 0.5, 1.0};
  for (int k = 0; k < 2000; ++k) {
    const MatchRecord match{static_cast<int>(match_rng.next_below(4)),
                            static_cast<int>(match_rng.next_below(4)),
                            outcomes[match_rng.next_below(3)]};
    process_match(state, match, rng);
    apply_elo_update(elo, match, 0.1);
  }
  CHECK(state.ratings == elo);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(predict_win_prob(state, i, j) == expected_score(elo[i], elo[j]));
}

TEST_CASE("predict_win_prob combines rating and counter terms") {
  RccConfig config;
  config.categories = 3;
  RccState state = init_rcc_state(2, config);

  CHECK(predict_win_prob(state, 0, 1) == 0.5);

  state.category_logits.at(0, 0) = 0.9;
  state.category_logits.at(1, 1) = 0.9;
  state.counter_table.at(0, 1) = 0.5;
  state.counter_table.at(1, 0) = -0.5;
  CHECK(predict_win_prob(state, 0, 1) == 1.0);
  CHECK(predict_win_prob(state, 1, 0) == 0.0);

  state.counter_table.at(0, 1) = 0.7;
  state.counter_table.at(1, 0) = -0.7;
  CHECK(predict_win_prob(state, 0, 1) == 1.0);
  CHECK(predict_win_prob(state, 1, 0) == 0.0);
}

TEST_CASE("predictions are antisymmetric when nothing clamps") {
  RccConfig config;
  config.categories = 4;
  RccState state = init_rcc_state(6, config);
  Rng rng(81);
  for (int p = 0; p < 6; ++p)
    state.ratings[p] = rng.next_range(950.0, 1050.0);
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      const double v = rng.next_range(-0.4, 0.4);
      state.counter_table.at(a, b) = v;
      state.counter_table.at(b, a) = -v;
    }
  for (int p = 0; p < 6; ++p)
    for (int c = 0; c < 4; ++c)
      state.category_logits.at(p, c) = rng.next_range(-2.0, 2.0);

  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      if (i == j) continue;
      const double raw_ij =
          expected_score(state.ratings[i], state.ratings[j]) +
          state.counter_table.at(best_category(state, i),
                                 best_category(state, j));
      const double raw_ji =
          expected_score(state.ratings[j], state.ratings[i]) +
          state.counter_table.at(best_category(state, j),
                                 best_category(state, i));
      if (raw_ij < 0.0 || raw_ij > 1.0 || raw_ji < 0.0 || raw_ji > 1.0)
        continue;
      CHECK(predict_win_prob(state, i, j) + predict_win_prob(state, j, i) ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("rcc learns the rock-paper-scissors cycle") {
  const Dataset dataset = gen_rps(30000, 2024);
  RccConfig config;
  config.categories = 3;
  RccState state = init_rcc_state(dataset.player_count(), config);
  Rng rng(7);

  std::vector<int> order(dataset.matches.size());
  std::iota(order.begin(), order.end(), 0);
  for (int epoch = 0; epoch < 30; ++epoch) {
    Rng shuffle_rng(derive_seed(1000, {static_cast<std::uint64_t>(epoch)}));
    shuffle_rng.shuffle(order);
    for (int idx : order) process_match(state, dataset.matches[idx], rng);
  }

  const RelationMatrix truth = ground_truth_relations(dataset.matches, 3);
  const RelationMatrix predicted = predicted_relations(
      [&](PlayerId i, PlayerId j) { return predict_win_prob(state, i, j); },
      3);
  CHECK(relation_accuracy(truth, predicted) == 100.0);

  // The three strategies must occupy three distinct categories.
  const int c_rock = best_category(state, 0);
  const int c_paper = best_category(state, 1);
  const int c_scissors = best_category(state, 2);
  CHECK(c_rock != c_paper);
  CHECK(c_paper != c_scissors);
  CHECK(c_scissors != c_rock);
}

TEST_CASE("process_match validates its inputs") {
  RccConfig config;
  config.categories = 3;
  RccState state = init_rcc_state(2, config);
  Rng rng(1);
  CHECK_THROWS_AS(process_match(state, {0, 5, 1.0}, rng), std::out_of_range);
  CHECK_THROWS_AS(process_match(state, {0, 1, 0.3}, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(predict_win_prob(state, 0, 7), std::out_of_range);
}
