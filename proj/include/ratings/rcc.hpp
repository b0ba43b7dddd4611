#pragma once

#include <vector>

#include "ratings/rng.hpp"
#include "ratings/types.hpp"

namespace ratings {

// Rating with counter-category refinement.  Alongside a scalar Elo rating the
// model keeps an M x M antisymmetric counter table and, per player, a soft
// assignment over the M categories that is refined after every match.
struct RccConfig {
  int categories = 81;
  double rating_rate = 0.1;
  double table_rate = 0.00025;
  double dist_rate = 0.01;
  double initial_rating = 1000.0;

  void validate() const;
};

// Category assignments are kept as logits per player; the distribution a
// player samples from is the softmax of their logit row.  Refinement nudges
// the logits along the cross-entropy gradient toward the best-fitting
// category, so the rows sharpen over time instead of snapping to one-hot.
struct RccState {
  RccConfig config;
  RatingTable ratings;              // one per player
  Grid counter_table;               // M x M, antisymmetric, zero diagonal
  Grid expected_residuals;          // N x M, per player vs opponent category
  Grid category_logits;             // N x M, softmax gives the distribution

  int player_count() const { return static_cast<int>(ratings.size()); }
};

RccState init_rcc_state(int player_count, const RccConfig& config);

// Softmax of a player's logit row: the categorical distribution the player's
// counter category is sampled from.
std::vector<double> category_distribution(const RccState& state,
                                          PlayerId player);

// Maps a match outcome for player i to the residual scale used by the counter
// table: win -> 1 - p, tie -> 0.5 - p, loss -> -p where p is the pre-update
// expected score for i.
double residual_win_value(double outcome, double expected);

// Draws a category index from a player's current distribution row.
int sample_category(const RccState& state, PlayerId player, Rng& rng);

// Returns the argmax of a player's distribution row, lowest index on ties.
int best_category(const RccState& state, PlayerId player);

struct RccMatchInfo {
  double expected = 0.0;
  double residual = 0.0;
  int sampled_i = -1;
  int sampled_j = -1;
  int refined_i = -1;
  int refined_j = -1;
};

// One online step: Elo update, category sampling, counter-table and
// expected-residual updates, then refinement of both players' distributions.
RccMatchInfo process_match(RccState& state, const MatchRecord& match, Rng& rng);

// Elo expectation shifted by the counter-table entry for the two players'
// best categories, clamped to [0, 1].
double predict_win_prob(const RccState& state, PlayerId i, PlayerId j);

}  // namespace ratings
