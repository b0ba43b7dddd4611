#pragma once

#include "ratings/types.hpp"

namespace ratings {

// Bradley-Terry win probability for positive strengths: g_i / (g_i + g_j).
double bt_win_prob(double gamma_i, double gamma_j);

// Win expectation on the Elo scale: 1 / (1 + 10^((r_j - r_i) / 400)).
double expected_score(double r_i, double r_j);

struct EloUpdateInfo {
  double expected = 0.0;  // pre-update expectation for the first player
  double residual = 0.0;  // outcome minus expectation
};

// Applies one match to the table in place. The two rating deltas are equal
// and opposite, so the total rating mass is conserved.
EloUpdateInfo apply_elo_update(RatingTable& ratings, const MatchRecord& match,
                               double k_factor);

// Value-returning form of the same update.
RatingTable elo_update(const RatingTable& ratings, const MatchRecord& match,
                       double k_factor, EloUpdateInfo* info = nullptr);

}  // namespace ratings
