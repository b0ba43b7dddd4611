#include "ratings/elo.hpp"

#include <cmath>
#include <stdexcept>

namespace ratings {

double bt_win_prob(double gamma_i, double gamma_j) {
  if (!(gamma_i > 0.0) || !(gamma_j > 0.0))
    throw std::invalid_argument("bt_win_prob: strengths must be positive");
  return gamma_i / (gamma_i + gamma_j);
}

double expected_score(double r_i, double r_j) {
  if (!std::isfinite(r_i) || !std::isfinite(r_j))
    throw std::invalid_argument("expected_score: ratings must be finite");
  return 1.0 / (1.0 + std::pow(10.0, (r_j - r_i) / 400.0));
}

EloUpdateInfo apply_elo_update(RatingTable& ratings, const MatchRecord& match,
                               double k_factor) {
  if (!(k_factor > 0.0))
    throw std::invalid_argument("elo_update: k_factor must be positive");
  if (!is_valid_outcome(match.outcome))
    throw std::invalid_argument("elo_update: outcome must be 0, 0.5 or 1");
  const int n = static_cast<int>(ratings.size());
  check_player(match.i, n, "elo_update");
  check_player(match.j, n, "elo_update");

  EloUpdateInfo info;
  info.expected = expected_score(ratings[match.i], ratings[match.j]);
  info.residual = match.outcome - info.expected;
  const double delta = k_factor * info.residual;
  ratings[match.i] += delta;
  ratings[match.j] -= delta;
  return info;
}

RatingTable elo_update(const RatingTable& ratings, const MatchRecord& match,
                       double k_factor, EloUpdateInfo* info) {
  RatingTable updated = ratings;
  EloUpdateInfo result = apply_elo_update(updated, match, k_factor);
  if (info != nullptr) *info = result;
  return updated;
}

}  // namespace ratings
