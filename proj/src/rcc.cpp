#include "ratings/rcc.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "ratings/elo.hpp"

namespace ratings {

void RccConfig::validate() const {
  if (categories < 1)
    throw std::invalid_argument("rcc: categories must be at least 1");
  if (!(rating_rate > 0.0))
    throw std::invalid_argument("rcc: rating_rate must be positive");
  if (!(table_rate > 0.0) || table_rate > 1.0)
    throw std::invalid_argument("rcc: table_rate must be in (0, 1]");
  if (!(dist_rate > 0.0) || dist_rate > 1.0)
    throw std::invalid_argument("rcc: dist_rate must be in (0, 1]");
  if (!std::isfinite(initial_rating))
    throw std::invalid_argument("rcc: initial_rating must be finite");
}

RccState init_rcc_state(int player_count, const RccConfig& config) {
  config.validate();
  if (player_count < 1)
    throw std::invalid_argument("rcc: player_count must be at least 1");
  RccState state;
  state.config = config;
  state.ratings.assign(player_count, config.initial_rating);
  const int m = config.categories;
  state.counter_table = Grid(m, m, 0.0);
  state.expected_residuals = Grid(player_count, m, 0.0);
  state.category_logits = Grid(player_count, m, 0.0);
  return state;
}

double residual_win_value(double outcome, double expected) {
  return outcome - expected;
}

namespace {

void softmax_into(const double* logits, int m, double* probs) {
  double peak = logits[0];
  for (int c = 1; c < m; ++c)
    if (logits[c] > peak) peak = logits[c];
  double sum = 0.0;
  for (int c = 0; c < m; ++c) {
    probs[c] = std::exp(logits[c] - peak);
    sum += probs[c];
  }
  for (int c = 0; c < m; ++c) probs[c] /= sum;
}

int sample_from(const double* probs, int m, Rng& rng) {
  const double u = rng.next_unit();
  double cum = 0.0;
  int last_positive = 0;
  for (int c = 0; c < m; ++c) {
    if (probs[c] > 0.0) last_positive = c;
    cum += probs[c];
    if (u < cum && probs[c] > 0.0) return c;
  }
  return last_positive;
}

}  // namespace

std::vector<double> category_distribution(const RccState& state,
                                          PlayerId player) {
  check_player(player, state.player_count(), "category_distribution");
  const int m = state.config.categories;
  std::vector<double> probs(m);
  softmax_into(state.category_logits.row(player), m, probs.data());
  return probs;
}

int sample_category(const RccState& state, PlayerId player, Rng& rng) {
  check_player(player, state.player_count(), "sample_category");
  const std::vector<double> probs = category_distribution(state, player);
  return sample_from(probs.data(), state.config.categories, rng);
}

int best_category(const RccState& state, PlayerId player) {
  check_player(player, state.player_count(), "best_category");
  const double* row = state.category_logits.row(player);
  const int m = state.config.categories;
  int best = 0;
  for (int c = 1; c < m; ++c)
    if (row[c] > row[best]) best = c;
  return best;
}

namespace {

// L1 distance between two rows of length m, split across four accumulators so
// the compiler can vectorise it.
double row_l1_distance(const double* a, const double* b, int m) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  int c = 0;
  for (; c + 4 <= m; c += 4) {
    s0 += std::fabs(a[c] - b[c]);
    s1 += std::fabs(a[c + 1] - b[c + 1]);
    s2 += std::fabs(a[c + 2] - b[c + 2]);
    s3 += std::fabs(a[c + 3] - b[c + 3]);
  }
  for (; c < m; ++c) s0 += std::fabs(a[c] - b[c]);
  return (s0 + s1) + (s2 + s3);
}

// Category whose counter-table row is closest (L1) to the player's learned
// expected-residual row; lowest index wins ties.
int best_fit_category(const RccState& state, PlayerId player) {
  const int m = state.config.categories;
  const double* expected = state.expected_residuals.row(player);
  int best = 0;
  double best_dist = row_l1_distance(state.counter_table.row(0), expected, m);
  for (int c = 1; c < m; ++c) {
    const double d = row_l1_distance(state.counter_table.row(c), expected, m);
    if (d < best_dist) {
      best_dist = d;
      best = c;
    }
  }
  return best;
}

// Cross-entropy gradient step: sharpens the softmax toward `target` while
// leaving the logit row sum unchanged.
void pull_distribution(RccState& state, PlayerId player, int target,
                       const double* probs) {
  double* row = state.category_logits.row(player);
  const int m = state.config.categories;
  const double rate = state.config.dist_rate;
  for (int c = 0; c < m; ++c) {
    const double goal = (c == target) ? 1.0 : 0.0;
    row[c] += rate * (goal - probs[c]);
  }
}

}  // namespace

RccMatchInfo process_match(RccState& state, const MatchRecord& match,
                           Rng& rng) {
  const int n = state.player_count();
  check_player(match.i, n, "process_match");
  check_player(match.j, n, "process_match");
  if (!is_valid_outcome(match.outcome))
    throw std::invalid_argument("process_match: outcome must be 0, 0.5 or 1");

  RccMatchInfo info;

  const EloUpdateInfo elo =
      apply_elo_update(state.ratings, match, state.config.rating_rate);
  info.expected = elo.expected;
  info.residual = residual_win_value(match.outcome, elo.expected);

  const int m = state.config.categories;
  std::vector<double> probs_i(m);
  std::vector<double> probs_j(m);
  softmax_into(state.category_logits.row(match.i), m, probs_i.data());
  softmax_into(state.category_logits.row(match.j), m, probs_j.data());
  info.sampled_i = sample_from(probs_i.data(), m, rng);
  info.sampled_j = sample_from(probs_j.data(), m, rng);

  const double table_rate = state.config.table_rate;
  if (info.sampled_i != info.sampled_j) {
    double& cell = state.counter_table.at(info.sampled_i, info.sampled_j);
    cell += table_rate * (info.residual - cell);
    state.counter_table.at(info.sampled_j, info.sampled_i) = -cell;
  }

  double& e_i = state.expected_residuals.at(match.i, info.sampled_j);
  e_i += table_rate * (info.residual - e_i);
  double& e_j = state.expected_residuals.at(match.j, info.sampled_i);
  e_j += table_rate * (-info.residual - e_j);

  info.refined_i = best_fit_category(state, match.i);
  info.refined_j = best_fit_category(state, match.j);
  pull_distribution(state, match.i, info.refined_i, probs_i.data());
  if (match.j == match.i)
    softmax_into(state.category_logits.row(match.j), m, probs_j.data());
  pull_distribution(state, match.j, info.refined_j, probs_j.data());

  return info;
}

double predict_win_prob(const RccState& state, PlayerId i, PlayerId j) {
  const int n = state.player_count();
  check_player(i, n, "predict_win_prob");
  check_player(j, n, "predict_win_prob");
  const double base = expected_score(state.ratings[i], state.ratings[j]);
  const double adjust = state.counter_table.at(best_category(state, i),
                                               best_category(state, j));
  const double p = base + adjust;
  if (p < 0.0) return 0.0;
  if (p > 1.0) return 1.0;
  return p;
}

}  // namespace ratings
