#include "ratings/melo.hpp"

#include <cmath>
#include <stdexcept>

namespace ratings {

namespace {

// Slope that makes the logistic curve match the base-10 Elo expectation:
// sigmoid(kLogisticPerPoint * d) == 1 / (1 + 10^(-d / 400)).
constexpr double kLogisticPerPoint = 2.302585092994045684 / 400.0;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

void MEloConfig::validate() const {
  if (!(k_factor > 0.0))
    throw std::invalid_argument("melo: k_factor must be positive");
  if (!(cyc_rate > 0.0))
    throw std::invalid_argument("melo: cyc_rate must be positive");
  if (!std::isfinite(initial_rating))
    throw std::invalid_argument("melo: initial_rating must be finite");
  if (!(init_noise >= 0.0) || !std::isfinite(init_noise))
    throw std::invalid_argument("melo: init_noise must be non-negative");
}

MEloState init_melo_state(int player_count, const MEloConfig& config,
                          Rng& rng) {
  config.validate();
  if (player_count < 1)
    throw std::invalid_argument("melo: player_count must be at least 1");
  MEloState state;
  state.config = config;
  state.ratings.assign(player_count, config.initial_rating);
  state.cyc = Grid(player_count, 2, 0.0);
  for (int p = 0; p < player_count; ++p)
    for (int d = 0; d < 2; ++d)
      state.cyc.at(p, d) =
          rng.next_range(-config.init_noise, config.init_noise);
  return state;
}

double melo_predict(const MEloState& state, PlayerId i, PlayerId j) {
  const int n = state.player_count();
  check_player(i, n, "melo_predict");
  check_player(j, n, "melo_predict");
  const double gap = kLogisticPerPoint * (state.ratings[i] - state.ratings[j]);
  const double pairing = state.cyc.at(i, 0) * state.cyc.at(j, 1) -
                         state.cyc.at(i, 1) * state.cyc.at(j, 0);
  return sigmoid(gap + pairing);
}

double apply_melo_update(MEloState& state, const MatchRecord& match, double k,
                         double k_c) {
  const int n = state.player_count();
  check_player(match.i, n, "melo_update");
  check_player(match.j, n, "melo_update");
  if (!is_valid_outcome(match.outcome))
    throw std::invalid_argument("melo_update: outcome must be 0, 0.5 or 1");
  if (!(k > 0.0) || !(k_c > 0.0))
    throw std::invalid_argument("melo_update: rates must be positive");

  const double p = melo_predict(state, match.i, match.j);
  const double delta = match.outcome - p;

  const double ci0 = state.cyc.at(match.i, 0);
  const double ci1 = state.cyc.at(match.i, 1);
  const double cj0 = state.cyc.at(match.j, 0);
  const double cj1 = state.cyc.at(match.j, 1);

  state.ratings[match.i] += k * delta;
  state.ratings[match.j] -= k * delta;

  state.cyc.at(match.i, 0) = ci0 + k_c * delta * cj1;
  state.cyc.at(match.i, 1) = ci1 - k_c * delta * cj0;
  state.cyc.at(match.j, 0) = cj0 + k_c * delta * ci1;
  state.cyc.at(match.j, 1) = cj1 - k_c * delta * ci0;

  return p;
}

double apply_melo_update(MEloState& state, const MatchRecord& match) {
  return apply_melo_update(state, match, state.config.k_factor,
                           state.config.cyc_rate);
}

}  // namespace ratings
