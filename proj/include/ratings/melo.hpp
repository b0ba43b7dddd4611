#pragma once

#include <vector>

#include "ratings/rng.hpp"
#include "ratings/types.hpp"

namespace ratings {

// Multidimensional Elo with a rank-2 cyclic component: each player carries a
// scalar rating plus a 2-vector whose pairing term captures non-transitive
// interactions.
struct MEloConfig {
  double k_factor = 16.0;
  double cyc_rate = 0.1;
  double initial_rating = 1000.0;
  double init_noise = 0.1;

  void validate() const;
};

struct MEloState {
  MEloConfig config;
  RatingTable ratings;  // one per player
  Grid cyc;             // N x 2

  int player_count() const { return static_cast<int>(ratings.size()); }
};

// Cyclic vectors start at small random values drawn uniformly from
// [-init_noise, init_noise]; identical seeds give identical states.
MEloState init_melo_state(int player_count, const MEloConfig& config, Rng& rng);

// Win probability for i against j: logistic in the rating gap plus the
// antisymmetric pairing of the two cyclic vectors.
double melo_predict(const MEloState& state, PlayerId i, PlayerId j);

// Online update of both ratings and both cyclic vectors from one match; all
// gradient terms use pre-update values.  Returns the pre-update win
// probability for i.
double apply_melo_update(MEloState& state, const MatchRecord& match, double k,
                         double k_c);

// Same update with the rates taken from the state's config.
double apply_melo_update(MEloState& state, const MatchRecord& match);

}  // namespace ratings
