#pragma once

#include <array>
#include <string>
#include <vector>

#include "ratings/types.hpp"

namespace ratings {

struct Dataset {
  std::vector<std::string> player_names;
  std::vector<MatchRecord> matches;

  int player_count() const { return static_cast<int>(player_names.size()); }
};

// Rock-paper-scissors: three players, both sides drawn uniformly per match,
// outcome fixed by the cycle, mirrors tie at 0.5.
Dataset gen_rps(int n_matches, std::uint64_t seed);

// Additive category game: a team is 3 distinct elements from 1..20, its score
// their sum, its category the score mod 3.  Categories beat each other in a
// cycle (0 beats 2, 1 beats 0, 2 beats 1); the winner of that matchup gets a
// +60 score bonus before win probabilities are computed.
struct AcgTeam {
  std::array<int, 3> elements{};
  int score = 0;
  int category = 0;

  std::string name() const;
};

// All C(20,3) = 1140 teams in lexicographic element order.
std::vector<AcgTeam> acg_enumerate_teams();

int acg_effective_score(const AcgTeam& team, int opponent_category);

// P(a beats b) from the squared effective scores.
double acg_win_prob(const AcgTeam& team_a, const AcgTeam& team_b);

Dataset gen_acg(int n_matches, std::uint64_t seed);

// Reads a match CSV (header `player_i,player_j,outcome`).  Player ids are
// assigned in first-seen order unless a roster file (one name per line) fixes
// the order up front.
Dataset load_matches(const std::string& path,
                     const std::string& roster_path = "");

void save_matches(const Dataset& dataset, const std::string& path);

struct FoldSplit {
  int fold_count = 0;
  std::vector<int> assignment;  // fold index per match, parallel to matches
};

// Seeded uniform assignment of matches to k folds; sizes differ by at most 1.
FoldSplit make_folds(const Dataset& dataset, int k, std::uint64_t seed);

void save_folds(const FoldSplit& split, const std::string& path);
FoldSplit load_folds(const std::string& path);

}  // namespace ratings
