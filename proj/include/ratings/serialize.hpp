#pragma once

#include <string>
#include <vector>

#include "ratings/melo.hpp"
#include "ratings/rcc.hpp"
#include "ratings/types.hpp"

namespace ratings {

inline constexpr int kStateSchemaVersion = 1;

// Trained model state as persisted by `train` and consumed by `inspect`.
// `kind` selects which members are meaningful.
struct SavedState {
  std::string kind;  // "elo", "elo-rcc" or "melo2"
  std::vector<std::string> player_names;

  EloConfig elo_config;      // kind == "elo"
  RatingTable elo_ratings;   // kind == "elo"
  RccState rcc;              // kind == "elo-rcc"
  MEloState melo;            // kind == "melo2"
};

// JSON with a schema_version field; doubles round-trip exactly.
void save_state(const SavedState& state, const std::string& path);

// Throws IoError on unreadable or corrupt files and on schema-version
// mismatches.
SavedState load_state(const std::string& path);

}  // namespace ratings
