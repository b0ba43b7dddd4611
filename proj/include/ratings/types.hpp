#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ratings {

// Dense player index assigned at dataset load, 0..N-1.
using PlayerId = int;

// Match outcomes are 1 (win), 0 (loss) or 0.5 (tie), always from the
// first-listed player's perspective.
inline bool is_valid_outcome(double value) {
  return value == 0.0 || value == 0.5 || value == 1.0;
}

struct MatchRecord {
  PlayerId i = 0;
  PlayerId j = 0;
  double outcome = 0.5;
};

// Elo points per player; entries stay finite through every update.
using RatingTable = std::vector<double>;

struct EloConfig {
  double initial_rating = 1000.0;
  double k_factor = 16.0;
};

// File access and parse failures. The CLI maps this type to its IO exit code.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

inline void check_player(PlayerId p, int n_players, const char* where) {
  if (p < 0 || p >= n_players)
    throw std::out_of_range(std::string(where) + ": unknown player id " +
                            std::to_string(p));
}

// Row-major matrix of doubles.
class Grid {
 public:
  Grid() = default;
  Grid(int rows, int cols, double fill = 0.0)
      : rows_(rows),
        cols_(cols),
        cells_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
               fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& at(int r, int c) { return cells_[index(r, c)]; }
  double at(int r, int c) const { return cells_[index(r, c)]; }

  double* row(int r) { return cells_.data() + index(r, 0); }
  const double* row(int r) const { return cells_.data() + index(r, 0); }

  std::vector<double>& cells() { return cells_; }
  const std::vector<double>& cells() const { return cells_; }

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(c);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> cells_;
};

}  // namespace ratings
