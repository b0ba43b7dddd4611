#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ratings/datasets.hpp"
#include "ratings/models.hpp"
#include "ratings/types.hpp"

namespace ratings {

enum class Relation { Stronger, Weaker, Equal, Unknown };

const char* relation_name(Relation relation);

// N x N relation matrix, antisymmetric by construction: the (i, j) and
// (j, i) cells always hold opposite relations, and the diagonal is Equal.
class RelationMatrix {
 public:
  explicit RelationMatrix(int n_players = 0)
      : n_(n_players),
        cells_(static_cast<std::size_t>(n_players) * n_players,
               Relation::Unknown) {
    for (int i = 0; i < n_players; ++i) at(i, i) = Relation::Equal;
  }

  int size() const { return n_; }

  Relation& at(int i, int j) {
    return cells_[static_cast<std::size_t>(i) * n_ + j];
  }
  Relation at(int i, int j) const {
    return cells_[static_cast<std::size_t>(i) * n_ + j];
  }

 private:
  int n_ = 0;
  std::vector<Relation> cells_;
};

// Pairwise score and match-count accumulators; wins[i][j] + wins[j][i] equals
// counts[i][j] for every observed pair.
struct WinRateTable {
  int n = 0;
  Grid wins;
  std::vector<long long> counts;

  long long count(int i, int j) const {
    return counts[static_cast<std::size_t>(i) * n + j];
  }
  double rate(int i, int j) const {
    return wins.at(i, j) / static_cast<double>(count(i, j));
  }
};

WinRateTable empirical_win_rates(const std::vector<MatchRecord>& matches,
                                 int n_players);

// Equal within [0.499, 0.501] (both ends included), Stronger above,
// Weaker below.
Relation relation_from_winrate(double w);

// Relations from empirical win rates; pairs with no observed matches are
// Unknown.
RelationMatrix ground_truth_relations(const std::vector<MatchRecord>& matches,
                                      int n_players);

// Relations from a model's win probabilities; never Unknown off-diagonal.
RelationMatrix predicted_relations(
    const std::function<double(PlayerId, PlayerId)>& predictor, int n_players);

// Percentage of ordered pairs i != j, over those whose ground truth is known,
// where the predicted relation matches.
double relation_accuracy(const RelationMatrix& truth,
                         const RelationMatrix& predicted);

struct AccuracyReport {
  std::vector<double> per_fold_train;  // percentages, one per fold
  std::vector<double> per_fold_test;
  double mean_train = 0.0;
  double std_train = 0.0;  // population std over folds
  double mean_test = 0.0;
  double std_test = 0.0;
};

// Cross-validated evaluation: for each fold, train the model online on the
// remaining matches for `epochs` shuffled passes, then score its predicted
// relations against ground truth from the training matches and from the
// held-out fold.  Deterministic in (dataset, folds, spec, epochs, seed);
// threads = 0 picks a level automatically, folds run independently and the
// result never depends on the thread count.
AccuracyReport run_cv(const Dataset& dataset, const FoldSplit& folds,
                      const ModelSpec& spec, int epochs, std::uint64_t seed,
                      int threads = 0);

inline constexpr char kReportCsvHeader[] =
    "dataset,model,m_or_k,train_mean,train_std,test_mean,test_std";

std::string report_text(const AccuracyReport& report);
std::string report_csv_row(const std::string& dataset,
                           const std::string& model, const std::string& m_or_k,
                           const AccuracyReport& report);

}  // namespace ratings
