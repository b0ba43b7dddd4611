#include "ratings/evaluation.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "ratings/rng.hpp"

namespace ratings {

namespace {

// Sub-stream tags so fold shuffling and model initialization never share a
// random sequence.
constexpr std::uint64_t kShuffleStream = 1;
constexpr std::uint64_t kModelStream = 2;

double mean_of(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double population_std(const std::vector<double>& values, double mean) {
  double sum = 0.0;
  for (double v : values) sum += (v - mean) * (v - mean);
  return std::sqrt(sum / static_cast<double>(values.size()));
}

std::string format_pct(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

Relation flipped(Relation relation) {
  if (relation == Relation::Stronger) return Relation::Weaker;
  if (relation == Relation::Weaker) return Relation::Stronger;
  return relation;
}

}  // namespace

const char* relation_name(Relation relation) {
  switch (relation) {
    case Relation::Stronger:
      return "stronger";
    case Relation::Weaker:
      return "weaker";
    case Relation::Equal:
      return "equal";
    case Relation::Unknown:
      return "unknown";
  }
  return "unknown";
}

WinRateTable empirical_win_rates(const std::vector<MatchRecord>& matches,
                                 int n_players) {
  if (n_players < 0)
    throw std::invalid_argument(
        "empirical_win_rates: n_players must be non-negative");
  WinRateTable table;
  table.n = n_players;
  table.wins = Grid(n_players, n_players, 0.0);
  table.counts.assign(static_cast<std::size_t>(n_players) * n_players, 0);
  for (const MatchRecord& match : matches) {
    check_player(match.i, n_players, "empirical_win_rates");
    check_player(match.j, n_players, "empirical_win_rates");
    if (!is_valid_outcome(match.outcome))
      throw std::invalid_argument("empirical_win_rates: invalid outcome");
    table.wins.at(match.i, match.j) += match.outcome;
    table.wins.at(match.j, match.i) += 1.0 - match.outcome;
    ++table.counts[static_cast<std::size_t>(match.i) * n_players + match.j];
    ++table.counts[static_cast<std::size_t>(match.j) * n_players + match.i];
  }
  return table;
}

Relation relation_from_winrate(double w) {
  if (!(w >= 0.0) || !(w <= 1.0))
    throw std::invalid_argument(
        "relation_from_winrate: win rate must be in [0, 1]");
  if (w > 0.501) return Relation::Stronger;
  if (w < 0.499) return Relation::Weaker;
  return Relation::Equal;
}

RelationMatrix ground_truth_relations(const std::vector<MatchRecord>& matches,
                                      int n_players) {
  const WinRateTable rates = empirical_win_rates(matches, n_players);
  RelationMatrix rel(n_players);
  for (int i = 0; i < n_players; ++i)
    for (int j = i + 1; j < n_players; ++j) {
      if (rates.count(i, j) == 0) continue;
      const Relation r = relation_from_winrate(rates.rate(i, j));
      rel.at(i, j) = r;
      rel.at(j, i) = flipped(r);
    }
  return rel;
}

RelationMatrix predicted_relations(
    const std::function<double(PlayerId, PlayerId)>& predictor,
    int n_players) {
  if (!predictor)
    throw std::invalid_argument("predicted_relations: missing predictor");
  RelationMatrix rel(n_players);
  for (int i = 0; i < n_players; ++i)
    for (int j = i + 1; j < n_players; ++j) {
      const Relation r = relation_from_winrate(predictor(i, j));
      rel.at(i, j) = r;
      rel.at(j, i) = flipped(r);
    }
  return rel;
}

double relation_accuracy(const RelationMatrix& truth,
                         const RelationMatrix& predicted) {
  if (truth.size() != predicted.size())
    throw std::invalid_argument("relation_accuracy: dimension mismatch");
  long long comparable = 0;
  long long hits = 0;
  const int n = truth.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || truth.at(i, j) == Relation::Unknown) continue;
      ++comparable;
      if (predicted.at(i, j) == truth.at(i, j)) ++hits;
    }
  if (comparable == 0)
    throw std::invalid_argument("relation_accuracy: no comparable pairs");
  return 100.0 * static_cast<double>(hits) / static_cast<double>(comparable);
}

AccuracyReport run_cv(const Dataset& dataset, const FoldSplit& folds,
                      const ModelSpec& spec, int epochs, std::uint64_t seed,
                      int threads) {
  const int n = dataset.player_count();
  const std::size_t match_count = dataset.matches.size();
  if (folds.assignment.size() != match_count)
    throw std::invalid_argument(
        "run_cv: fold assignment does not match the dataset");
  if (folds.fold_count < 2)
    throw std::invalid_argument("run_cv: need at least 2 folds");
  if (epochs < 1)
    throw std::invalid_argument("run_cv: epochs must be at least 1");
  for (int fold : folds.assignment)
    if (fold < 0 || fold >= folds.fold_count)
      throw std::invalid_argument("run_cv: fold index out of range");

  const int k = folds.fold_count;

  const auto eval_fold = [&](int f) -> std::pair<double, double> {
    std::vector<int> train_indices;
    std::vector<MatchRecord> train_matches;
    std::vector<MatchRecord> test_matches;
    train_indices.reserve(match_count);
    for (std::size_t m = 0; m < match_count; ++m) {
      if (folds.assignment[m] == f) {
        test_matches.push_back(dataset.matches[m]);
      } else {
        train_indices.push_back(static_cast<int>(m));
        train_matches.push_back(dataset.matches[m]);
      }
    }
    if (train_indices.empty())
      throw std::invalid_argument("run_cv: fold " + std::to_string(f) +
                                  " leaves no training matches");

    auto model = make_model(
        spec, n,
        derive_seed(seed, {kModelStream, static_cast<std::uint64_t>(f)}));
    std::vector<int> order;
    for (int e = 0; e < epochs; ++e) {
      order = train_indices;
      Rng shuffle_rng(derive_seed(seed, {kShuffleStream,
                                         static_cast<std::uint64_t>(f),
                                         static_cast<std::uint64_t>(e)}));
      shuffle_rng.shuffle(order);
      for (int idx : order) model->process(dataset.matches[idx]);
    }

    const RelationMatrix predicted = predicted_relations(
        [&](PlayerId i, PlayerId j) { return model->predict(i, j); }, n);
    const double train_acc =
        relation_accuracy(ground_truth_relations(train_matches, n), predicted);
    const double test_acc =
        relation_accuracy(ground_truth_relations(test_matches, n), predicted);
    return {train_acc, test_acc};
  };

  AccuracyReport report;
  report.per_fold_train.resize(k);
  report.per_fold_test.resize(k);

  int level = threads;
  if (level <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    level = hw == 0 ? 1 : static_cast<int>(hw);
  }

  if (level <= 1) {
    for (int f = 0; f < k; ++f) {
      const auto [train_acc, test_acc] = eval_fold(f);
      report.per_fold_train[f] = train_acc;
      report.per_fold_test[f] = test_acc;
    }
  } else {
    std::vector<std::future<std::pair<double, double>>> jobs;
    jobs.reserve(k);
    for (int f = 0; f < k; ++f)
      jobs.push_back(std::async(std::launch::async, eval_fold, f));
    for (int f = 0; f < k; ++f) {
      const auto [train_acc, test_acc] = jobs[f].get();
      report.per_fold_train[f] = train_acc;
      report.per_fold_test[f] = test_acc;
    }
  }

  report.mean_train = mean_of(report.per_fold_train);
  report.std_train = population_std(report.per_fold_train, report.mean_train);
  report.mean_test = mean_of(report.per_fold_test);
  report.std_test = population_std(report.per_fold_test, report.mean_test);
  return report;
}

std::string report_text(const AccuracyReport& report) {
  std::ostringstream out;
  out << "folds: " << report.per_fold_train.size() << '\n';
  out << "fold_train:";
  for (double v : report.per_fold_train) out << ' ' << format_pct(v);
  out << '\n';
  out << "fold_test:";
  for (double v : report.per_fold_test) out << ' ' << format_pct(v);
  out << '\n';
  out << "train_mean: " << format_pct(report.mean_train) << '\n';
  out << "train_std: " << format_pct(report.std_train) << '\n';
  out << "test_mean: " << format_pct(report.mean_test) << '\n';
  out << "test_std: " << format_pct(report.std_test) << '\n';
  return out.str();
}

std::string report_csv_row(const std::string& dataset,
                           const std::string& model, const std::string& m_or_k,
                           const AccuracyReport& report) {
  return dataset + "," + model + "," + m_or_k + "," +
         format_pct(report.mean_train) + "," + format_pct(report.std_train) +
         "," + format_pct(report.mean_test) + "," +
         format_pct(report.std_test);
}

}  // namespace ratings
