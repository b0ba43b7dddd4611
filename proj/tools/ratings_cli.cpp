#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ratings/datasets.hpp"
#include "ratings/elo.hpp"
#include "ratings/evaluation.hpp"
#include "ratings/io.hpp"
#include "ratings/models.hpp"
#include "ratings/rng.hpp"
#include "ratings/serialize.hpp"

using namespace ratings;

namespace {

// Sub-stream tags keep the datasets, folds and model initialization on
// independent random sequences derived from one --seed.
constexpr std::uint64_t kGenRpsStream = 101;
constexpr std::uint64_t kGenAcgStream = 102;
constexpr std::uint64_t kFoldRpsStream = 103;
constexpr std::uint64_t kFoldAcgStream = 104;
constexpr std::uint64_t kAutoFoldStream = 105;
constexpr std::uint64_t kTrainShuffleStream = 106;
constexpr std::uint64_t kTrainModelStream = 107;

struct ModelOptions {
  std::string model = "elo";
  double k = 16.0;
  int m = 81;
  double eta_r = 0.1;
  double eta_t = 0.00025;
  double eta_c = 0.01;
  double k_c = 0.1;
  double initial_rating = 1000.0;
  double init_noise = 0.1;
};

void add_model_flags(CLI::App* cmd, ModelOptions& options) {
  cmd->add_option("--model", options.model,
                  "Rating system: elo, elo-rcc or melo2")
      ->check(CLI::IsMember({"elo", "elo-rcc", "melo2"}));
  cmd->add_option("--k", options.k, "K-factor (elo, melo2)");
  cmd->add_option("--m", options.m, "Counter category count (elo-rcc)");
  cmd->add_option("--eta-r", options.eta_r, "Rating learning rate (elo-rcc)");
  cmd->add_option("--eta-t", options.eta_t,
                  "Counter table learning rate (elo-rcc)");
  cmd->add_option("--eta-c", options.eta_c,
                  "Category distribution learning rate (elo-rcc)");
  cmd->add_option("--k-c", options.k_c,
                  "Cyclic component learning rate (melo2)");
  cmd->add_option("--initial-rating", options.initial_rating,
                  "Rating every player starts from");
}

ModelSpec spec_from(const ModelOptions& options) {
  ModelSpec spec;
  if (options.model == "elo") {
    spec.type = ModelSpec::Type::Elo;
    spec.elo.k_factor = options.k;
    spec.elo.initial_rating = options.initial_rating;
  } else if (options.model == "elo-rcc") {
    spec.type = ModelSpec::Type::EloRcc;
    spec.rcc.categories = options.m;
    spec.rcc.rating_rate = options.eta_r;
    spec.rcc.table_rate = options.eta_t;
    spec.rcc.dist_rate = options.eta_c;
    spec.rcc.initial_rating = options.initial_rating;
  } else if (options.model == "melo2") {
    spec.type = ModelSpec::Type::MElo2;
    spec.melo.k_factor = options.k;
    spec.melo.cyc_rate = options.k_c;
    spec.melo.initial_rating = options.initial_rating;
    spec.melo.init_noise = options.init_noise;
  } else {
    throw std::invalid_argument("unknown model '" + options.model + "'");
  }
  return spec;
}

Dataset generate_named(const std::string& generator, int n,
                       std::uint64_t seed) {
  if (generator == "rps") return gen_rps(n, seed);
  if (generator == "acg") return gen_acg(n, seed);
  throw std::invalid_argument("unknown generator '" + generator +
                              "' (expected rps or acg)");
}

void run_generate(const std::string& generator, int n, std::uint64_t seed,
                  const std::string& out) {
  const Dataset dataset = generate_named(generator, n, seed);
  save_matches(dataset, out);
  nlohmann::json meta;
  meta["generator"] = generator;
  meta["n"] = n;
  meta["seed"] = seed;
  meta["players"] = dataset.player_count();
  write_text_atomic(out + ".meta.json", meta.dump(2) + "\n");
  std::cout << "wrote " << dataset.matches.size() << " matches for "
            << dataset.player_count() << " players to " << out << "\n";
}

void run_makefolds(const std::string& matches_path, int k, std::uint64_t seed,
                   const std::string& out) {
  const Dataset dataset = load_matches(matches_path);
  const FoldSplit split = make_folds(dataset, k, seed);
  save_folds(split, out);
  std::cout << "wrote " << split.assignment.size() << " assignments over "
            << split.fold_count << " folds to " << out << "\n";
}

struct EvaluateOptions {
  ModelOptions model;
  std::string dataset_path;
  std::string roster_path;
  std::string generator;
  int n = 100000;
  std::string folds_path;
  int cv_k = 5;
  int epochs = 100;
  int threads = 0;
  std::uint64_t seed = 1;
  std::string out;
};

void run_evaluate(const EvaluateOptions& options) {
  Dataset dataset;
  if (!options.generator.empty()) {
    dataset = generate_named(options.generator, options.n, options.seed);
  } else if (!options.dataset_path.empty()) {
    dataset = load_matches(options.dataset_path, options.roster_path);
  } else {
    throw std::invalid_argument("evaluate: pass --dataset or --generate");
  }

  FoldSplit folds;
  if (!options.folds_path.empty()) {
    folds = load_folds(options.folds_path);
  } else {
    folds = make_folds(dataset, options.cv_k,
                       derive_seed(options.seed, {kAutoFoldStream}));
  }

  const ModelSpec spec = spec_from(options.model);
  const AccuracyReport report = run_cv(dataset, folds, spec, options.epochs,
                                       options.seed, options.threads);
  const std::string text = report_text(report);
  std::cout << text;
  if (!options.out.empty()) write_text_atomic(options.out, text);
}

struct ReproduceOptions {
  std::string table;
  std::string out_dir = ".";
  int n = 100000;
  int epochs = 100;
  int folds = 5;
  int threads = 0;
  std::uint64_t seed = 1;
};

void run_reproduce(const ReproduceOptions& options) {
  std::vector<ModelSpec> specs;
  std::string file_name;
  if (options.table == "t1") {
    file_name = "table1.csv";
    ModelOptions elo16;
    ModelOptions elo_small;
    elo_small.k = 0.1;
    ModelOptions melo2;
    melo2.model = "melo2";
    ModelOptions rcc81;
    rcc81.model = "elo-rcc";
    rcc81.m = 81;
    specs = {spec_from(elo16), spec_from(elo_small), spec_from(melo2),
             spec_from(rcc81)};
  } else if (options.table == "t2") {
    file_name = "table2.csv";
    for (int m : {3, 9, 27}) {
      ModelOptions rcc;
      rcc.model = "elo-rcc";
      rcc.m = m;
      specs.push_back(spec_from(rcc));
    }
  } else {
    throw std::invalid_argument("reproduce: table must be t1 or t2");
  }

  struct Cell {
    std::string name;
    Dataset dataset;
    FoldSplit folds;
  };
  std::vector<Cell> cells;
  cells.push_back({"rps",
                   gen_rps(options.n, derive_seed(options.seed, {kGenRpsStream})),
                   {}});
  cells.push_back({"acg",
                   gen_acg(options.n, derive_seed(options.seed, {kGenAcgStream})),
                   {}});
  cells[0].folds = make_folds(cells[0].dataset, options.folds,
                              derive_seed(options.seed, {kFoldRpsStream}));
  cells[1].folds = make_folds(cells[1].dataset, options.folds,
                              derive_seed(options.seed, {kFoldAcgStream}));

  std::ostringstream out;
  out << kReportCsvHeader << '\n';
  for (const Cell& cell : cells) {
    for (const ModelSpec& spec : specs) {
      const AccuracyReport report =
          run_cv(cell.dataset, cell.folds, spec, options.epochs, options.seed,
                 options.threads);
      const std::string row = report_csv_row(cell.name, spec.label(),
                                             spec.param_label(), report);
      out << row << '\n';
      std::cerr << "[reproduce] " << row << "\n";
    }
  }
  std::filesystem::create_directories(options.out_dir);
  const std::string path = options.out_dir + "/" + file_name;
  write_text_atomic(path, out.str());
  std::cout << "wrote " << path << "\n";
}

struct TrainOptions {
  ModelOptions model;
  std::string dataset_path;
  std::string roster_path;
  std::string generator;
  int n = 100000;
  int epochs = 100;
  std::uint64_t seed = 1;
  std::string out;
};

void run_train(const TrainOptions& options) {
  Dataset dataset;
  if (!options.generator.empty()) {
    dataset = generate_named(options.generator, options.n, options.seed);
  } else if (!options.dataset_path.empty()) {
    dataset = load_matches(options.dataset_path, options.roster_path);
  } else {
    throw std::invalid_argument("train: pass --dataset or --generate");
  }
  if (dataset.matches.empty())
    throw std::invalid_argument("train: dataset has no matches");
  if (options.epochs < 1)
    throw std::invalid_argument("train: epochs must be at least 1");

  const ModelSpec spec = spec_from(options.model);
  const int n = dataset.player_count();

  const auto run_epochs =
      [&](const std::function<void(const MatchRecord&)>& process) {
        std::vector<int> base(dataset.matches.size());
        std::iota(base.begin(), base.end(), 0);
        for (int e = 0; e < options.epochs; ++e) {
          std::vector<int> order = base;
          Rng shuffle_rng(derive_seed(
              options.seed,
              {kTrainShuffleStream, static_cast<std::uint64_t>(e)}));
          shuffle_rng.shuffle(order);
          for (int idx : order) process(dataset.matches[idx]);
        }
      };

  SavedState state;
  state.kind = spec.label();
  state.player_names = dataset.player_names;
  switch (spec.type) {
    case ModelSpec::Type::Elo: {
      RatingTable ratings(n, spec.elo.initial_rating);
      run_epochs([&](const MatchRecord& match) {
        apply_elo_update(ratings, match, spec.elo.k_factor);
      });
      state.elo_config = spec.elo;
      state.elo_ratings = std::move(ratings);
      break;
    }
    case ModelSpec::Type::EloRcc: {
      RccState rcc = init_rcc_state(n, spec.rcc);
      Rng model_rng(derive_seed(options.seed, {kTrainModelStream}));
      run_epochs([&](const MatchRecord& match) {
        process_match(rcc, match, model_rng);
      });
      state.rcc = std::move(rcc);
      break;
    }
    case ModelSpec::Type::MElo2: {
      Rng init_rng(derive_seed(options.seed, {kTrainModelStream}));
      MEloState melo = init_melo_state(n, spec.melo, init_rng);
      run_epochs(
          [&](const MatchRecord& match) { apply_melo_update(melo, match); });
      state.melo = std::move(melo);
      break;
    }
  }
  save_state(state, options.out);
  std::cout << "wrote " << spec.label() << " state for " << n << " players to "
            << options.out << "\n";
}

void run_inspect(const std::string& path, int top) {
  const SavedState state = load_state(path);
  const int n = static_cast<int>(state.player_names.size());
  const RatingTable* ratings = nullptr;
  if (state.kind == "elo") ratings = &state.elo_ratings;
  if (state.kind == "elo-rcc") ratings = &state.rcc.ratings;
  if (state.kind == "melo2") ratings = &state.melo.ratings;
  if (ratings == nullptr || static_cast<int>(ratings->size()) != n)
    throw IoError(path + ": state does not match its player list");

  std::cout << "kind: " << state.kind << "\n";
  std::cout << "players: " << n << "\n";

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return (*ratings)[a] > (*ratings)[b];
  });
  const int limit = (top > 0 && top < n) ? top : n;

  std::cout << "ratings:\n";
  for (int r = 0; r < limit; ++r) {
    const int p = order[r];
    std::printf("  %12.6f  %s\n", (*ratings)[p],
                state.player_names[p].c_str());
  }

  if (state.kind == "elo-rcc") {
    const int m = state.rcc.config.categories;
    std::cout << "counter_table: " << m << "x" << m << "\n";
    for (int r = 0; r < m; ++r) {
      std::cout << " ";
      for (int c = 0; c < m; ++c)
        std::printf(" %9.6f", state.rcc.counter_table.at(r, c));
      std::cout << "\n";
    }
    std::cout << "best_categories:\n";
    for (int r = 0; r < limit; ++r) {
      const int p = order[r];
      const int best = best_category(state.rcc, p);
      std::printf("  %s: %d (mass %.6f)\n", state.player_names[p].c_str(),
                  best, category_distribution(state.rcc, p)[best]);
    }
  } else if (state.kind == "melo2") {
    std::cout << "cyclic_components:\n";
    for (int r = 0; r < limit; ++r) {
      const int p = order[r];
      std::printf("  %s: [%.6f, %.6f]\n", state.player_names[p].c_str(),
                  state.melo.cyc.at(p, 0), state.melo.cyc.at(p, 1));
    }
  }
}

struct ConvertOptions {
  std::string in;
  std::string out;
  std::string i_col = "player_i";
  std::string j_col = "player_j";
  std::string outcome_col = "outcome";
  std::string winner_col;
};

// Best-effort adapter from a CSV with arbitrary column names (and optionally
// a winner-name column) into the match schema.
void run_convert(const ConvertOptions& options) {
  std::istringstream in(read_text_file(options.in));
  std::string line;
  if (!std::getline(in, line)) throw IoError(options.in + ":1: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::vector<std::string> header;
  {
    std::string field;
    std::istringstream fields(line);
    while (std::getline(fields, field, ',')) header.push_back(field);
  }
  const auto column = [&](const std::string& name) {
    for (std::size_t c = 0; c < header.size(); ++c)
      if (header[c] == name) return static_cast<int>(c);
    throw std::invalid_argument("convert: no column named '" + name + "' in " +
                                options.in);
  };
  const int col_i = column(options.i_col);
  const int col_j = column(options.j_col);
  const bool by_winner = !options.winner_col.empty();
  const int col_result =
      by_winner ? column(options.winner_col) : column(options.outcome_col);

  std::ostringstream out;
  out << "player_i,player_j,outcome\n";
  long line_no = 1;
  long rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream parts(line);
    while (std::getline(parts, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.push_back("");
    const int needed = std::max(col_result, std::max(col_i, col_j));
    if (static_cast<int>(fields.size()) <= needed)
      throw IoError(options.in + ":" + std::to_string(line_no) +
                    ": too few fields");
    const std::string& name_i = fields[col_i];
    const std::string& name_j = fields[col_j];
    std::string outcome;
    if (by_winner) {
      const std::string& winner = fields[col_result];
      if (winner == name_i)
        outcome = "1";
      else if (winner == name_j)
        outcome = "0";
      else if (winner.empty() || winner == "tie" || winner == "draw")
        outcome = "0.5";
      else
        throw IoError(options.in + ":" + std::to_string(line_no) +
                      ": winner '" + winner + "' names neither player");
    } else {
      const std::string& raw = fields[col_result];
      if (raw == "0" || raw == "0.0")
        outcome = "0";
      else if (raw == "1" || raw == "1.0")
        outcome = "1";
      else if (raw == "0.5")
        outcome = "0.5";
      else
        throw IoError(options.in + ":" + std::to_string(line_no) +
                      ": outcome '" + raw + "' is not 0, 0.5 or 1");
    }
    out << name_i << ',' << name_j << ',' << outcome << '\n';
    ++rows;
  }
  write_text_atomic(options.out, out.str());
  std::cout << "wrote " << rows << " matches to " << options.out << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rating systems for intransitive games: generators, online "
               "training and a cross-validated evaluation harness"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a config file");

  std::string gen_name;
  int gen_n = 100000;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  CLI::App* generate =
      app.add_subcommand("generate", "Generate a synthetic match dataset");
  generate->add_option("generator", gen_name, "rps or acg")->required();
  generate->add_option("--n", gen_n, "Number of matches");
  generate->add_option("--seed", gen_seed, "Random seed");
  generate->add_option("--out", gen_out, "Output CSV path")->required();

  std::string mf_matches;
  int mf_k = 5;
  std::uint64_t mf_seed = 1;
  std::string mf_out;
  CLI::App* makefolds = app.add_subcommand(
      "makefolds", "Assign matches of a dataset to cross-validation folds");
  makefolds->add_option("--matches", mf_matches, "Match CSV path")->required();
  makefolds->add_option("--k", mf_k, "Fold count");
  makefolds->add_option("--seed", mf_seed, "Random seed");
  makefolds->add_option("--out", mf_out, "Output fold CSV path")->required();

  EvaluateOptions ev;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Cross-validated strength-relation accuracy of one model");
  add_model_flags(evaluate, ev.model);
  evaluate->add_option("--dataset", ev.dataset_path, "Match CSV path");
  evaluate->add_option("--roster", ev.roster_path,
                       "Optional roster file fixing player id order");
  evaluate->add_option("--generate", ev.generator,
                       "Generate the dataset instead: rps or acg");
  evaluate->add_option("--n", ev.n, "Match count when generating");
  evaluate->add_option("--folds", ev.folds_path, "Fold CSV path");
  evaluate->add_option("--cv-k", ev.cv_k,
                       "Fold count when no fold file is given");
  evaluate->add_option("--epochs", ev.epochs, "Training passes per fold");
  evaluate->add_option("--threads", ev.threads,
                       "Fold parallelism (0 = automatic)");
  evaluate->add_option("--seed", ev.seed, "Random seed");
  evaluate->add_option("--out", ev.out, "Also write the report to this path");

  ReproduceOptions rp;
  CLI::App* reproduce = app.add_subcommand(
      "reproduce", "Run the full benchmark grid and write its CSV table");
  reproduce->add_option("table", rp.table, "t1 or t2")->required();
  reproduce->add_option("--out-dir", rp.out_dir, "Output directory");
  reproduce->add_option("--n", rp.n, "Matches per generated dataset");
  reproduce->add_option("--epochs", rp.epochs, "Training passes per fold");
  reproduce->add_option("--folds", rp.folds, "Fold count");
  reproduce->add_option("--threads", rp.threads,
                        "Fold parallelism (0 = automatic)");
  reproduce->add_option("--seed", rp.seed, "Random seed");

  TrainOptions tr;
  CLI::App* train = app.add_subcommand(
      "train", "Train one model on a full dataset and save its state");
  add_model_flags(train, tr.model);
  train->add_option("--dataset", tr.dataset_path, "Match CSV path");
  train->add_option("--roster", tr.roster_path,
                    "Optional roster file fixing player id order");
  train->add_option("--generate", tr.generator,
                    "Generate the dataset instead: rps or acg");
  train->add_option("--n", tr.n, "Match count when generating");
  train->add_option("--epochs", tr.epochs, "Training passes");
  train->add_option("--seed", tr.seed, "Random seed");
  train->add_option("--out", tr.out, "Output state path")->required();

  std::string inspect_path;
  int inspect_top = 0;
  CLI::App* inspect =
      app.add_subcommand("inspect", "Print a saved model state");
  inspect->add_option("state", inspect_path, "State file path")->required();
  inspect->add_option("--top", inspect_top,
                      "Show only the highest-rated players");
  std::uint64_t inspect_seed = 1;
  inspect->add_option("--seed", inspect_seed, "Accepted for uniformity");

  ConvertOptions cv;
  CLI::App* convert = app.add_subcommand(
      "convert", "Map an external CSV into the match schema (best effort)");
  convert->add_option("--in", cv.in, "Input CSV path")->required();
  convert->add_option("--out", cv.out, "Output match CSV path")->required();
  convert->add_option("--player-i", cv.i_col, "Column with the first player");
  convert->add_option("--player-j", cv.j_col, "Column with the second player");
  convert->add_option("--outcome", cv.outcome_col,
                      "Column with a 0 / 0.5 / 1 outcome");
  convert->add_option("--winner", cv.winner_col,
                      "Column naming the winner (overrides --outcome)");
  std::uint64_t convert_seed = 1;
  convert->add_option("--seed", convert_seed, "Accepted for uniformity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(generate)) {
      run_generate(gen_name, gen_n, gen_seed, gen_out);
    } else if (app.got_subcommand(makefolds)) {
      run_makefolds(mf_matches, mf_k, mf_seed, mf_out);
    } else if (app.got_subcommand(evaluate)) {
      run_evaluate(ev);
    } else if (app.got_subcommand(reproduce)) {
      run_reproduce(rp);
    } else if (app.got_subcommand(train)) {
      run_train(tr);
    } else if (app.got_subcommand(inspect)) {
      run_inspect(inspect_path, inspect_top);
    } else if (app.got_subcommand(convert)) {
      run_convert(cv);
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
