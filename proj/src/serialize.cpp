#include "ratings/serialize.hpp"

#include <stdexcept>

#include <json.hpp>

#include "ratings/io.hpp"

namespace ratings {

namespace {

using nlohmann::json;

json grid_to_json(const Grid& grid) {
  json rows = json::array();
  for (int r = 0; r < grid.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < grid.cols(); ++c) row.push_back(grid.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Grid grid_from_json(const json& rows, int expect_rows, int expect_cols,
                    const char* what) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != expect_rows)
    throw IoError(std::string("state: ") + what + " has wrong row count");
  Grid grid(expect_rows, expect_cols, 0.0);
  for (int r = 0; r < expect_rows; ++r) {
    const json& row = rows.at(r);
    if (!row.is_array() || static_cast<int>(row.size()) != expect_cols)
      throw IoError(std::string("state: ") + what + " has wrong column count");
    for (int c = 0; c < expect_cols; ++c)
      grid.at(r, c) = row.at(c).get<double>();
  }
  return grid;
}

RatingTable ratings_from_json(const json& values, int expect) {
  if (!values.is_array() || static_cast<int>(values.size()) != expect)
    throw IoError("state: ratings have wrong length");
  RatingTable ratings;
  ratings.reserve(expect);
  for (const json& v : values) ratings.push_back(v.get<double>());
  return ratings;
}

}  // namespace

void save_state(const SavedState& state, const std::string& path) {
  json doc;
  doc["schema_version"] = kStateSchemaVersion;
  doc["kind"] = state.kind;
  doc["player_names"] = state.player_names;
  if (state.kind == "elo") {
    doc["config"] = {{"initial_rating", state.elo_config.initial_rating},
                     {"k_factor", state.elo_config.k_factor}};
    doc["ratings"] = state.elo_ratings;
  } else if (state.kind == "elo-rcc") {
    const RccConfig& cfg = state.rcc.config;
    doc["config"] = {{"categories", cfg.categories},
                     {"rating_rate", cfg.rating_rate},
                     {"table_rate", cfg.table_rate},
                     {"dist_rate", cfg.dist_rate},
                     {"initial_rating", cfg.initial_rating}};
    doc["ratings"] = state.rcc.ratings;
    doc["counter_table"] = grid_to_json(state.rcc.counter_table);
    doc["expected_residuals"] = grid_to_json(state.rcc.expected_residuals);
    doc["category_logits"] = grid_to_json(state.rcc.category_logits);
  } else if (state.kind == "melo2") {
    const MEloConfig& cfg = state.melo.config;
    doc["config"] = {{"k_factor", cfg.k_factor},
                     {"cyc_rate", cfg.cyc_rate},
                     {"initial_rating", cfg.initial_rating},
                     {"init_noise", cfg.init_noise}};
    doc["ratings"] = state.melo.ratings;
    doc["cyc"] = grid_to_json(state.melo.cyc);
  } else {
    throw std::invalid_argument("save_state: unknown kind '" + state.kind +
                                "'");
  }
  write_text_atomic(path, doc.dump(2) + "\n");
}

SavedState load_state(const std::string& path) {
  const std::string text = read_text_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(path + ": not a valid state file (" + e.what() + ")");
  }
  try {
    const int version = doc.at("schema_version").get<int>();
    if (version != kStateSchemaVersion)
      throw IoError(path + ": unsupported schema version " +
                    std::to_string(version) + " (expected " +
                    std::to_string(kStateSchemaVersion) + ")");
    SavedState state;
    state.kind = doc.at("kind").get<std::string>();
    state.player_names =
        doc.at("player_names").get<std::vector<std::string>>();
    const int n = static_cast<int>(state.player_names.size());
    if (state.kind == "elo") {
      const json& cfg = doc.at("config");
      state.elo_config.initial_rating = cfg.at("initial_rating").get<double>();
      state.elo_config.k_factor = cfg.at("k_factor").get<double>();
      state.elo_ratings = ratings_from_json(doc.at("ratings"), n);
    } else if (state.kind == "elo-rcc") {
      const json& cfg = doc.at("config");
      state.rcc.config.categories = cfg.at("categories").get<int>();
      state.rcc.config.rating_rate = cfg.at("rating_rate").get<double>();
      state.rcc.config.table_rate = cfg.at("table_rate").get<double>();
      state.rcc.config.dist_rate = cfg.at("dist_rate").get<double>();
      state.rcc.config.initial_rating =
          cfg.at("initial_rating").get<double>();
      state.rcc.config.validate();
      const int m = state.rcc.config.categories;
      state.rcc.ratings = ratings_from_json(doc.at("ratings"), n);
      state.rcc.counter_table =
          grid_from_json(doc.at("counter_table"), m, m, "counter_table");
      state.rcc.expected_residuals = grid_from_json(
          doc.at("expected_residuals"), n, m, "expected_residuals");
      state.rcc.category_logits =
          grid_from_json(doc.at("category_logits"), n, m, "category_logits");
    } else if (state.kind == "melo2") {
      const json& cfg = doc.at("config");
      state.melo.config.k_factor = cfg.at("k_factor").get<double>();
      state.melo.config.cyc_rate = cfg.at("cyc_rate").get<double>();
      state.melo.config.initial_rating =
          cfg.at("initial_rating").get<double>();
      state.melo.config.init_noise = cfg.at("init_noise").get<double>();
      state.melo.config.validate();
      state.melo.ratings = ratings_from_json(doc.at("ratings"), n);
      state.melo.cyc = grid_from_json(doc.at("cyc"), n, 2, "cyc");
    } else {
      throw IoError(path + ": unknown model kind '" + state.kind + "'");
    }
    return state;
  } catch (const json::exception& e) {
    throw IoError(path + ": malformed state file (" + std::string(e.what()) +
                  ")");
  }
}

}  // namespace ratings
