#include "ratings/datasets.hpp"

#include <charconv>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "ratings/io.hpp"
#include "ratings/rng.hpp"

namespace ratings {

namespace {

constexpr char kMatchHeader[] = "player_i,player_j,outcome";
constexpr char kFoldHeader[] = "match_index,fold";

// rock=0 beats scissors=2, paper=1 beats rock=0, scissors=2 beats paper=1.
bool rps_beats(int a, int b) { return a == (b + 1) % 3; }

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(current);
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  fields.push_back(current);
  return fields;
}

std::string at_line(const std::string& path, long line_no) {
  return path + ":" + std::to_string(line_no) + ": ";
}

std::string outcome_text(double outcome) {
  if (outcome == 0.0) return "0";
  if (outcome == 1.0) return "1";
  return "0.5";
}

}  // namespace

Dataset gen_rps(int n_matches, std::uint64_t seed) {
  if (n_matches < 1)
    throw std::invalid_argument("gen_rps: n_matches must be at least 1");
  Dataset dataset;
  dataset.player_names = {"rock", "paper", "scissors"};
  dataset.matches.reserve(n_matches);
  Rng rng(seed);
  for (int m = 0; m < n_matches; ++m) {
    const int i = static_cast<int>(rng.next_below(3));
    const int j = static_cast<int>(rng.next_below(3));
    double outcome = 0.5;
    if (i != j) outcome = rps_beats(i, j) ? 1.0 : 0.0;
    dataset.matches.push_back({i, j, outcome});
  }
  return dataset;
}

std::string AcgTeam::name() const {
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "%02d-%02d-%02d", elements[0],
                elements[1], elements[2]);
  return buffer;
}

std::vector<AcgTeam> acg_enumerate_teams() {
  std::vector<AcgTeam> teams;
  teams.reserve(1140);
  for (int a = 1; a <= 20; ++a)
    for (int b = a + 1; b <= 20; ++b)
      for (int c = b + 1; c <= 20; ++c) {
        AcgTeam team;
        team.elements = {a, b, c};
        team.score = a + b + c;
        team.category = team.score % 3;
        teams.push_back(team);
      }
  return teams;
}

int acg_effective_score(const AcgTeam& team, int opponent_category) {
  if (opponent_category < 0 || opponent_category > 2)
    throw std::invalid_argument(
        "acg_effective_score: category must be 0, 1 or 2");
  // Category cycle: 0 beats 2, 1 beats 0, 2 beats 1.
  const bool bonus = opponent_category == (team.category + 2) % 3;
  return bonus ? team.score + 60 : team.score;
}

double acg_win_prob(const AcgTeam& team_a, const AcgTeam& team_b) {
  const double s_a = acg_effective_score(team_a, team_b.category);
  const double s_b = acg_effective_score(team_b, team_a.category);
  return (s_a * s_a) / (s_a * s_a + s_b * s_b);
}

Dataset gen_acg(int n_matches, std::uint64_t seed) {
  if (n_matches < 1)
    throw std::invalid_argument("gen_acg: n_matches must be at least 1");
  const std::vector<AcgTeam> teams = acg_enumerate_teams();
  Dataset dataset;
  dataset.player_names.reserve(teams.size());
  for (const AcgTeam& team : teams) dataset.player_names.push_back(team.name());
  dataset.matches.reserve(n_matches);
  Rng rng(seed);
  const std::uint64_t team_count = teams.size();
  for (int m = 0; m < n_matches; ++m) {
    const int a = static_cast<int>(rng.next_below(team_count));
    const int b = static_cast<int>(rng.next_below(team_count));
    double outcome = 0.5;
    if (a != b)
      outcome = rng.next_unit() < acg_win_prob(teams[a], teams[b]) ? 1.0 : 0.0;
    dataset.matches.push_back({a, b, outcome});
  }
  return dataset;
}

Dataset load_matches(const std::string& path, const std::string& roster_path) {
  Dataset dataset;
  std::unordered_map<std::string, int> ids;
  const auto intern = [&](const std::string& name) {
    const auto [it, inserted] =
        ids.emplace(name, static_cast<int>(dataset.player_names.size()));
    if (inserted) dataset.player_names.push_back(name);
    return it->second;
  };

  if (!roster_path.empty()) {
    std::istringstream roster(read_text_file(roster_path));
    std::string name;
    while (std::getline(roster, name)) {
      strip_cr(name);
      if (!name.empty()) intern(name);
    }
  }

  std::istringstream in(read_text_file(path));
  std::string line;
  if (!std::getline(in, line)) throw IoError(at_line(path, 1) + "empty file");
  strip_cr(line);
  if (line != kMatchHeader)
    throw IoError(at_line(path, 1) + "expected header '" + kMatchHeader + "'");

  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 3)
      throw IoError(at_line(path, line_no) + "expected 3 fields, got " +
                    std::to_string(fields.size()));
    if (fields[0].empty() || fields[1].empty())
      throw IoError(at_line(path, line_no) + "empty player name");
    double outcome = 0.0;
    const char* begin = fields[2].data();
    const char* end = begin + fields[2].size();
    const auto [ptr, ec] = std::from_chars(begin, end, outcome);
    if (ec != std::errc() || ptr != end)
      throw IoError(at_line(path, line_no) + "malformed outcome '" +
                    fields[2] + "'");
    if (!is_valid_outcome(outcome))
      throw std::invalid_argument(at_line(path, line_no) +
                                  "outcome must be 0, 0.5 or 1, got '" +
                                  fields[2] + "'");
    const int i = intern(fields[0]);
    const int j = intern(fields[1]);
    dataset.matches.push_back({i, j, outcome});
  }
  return dataset;
}

void save_matches(const Dataset& dataset, const std::string& path) {
  const int n = dataset.player_count();
  std::ostringstream out;
  out << kMatchHeader << '\n';
  for (const std::string& name : dataset.player_names)
    if (name.empty() || name.find(',') != std::string::npos ||
        name.find('\n') != std::string::npos)
      throw std::invalid_argument("save_matches: player name '" + name +
                                  "' does not fit the CSV schema");
  for (const MatchRecord& match : dataset.matches) {
    check_player(match.i, n, "save_matches");
    check_player(match.j, n, "save_matches");
    if (!is_valid_outcome(match.outcome))
      throw std::invalid_argument("save_matches: outcome must be 0, 0.5 or 1");
    out << dataset.player_names[match.i] << ','
        << dataset.player_names[match.j] << ',' << outcome_text(match.outcome)
        << '\n';
  }
  write_text_atomic(path, out.str());
}

FoldSplit make_folds(const Dataset& dataset, int k, std::uint64_t seed) {
  const int n = static_cast<int>(dataset.matches.size());
  if (k < 2) throw std::invalid_argument("make_folds: k must be at least 2");
  if (n == 0) throw std::invalid_argument("make_folds: dataset is empty");
  if (k > n)
    throw std::invalid_argument("make_folds: k exceeds the match count");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);
  FoldSplit split;
  split.fold_count = k;
  split.assignment.assign(n, 0);
  for (int pos = 0; pos < n; ++pos) split.assignment[order[pos]] = pos % k;
  return split;
}

void save_folds(const FoldSplit& split, const std::string& path) {
  std::ostringstream out;
  out << kFoldHeader << '\n';
  for (std::size_t m = 0; m < split.assignment.size(); ++m) {
    const int fold = split.assignment[m];
    if (fold < 0 || fold >= split.fold_count)
      throw std::invalid_argument("save_folds: fold index out of range");
    out << m << ',' << fold << '\n';
  }
  write_text_atomic(path, out.str());
}

FoldSplit load_folds(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  if (!std::getline(in, line)) throw IoError(at_line(path, 1) + "empty file");
  strip_cr(line);
  if (line != kFoldHeader)
    throw IoError(at_line(path, 1) + "expected header '" + kFoldHeader + "'");

  FoldSplit split;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 2)
      throw IoError(at_line(path, line_no) + "expected 2 fields, got " +
                    std::to_string(fields.size()));
    const auto parse_int = [&](const std::string& text, const char* what) {
      int value = 0;
      const char* begin = text.data();
      const char* end = begin + text.size();
      const auto [ptr, ec] = std::from_chars(begin, end, value);
      if (ec != std::errc() || ptr != end)
        throw IoError(at_line(path, line_no) + std::string("malformed ") +
                      what + " '" + text + "'");
      return value;
    };
    const int index = parse_int(fields[0], "match index");
    const int fold = parse_int(fields[1], "fold");
    if (index != static_cast<int>(split.assignment.size()))
      throw IoError(at_line(path, line_no) + "match index " +
                    std::to_string(index) + " out of order");
    if (fold < 0)
      throw IoError(at_line(path, line_no) + "negative fold index");
    split.assignment.push_back(fold);
    if (fold + 1 > split.fold_count) split.fold_count = fold + 1;
  }
  if (split.assignment.empty())
    throw IoError(path + ": no fold assignments");

  std::vector<int> sizes(split.fold_count, 0);
  for (int fold : split.assignment) ++sizes[fold];
  for (int f = 0; f < split.fold_count; ++f)
    if (sizes[f] == 0)
      throw IoError(path + ": fold " + std::to_string(f) + " is empty");
  return split;
}

}  // namespace ratings
