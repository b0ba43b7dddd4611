#include "ratings/models.hpp"

#include <cstdio>
#include <stdexcept>

#include "ratings/elo.hpp"
#include "ratings/rng.hpp"

namespace ratings {

namespace {

std::string number_label(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%g", value);
  return buffer;
}

class EloModel : public OnlineModel {
 public:
  EloModel(const EloConfig& config, int player_count)
      : config_(config), ratings_(player_count, config.initial_rating) {}

  void process(const MatchRecord& match) override {
    apply_elo_update(ratings_, match, config_.k_factor);
  }

  double predict(PlayerId i, PlayerId j) const override {
    check_player(i, static_cast<int>(ratings_.size()), "predict");
    check_player(j, static_cast<int>(ratings_.size()), "predict");
    return expected_score(ratings_[i], ratings_[j]);
  }

 private:
  EloConfig config_;
  RatingTable ratings_;
};

class RccModel : public OnlineModel {
 public:
  RccModel(const RccConfig& config, int player_count, std::uint64_t seed)
      : state_(init_rcc_state(player_count, config)), rng_(seed) {}

  void process(const MatchRecord& match) override {
    process_match(state_, match, rng_);
  }

  double predict(PlayerId i, PlayerId j) const override {
    return predict_win_prob(state_, i, j);
  }

 private:
  RccState state_;
  Rng rng_;
};

class MEloModel : public OnlineModel {
 public:
  MEloModel(const MEloConfig& config, int player_count, std::uint64_t seed) {
    Rng rng(seed);
    state_ = init_melo_state(player_count, config, rng);
  }

  void process(const MatchRecord& match) override {
    apply_melo_update(state_, match);
  }

  double predict(PlayerId i, PlayerId j) const override {
    return melo_predict(state_, i, j);
  }

 private:
  MEloState state_;
};

}  // namespace

std::string ModelSpec::label() const {
  switch (type) {
    case Type::Elo:
      return "elo";
    case Type::EloRcc:
      return "elo-rcc";
    case Type::MElo2:
      return "melo2";
  }
  throw std::invalid_argument("ModelSpec: unknown type");
}

std::string ModelSpec::param_label() const {
  switch (type) {
    case Type::Elo:
      return number_label(elo.k_factor);
    case Type::EloRcc:
      return std::to_string(rcc.categories);
    case Type::MElo2:
      return number_label(melo.k_factor);
  }
  throw std::invalid_argument("ModelSpec: unknown type");
}

std::unique_ptr<OnlineModel> make_model(const ModelSpec& spec,
                                        int player_count, std::uint64_t seed) {
  if (player_count < 1)
    throw std::invalid_argument("make_model: player_count must be at least 1");
  switch (spec.type) {
    case ModelSpec::Type::Elo:
      if (!(spec.elo.k_factor > 0.0))
        throw std::invalid_argument("make_model: k_factor must be positive");
      return std::make_unique<EloModel>(spec.elo, player_count);
    case ModelSpec::Type::EloRcc:
      return std::make_unique<RccModel>(spec.rcc, player_count, seed);
    case ModelSpec::Type::MElo2:
      return std::make_unique<MEloModel>(spec.melo, player_count, seed);
  }
  throw std::invalid_argument("make_model: unknown model type");
}

}  // namespace ratings
