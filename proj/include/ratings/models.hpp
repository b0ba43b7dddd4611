#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "ratings/melo.hpp"
#include "ratings/rcc.hpp"
#include "ratings/types.hpp"

namespace ratings {

// Names a rating system plus its hyperparameters; only the config matching
// `type` is read.
struct ModelSpec {
  enum class Type { Elo, EloRcc, MElo2 };

  Type type = Type::Elo;
  EloConfig elo;
  RccConfig rcc;
  MEloConfig melo;

  std::string label() const;        // "elo", "elo-rcc" or "melo2"
  std::string param_label() const;  // K for Elo variants, M for elo-rcc
};

// Online interface shared by every rating system: feed matches one at a
// time, query win probabilities at any point.
class OnlineModel {
 public:
  virtual ~OnlineModel() = default;
  virtual void process(const MatchRecord& match) = 0;
  virtual double predict(PlayerId i, PlayerId j) const = 0;
};

std::unique_ptr<OnlineModel> make_model(const ModelSpec& spec,
                                        int player_count, std::uint64_t seed);

}  // namespace ratings
