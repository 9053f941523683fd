#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "pirl/env/environment.hpp"
#include "pirl/qnet/network.hpp"
#include "pirl/rng.hpp"

namespace pirl::advice {

// Simulated trainer. `frequency` is the probability that advice is offered
// on a queried step, `accuracy` the probability that offered advice matches
// the oracle's action.
struct AdvisorProfile {
  std::string name;
  double frequency = 0.0;
  double accuracy = 0.0;

  static AdvisorProfile pessimistic() { return {"pessimistic", 0.23658, 0.23658}; }
  static AdvisorProfile real() { return {"real", 0.47316, 0.47316}; }
  static AdvisorProfile optimistic() { return {"optimistic", 1.0, 1.0}; }

  void validate(const std::string& prefix = "advisor") const;
};

// Either an action index or an explicit "no advice".
class Advice {
 public:
  Advice() = default;
  static Advice none() { return {}; }
  static Advice action(std::size_t a) { return Advice(a); }

  bool given() const noexcept { return action_.has_value(); }
  std::size_t value() const { return action_.value(); }
  const std::optional<std::size_t>& get() const noexcept { return action_; }

  friend bool operator==(const Advice&, const Advice&) = default;

 private:
  explicit Advice(std::size_t a) : action_(a) {}
  std::optional<std::size_t> action_;
};

// Frozen competent policy whose greedy action defines "correct" advice.
// Immutable and shareable across threads.
class OracleAgent {
 public:
  explicit OracleAgent(qnet::QNetwork net);

  std::size_t action(std::span<const double> obs) const;
  const qnet::QNetwork& network() const noexcept { return *net_; }

 private:
  std::shared_ptr<const qnet::QNetwork> net_;
};

inline std::size_t oracle_action(const OracleAgent& oracle, std::span<const double> obs) {
  return oracle.action(obs);
}

// Offers advice with probability `frequency`; offered advice is the oracle
// action with probability `accuracy`, otherwise a uniformly drawn other action.
Advice simulated_advise(const AdvisorProfile& profile, const OracleAgent& oracle,
                        std::span<const double> obs, Rng& rng);

struct ShapedAction {
  std::size_t action = 0;
  bool advised = false;

  friend bool operator==(const ShapedAction&, const ShapedAction&) = default;
};

// Policy shaping: advice, when present, replaces the agent's own choice.
inline ShapedAction apply_advice(std::size_t base_action, const Advice& advice) {
  if (advice.given()) return {advice.value(), true};
  return {base_action, false};
}

// Anything that can be asked for advice on the current observation.
class Advisor {
 public:
  virtual ~Advisor() = default;
  virtual Advice advise(std::span<const double> obs, Rng& rng) = 0;
};

class SimulatedAdvisor final : public Advisor {
 public:
  SimulatedAdvisor(AdvisorProfile profile, OracleAgent oracle)
      : profile_(std::move(profile)), oracle_(std::move(oracle)) {}

  Advice advise(std::span<const double> obs, Rng& rng) override {
    return simulated_advise(profile_, oracle_, obs, rng);
  }

  const AdvisorProfile& profile() const noexcept { return profile_; }
  const OracleAgent& oracle() const noexcept { return oracle_; }

 private:
  AdvisorProfile profile_;
  OracleAgent oracle_;
};

// Mean greedy return of `net` over `episodes` episodes, seeded per episode.
double evaluate_greedy(const qnet::QNetwork& net, const env::EnvSpec& spec, int episodes,
                       std::uint64_t seed);

}  // namespace pirl::advice
