#include "pirl/advice/advisor.hpp"

#include "pirl/error.hpp"

namespace pirl::advice {

void AdvisorProfile::validate(const std::string& prefix) const {
  if (!(frequency >= 0.0 && frequency <= 1.0))
    throw ValidationError(prefix + ".frequency", "must lie in [0, 1]");
  if (!(accuracy >= 0.0 && accuracy <= 1.0))
    throw ValidationError(prefix + ".accuracy", "must lie in [0, 1]");
}

OracleAgent::OracleAgent(qnet::QNetwork net)
    : net_(std::make_shared<const qnet::QNetwork>(std::move(net))) {}

std::size_t OracleAgent::action(std::span<const double> obs) const {
  const auto q = net_->forward(obs);
  return qnet::argmax(q);
}

Advice simulated_advise(const AdvisorProfile& profile, const OracleAgent& oracle,
                        std::span<const double> obs, Rng& rng) {
  if (!rng.bernoulli(profile.frequency)) return Advice::none();
  const std::size_t correct = oracle.action(obs);
  const std::size_t n = oracle.network().output_size();
  if (rng.bernoulli(profile.accuracy) || n < 2) return Advice::action(correct);
  std::size_t wrong = rng.below(n - 1);
  if (wrong >= correct) ++wrong;
  return Advice::action(wrong);
}

double evaluate_greedy(const qnet::QNetwork& net, const env::EnvSpec& spec, int episodes,
                       std::uint64_t seed) {
  if (episodes < 1) throw UsageError("evaluate_greedy needs at least one episode");
  auto environment = env::make_environment(spec);
  Rng rng = Rng::substream(seed, "eval");
  double total = 0.0;
  for (int e = 0; e < episodes; ++e) {
    auto obs = environment->reset(rng);
    for (;;) {
      const auto q = net.forward(obs);
      auto step = environment->step(qnet::argmax(q));
      total += step.reward;
      if (step.done()) break;
      obs = std::move(step.observation);
    }
  }
  return total / episodes;
}

}  // namespace pirl::advice
