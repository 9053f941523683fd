#include "pirl/persistence/policy_reuse.hpp"

#include <cmath>

#include "pirl/error.hpp"
#include "pirl/qnet/dqn.hpp"

namespace pirl::persistence {

void PprParams::validate(const std::string& prefix) const {
  if (!(initial >= 0.0 && initial <= 1.0)) throw ValidationError(prefix + ".initial", "must lie in [0, 1]");
  if (!(decay > 0.0 && decay <= 1.0)) throw ValidationError(prefix + ".decay", "must lie in (0, 1]");
}

double ppr_probability(const PprParams& ppr, int episode) {
  return ppr.initial * std::pow(ppr.decay, episode);
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Rule:
      return "rule";
    case Provenance::Advisor:
      return "advisor";
    case Provenance::Policy:
      return "policy";
  }
  return "unknown";
}

Selection persistent_select(std::span<const double> obs, std::span<const double> qvalues,
                            RuleStore& store, const DiscretizationScheme& scheme,
                            advice::Advisor& advisor, double reuse_probability,
                            double epsilon, SelectionStreams streams) {
  const RuleKey key = discretize(obs, scheme);

  if (streams.reuse.bernoulli(reuse_probability)) {
    if (auto stored = store.lookup(key)) return {*stored, Provenance::Rule, false, false};
  }

  const advice::Advice advice = advisor.advise(obs, streams.advisor);
  if (advice.given()) {
    if (advice.value() >= qvalues.size()) throw UsageError("advisor returned an invalid action");
    store.insert(key, advice.value());
    return {advice.value(), Provenance::Advisor, true, true};
  }

  return {qnet::epsilon_greedy(qvalues, epsilon, streams.policy), Provenance::Policy, true, false};
}

}  // namespace pirl::persistence
