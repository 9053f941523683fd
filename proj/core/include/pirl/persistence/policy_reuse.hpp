#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "pirl/advice/advisor.hpp"
#include "pirl/persistence/discretization.hpp"
#include "pirl/persistence/rule_store.hpp"
#include "pirl/rng.hpp"

namespace pirl::persistence {

struct PprParams {
  double initial = 0.8;
  double decay = 0.99;  // per episode

  void validate(const std::string& prefix = "ppr") const;
};

// Probability of consulting stored rules: initial * decay^episode.
double ppr_probability(const PprParams& ppr, int episode);

enum class Provenance { Rule, Advisor, Policy };

std::string_view to_string(Provenance p);

struct Selection {
  std::size_t action = 0;
  Provenance provenance = Provenance::Policy;
  bool advisor_queried = false;
  bool rule_inserted = false;
};

// Random streams consumed by one selection; each concern has its own so
// that e.g. a silent advisor does not shift the exploration sequence.
struct SelectionStreams {
  Rng& reuse;
  Rng& advisor;
  Rng& policy;
};

// Persistent rule-based action selection:
//   1. with probability `reuse_probability`, replay the rule stored for the
//      discretized observation (if any);
//   2. otherwise ask the advisor; advice is returned and stored as a rule;
//   3. otherwise fall back to epsilon-greedy on `qvalues`.
Selection persistent_select(std::span<const double> obs, std::span<const double> qvalues,
                            RuleStore& store, const DiscretizationScheme& scheme,
                            advice::Advisor& advisor, double reuse_probability,
                            double epsilon, SelectionStreams streams);

}  // namespace pirl::persistence
