#include "pirl/harness/oracle_training.hpp"

#include "pirl/advice/advisor.hpp"
#include "pirl/error.hpp"
#include "pirl/harness/agent.hpp"
#include "pirl/persistence/discretization.hpp"

namespace pirl::harness {

OracleTrainingResult train_oracle(const OracleTrainingOptions& opt) {
  if (opt.max_episodes < 1 || opt.eval_every < 1 || opt.eval_episodes < 1)
    throw UsageError("oracle training needs positive episode counts");
  auto environment = env::make_environment(opt.env);
  Agent agent({AgentKind::RL, opt.hyperparams, persistence::DiscretizationScheme::default_for(opt.env), {}},
              environment->observation_size(), environment->action_count(), opt.seed, nullptr);

  OracleTrainingResult best;
  best.score = -std::numeric_limits<double>::infinity();
  for (int e = 1; e <= opt.max_episodes; ++e) {
    agent.run_episode(*environment);
    if (e % opt.eval_every != 0) continue;
    const double score = advice::evaluate_greedy(agent.network(), opt.env, opt.eval_episodes, opt.seed + 1000003);
    if (score > best.score) {
      best.network = agent.network();
      best.score = score;
      best.episodes = e;
    }
    if (score >= opt.gate) {
      best.passed = true;
      break;
    }
  }
  if (!best.passed) best.episodes = opt.max_episodes;
  return best;
}

}  // namespace pirl::harness
