#include "pirl/harness/agent.hpp"

#include <algorithm>

#include "pirl/error.hpp"
#include "pirl/qnet/dqn.hpp"

namespace pirl::harness {

AgentStreams AgentStreams::from_seed(std::uint64_t seed) {
  return {Rng::substream(seed, "env"),     Rng::substream(seed, "init"),
          Rng::substream(seed, "policy"),  Rng::substream(seed, "advisor"),
          Rng::substream(seed, "reuse"),   Rng::substream(seed, "replay")};
}

namespace {

std::vector<std::size_t> layer_sizes(const qnet::HyperParams& hp, std::size_t in, std::size_t out) {
  std::vector<std::size_t> sizes{in};
  sizes.insert(sizes.end(), hp.hidden_layers.begin(), hp.hidden_layers.end());
  sizes.push_back(out);
  return sizes;
}

}  // namespace

Agent::Agent(AgentSetup setup, std::size_t observation_size, std::size_t action_count,
             std::uint64_t seed, advice::Advisor* advisor)
    : setup_(std::move(setup)),
      streams_(AgentStreams::from_seed(seed)),
      advisor_(advisor),
      replay_(setup_.hyperparams.buffer_capacity) {
  if (uses_advisor(setup_.kind) && advisor_ == nullptr)
    throw UsageError(std::string("agent kind ") + std::string(to_string(setup_.kind)) + " needs an advisor");
  if (is_persistent(setup_.kind) && setup_.discretization.dims.size() != observation_size)
    throw UsageError("discretization scheme does not match the observation size");
  net_ = qnet::QNetwork::create(layer_sizes(setup_.hyperparams, observation_size, action_count), streams_.init);
  target_ = net_;
}

EpisodeMetrics Agent::run_episode(env::Environment& environment, const StepObserver& observer) {
  const qnet::HyperParams& hp = setup_.hyperparams;
  if (environment.observation_size() != net_.input_size() || environment.action_count() != net_.output_size())
    throw UsageError("environment dimensions do not match the agent's network");

  EpisodeMetrics m;
  m.episode = episode_ + 1;
  m.epsilon = qnet::epsilon_at(hp, episode_);
  m.reuse_prob = is_persistent(setup_.kind) ? persistence::ppr_probability(setup_.ppr, episode_) : 0.0;

  env::Observation obs = environment.reset(streams_.env);
  for (;;) {
    const std::vector<double> q = net_.forward(obs);
    std::size_t action = 0;
    persistence::Provenance provenance = persistence::Provenance::Policy;

    if (setup_.kind == AgentKind::RL) {
      action = qnet::epsilon_greedy(q, m.epsilon, streams_.policy);
    } else if (!is_persistent(setup_.kind)) {
      const std::size_t base = qnet::epsilon_greedy(q, m.epsilon, streams_.policy);
      const advice::Advice adv = advisor_->advise(obs, streams_.advisor);
      ++m.advisor_queries;
      const advice::ShapedAction shaped = advice::apply_advice(base, adv);
      action = shaped.action;
      if (shaped.advised) {
        ++m.advice_given;
        provenance = persistence::Provenance::Advisor;
      }
    } else {
      const persistence::Selection sel = persistence::persistent_select(
          obs, q, rules_, setup_.discretization, *advisor_, m.reuse_prob, m.epsilon,
          {streams_.reuse, streams_.advisor, streams_.policy});
      action = sel.action;
      provenance = sel.provenance;
      if (sel.advisor_queried) ++m.advisor_queries;
      if (sel.provenance == persistence::Provenance::Advisor) ++m.advice_given;
      if (sel.provenance == persistence::Provenance::Rule) ++m.rule_hits;
      if (sel.rule_inserted) ++m.rule_inserts;
    }

    env::StepResult step = environment.step(action);
    ++m.steps;
    m.reward += step.reward;

    // Truncation is not a true terminal state, so the target still bootstraps.
    replay_.push({obs, action, step.reward, step.observation, step.terminal});
    ++total_steps_;
    if (replay_.size() >= std::max(hp.train_start, hp.batch_size)) {
      const auto batch = replay_.sample(hp.batch_size, streams_.replay);
      losses_.push_back(qnet::train_batch(net_, target_, batch, hp));
    }
    if (total_steps_ % hp.target_sync_steps == 0) qnet::sync_target(net_, target_);

    if (observer) {
      StepEvent ev;
      ev.episode = m.episode;
      ev.step = m.steps;
      ev.observation = &step.observation;
      ev.action = action;
      ev.reward = step.reward;
      ev.episode_reward = m.reward;
      ev.epsilon = m.epsilon;
      ev.reuse_probability = m.reuse_prob;
      ev.rules = rules_.size();
      ev.provenance = provenance;
      ev.done = step.done();
      observer(ev);
    }

    if (step.done()) break;
    obs = std::move(step.observation);
  }
  ++episode_;
  return m;
}

}  // namespace pirl::harness
