#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pirl/env/environment.hpp"
#include "pirl/harness/metrics.hpp"
#include "pirl/persistence/discretization.hpp"
#include "pirl/persistence/policy_reuse.hpp"
#include "pirl/qnet/hyper_params.hpp"
#include "pirl/session/mailbox.hpp"

namespace pirl::session {

struct SessionConfig {
  env::EnvSpec env = env::EnvSpec::cartpole_default();
  qnet::HyperParams hyperparams;
  persistence::DiscretizationScheme discretization = persistence::DiscretizationScheme::cartpole_default();
  persistence::PprParams ppr;
  std::string address = "127.0.0.1";
  std::uint16_t port = 8765;  // 0 picks a free port
  int frame_ms = 50;
  std::uint64_t seed = 1;
  int episodes = 0;  // 0 = until stop()
};

// Live persistent-IRL session. A WebSocket endpoint streams one JSON frame
// per step to a single console and feeds console advice into a latest-wins
// mailbox that the training loop polls without waiting.
class SessionServer {
 public:
  // Binds and listens immediately; throws IoError when the port is taken.
  explicit SessionServer(SessionConfig config);
  ~SessionServer();

  SessionServer(const SessionServer&) = delete;
  SessionServer& operator=(const SessionServer&) = delete;

  std::uint16_t port() const noexcept;

  // Runs the training loop on the calling thread until the configured
  // episode count is reached or stop() is called. Returns per-episode
  // metrics.
  std::vector<harness::EpisodeMetrics> run();
  void stop() noexcept;

  bool client_connected() const noexcept;
  std::uint64_t message_errors() const noexcept;
  std::uint64_t advice_received() const noexcept;
  const persistence::RuleStore& rules() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pirl::session
