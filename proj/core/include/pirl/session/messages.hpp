#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pirl::session {

// Server -> console, one per environment step.
struct FrameMessage {
  int episode = 0;
  int step = 0;
  std::vector<double> obs;
  std::size_t last_action = 0;
  double last_reward = 0.0;
  double ep_reward = 0.0;
  double epsilon = 0.0;
  double reuse_prob = 0.0;
  std::size_t rules = 0;

  friend bool operator==(const FrameMessage&, const FrameMessage&) = default;
};

// Server -> console, once per finished episode.
struct EpisodeEndMessage {
  int episode = 0;
  double reward = 0.0;
  int steps = 0;

  friend bool operator==(const EpisodeEndMessage&, const EpisodeEndMessage&) = default;
};

// Console -> server.
struct AdviceMessage {
  enum class Type { Advice, None };
  Type type = Type::None;
  std::size_t action = 0;  // meaningful when type == Advice
  double ts = 0.0;         // client timestamp

  friend bool operator==(const AdviceMessage&, const AdviceMessage&) = default;
};

// Fixed key order, reals printed with at most 6 significant digits.
std::string encode_frame(const FrameMessage& m);
std::string encode_episode_end(const EpisodeEndMessage& m);
std::string encode_advice(const AdviceMessage& m);

std::optional<FrameMessage> decode_frame(std::string_view text);
std::optional<EpisodeEndMessage> decode_episode_end(std::string_view text);
// Empty for malformed JSON, unknown types, or an action outside
// [0, action_count).
std::optional<AdviceMessage> decode_advice(std::string_view text, std::size_t action_count);

}  // namespace pirl::session
