#include "pirl/session/messages.hpp"

#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

namespace pirl::session {

namespace {

using nlohmann::json;

void put_real(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  if (std::string_view(buf) == "-0") {
    out += '0';
    return;
  }
  out += buf;
}

std::optional<json> parse_object(std::string_view text) {
  json j = json::parse(text.begin(), text.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  return j;
}

bool has_number(const json& j, const char* key) { return j.contains(key) && j[key].is_number(); }
bool has_unsigned(const json& j, const char* key) {
  return j.contains(key) && j[key].is_number_integer() && j[key].get<long long>() >= 0;
}

}  // namespace

std::string encode_frame(const FrameMessage& m) {
  std::string out = "{\"type\":\"frame\",\"episode\":" + std::to_string(m.episode) +
                    ",\"step\":" + std::to_string(m.step) + ",\"obs\":[";
  for (std::size_t i = 0; i < m.obs.size(); ++i) {
    if (i) out += ',';
    put_real(out, m.obs[i]);
  }
  out += "],\"last_action\":" + std::to_string(m.last_action) + ",\"last_reward\":";
  put_real(out, m.last_reward);
  out += ",\"ep_reward\":";
  put_real(out, m.ep_reward);
  out += ",\"epsilon\":";
  put_real(out, m.epsilon);
  out += ",\"reuse_prob\":";
  put_real(out, m.reuse_prob);
  out += ",\"rules\":" + std::to_string(m.rules) + "}";
  return out;
}

std::string encode_episode_end(const EpisodeEndMessage& m) {
  std::string out = "{\"type\":\"episode_end\",\"episode\":" + std::to_string(m.episode) + ",\"reward\":";
  put_real(out, m.reward);
  out += ",\"steps\":" + std::to_string(m.steps) + "}";
  return out;
}

std::string encode_advice(const AdviceMessage& m) {
  if (m.type == AdviceMessage::Type::None) return "{\"type\":\"none\"}";
  std::string out = "{\"type\":\"advice\",\"action\":" + std::to_string(m.action) + ",\"ts\":";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", m.ts);
  out += buf;
  out += '}';
  return out;
}

std::optional<FrameMessage> decode_frame(std::string_view text) {
  auto j = parse_object(text);
  if (!j || j->value("type", "") != "frame") return std::nullopt;
  const json& o = *j;
  if (!o.contains("episode") || !o["episode"].is_number_integer() || !o.contains("step") ||
      !o["step"].is_number_integer() || !o.contains("obs") || !o["obs"].is_array() ||
      !has_unsigned(o, "last_action") || !has_number(o, "last_reward") || !has_number(o, "ep_reward") ||
      !has_number(o, "epsilon") || !has_number(o, "reuse_prob") || !has_unsigned(o, "rules"))
    return std::nullopt;
  FrameMessage m;
  m.episode = o["episode"].get<int>();
  m.step = o["step"].get<int>();
  for (const auto& v : o["obs"]) {
    if (!v.is_number()) return std::nullopt;
    m.obs.push_back(v.get<double>());
  }
  m.last_action = o["last_action"].get<std::size_t>();
  m.last_reward = o["last_reward"].get<double>();
  m.ep_reward = o["ep_reward"].get<double>();
  m.epsilon = o["epsilon"].get<double>();
  m.reuse_prob = o["reuse_prob"].get<double>();
  m.rules = o["rules"].get<std::size_t>();
  return m;
}

std::optional<EpisodeEndMessage> decode_episode_end(std::string_view text) {
  auto j = parse_object(text);
  if (!j || j->value("type", "") != "episode_end") return std::nullopt;
  const json& o = *j;
  if (!o.contains("episode") || !o["episode"].is_number_integer() || !has_number(o, "reward") ||
      !o.contains("steps") || !o["steps"].is_number_integer())
    return std::nullopt;
  return EpisodeEndMessage{o["episode"].get<int>(), o["reward"].get<double>(), o["steps"].get<int>()};
}

std::optional<AdviceMessage> decode_advice(std::string_view text, std::size_t action_count) {
  auto j = parse_object(text);
  if (!j || !j->contains("type") || !(*j)["type"].is_string()) return std::nullopt;
  const std::string type = (*j)["type"].get<std::string>();
  if (type == "none") return AdviceMessage{AdviceMessage::Type::None, 0, 0.0};
  if (type != "advice" || !has_unsigned(*j, "action")) return std::nullopt;
  AdviceMessage m;
  m.type = AdviceMessage::Type::Advice;
  m.action = (*j)["action"].get<std::size_t>();
  if (m.action >= action_count) return std::nullopt;
  if (j->contains("ts")) {
    if (!(*j)["ts"].is_number()) return std::nullopt;
    m.ts = (*j)["ts"].get<double>();
  }
  return m;
}

}  // namespace pirl::session
