#include "pirl/persistence/rule_store.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pirl/error.hpp"

namespace pirl::persistence {

void RuleStore::insert(const RuleKey& key, std::size_t action) {
  RuleEntry& e = rules_[key];
  e.action = action;
  ++e.inserts;
}

std::optional<std::size_t> RuleStore::lookup(const RuleKey& key) {
  auto it = rules_.find(key);
  if (it == rules_.end()) return std::nullopt;
  ++it->second.hits;
  return it->second.action;
}

const RuleEntry* RuleStore::find(const RuleKey& key) const {
  auto it = rules_.find(key);
  return it == rules_.end() ? nullptr : &it->second;
}

std::string RuleStore::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [key, e] : rules_)
    arr.push_back({{"key", key.bins}, {"action", e.action}, {"inserts", e.inserts}, {"hits", e.hits}});
  return arr.dump();
}

RuleStore RuleStore::from_json(const std::string& text) {
  RuleStore store;
  try {
    const auto arr = nlohmann::json::parse(text);
    if (!arr.is_array()) throw ValidationError("rules", "snapshot must be a JSON array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto& item = arr[i];
      RuleKey key{item.at("key").get<std::vector<std::uint32_t>>()};
      RuleEntry e{item.at("action").get<std::size_t>(), item.at("inserts").get<std::uint64_t>(),
                  item.at("hits").get<std::uint64_t>()};
      if (!store.rules_.emplace(std::move(key), e).second)
        throw ValidationError("rules[" + std::to_string(i) + "].key", "duplicate key");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("rules", e.what());
  }
  return store;
}

void RuleStore::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << to_json() << '\n';
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

RuleStore RuleStore::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open rule snapshot '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

}  // namespace pirl::persistence
