#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "pirl/persistence/discretization.hpp"

namespace pirl::persistence {

struct RuleEntry {
  std::size_t action = 0;
  std::uint64_t inserts = 0;
  std::uint64_t hits = 0;

  friend bool operator==(const RuleEntry&, const RuleEntry&) = default;
};

// Advised actions keyed by discretized state. Newer advice for a key
// replaces older advice.
class RuleStore {
 public:
  void insert(const RuleKey& key, std::size_t action);
  // Counts a hit when the key is present.
  std::optional<std::size_t> lookup(const RuleKey& key);
  // Lookup without touching statistics.
  const RuleEntry* find(const RuleKey& key) const;

  std::size_t size() const noexcept { return rules_.size(); }
  bool empty() const noexcept { return rules_.empty(); }
  const std::map<RuleKey, RuleEntry>& entries() const noexcept { return rules_; }

  // Snapshot: JSON array of {"key":[...],"action":a,"inserts":n,"hits":n},
  // ordered by key.
  std::string to_json() const;
  static RuleStore from_json(const std::string& text);
  void save(const std::filesystem::path& path) const;
  static RuleStore load(const std::filesystem::path& path);

  friend bool operator==(const RuleStore&, const RuleStore&) = default;

 private:
  std::map<RuleKey, RuleEntry> rules_;
};

}  // namespace pirl::persistence
