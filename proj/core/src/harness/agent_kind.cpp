#include "pirl/harness/agent_kind.hpp"

#include <string>

#include "pirl/error.hpp"

namespace pirl::harness {

std::string_view to_string(AgentKind kind) {
  switch (kind) {
    case AgentKind::RL:
      return "RL";
    case AgentKind::NPP:
      return "NPP";
    case AgentKind::NPR:
      return "NPR";
    case AgentKind::NPO:
      return "NPO";
    case AgentKind::PP:
      return "PP";
    case AgentKind::PR:
      return "PR";
    case AgentKind::PO:
      return "PO";
    case AgentKind::IrlHuman:
      return "IRL-HUMAN";
  }
  return "unknown";
}

AgentKind agent_kind_from_string(std::string_view name) {
  for (AgentKind k : kSimulatedKinds)
    if (name == to_string(k)) return k;
  if (name == "IRL-HUMAN") return AgentKind::IrlHuman;
  throw ValidationError("agent", "unknown agent kind '" + std::string(name) + "'");
}

bool uses_advisor(AgentKind kind) { return kind != AgentKind::RL; }

bool is_persistent(AgentKind kind) {
  return kind == AgentKind::PP || kind == AgentKind::PR || kind == AgentKind::PO ||
         kind == AgentKind::IrlHuman;
}

std::optional<advice::AdvisorProfile> default_profile(AgentKind kind) {
  switch (kind) {
    case AgentKind::NPP:
    case AgentKind::PP:
      return advice::AdvisorProfile::pessimistic();
    case AgentKind::NPR:
    case AgentKind::PR:
      return advice::AdvisorProfile::real();
    case AgentKind::NPO:
    case AgentKind::PO:
      return advice::AdvisorProfile::optimistic();
    default:
      return std::nullopt;
  }
}

}  // namespace pirl::harness
