#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "pirl/advice/advisor.hpp"

namespace pirl::harness {

// RL: no advisor. NP*: advice applied each step and then forgotten.
// P*: advice stored as rules and replayed via policy reuse. The suffix names
// the simulated advisor (Pessimistic, Real, Optimistic). IrlHuman is the
// persistent agent driven by a live trainer.
enum class AgentKind { RL, NPP, NPR, NPO, PP, PR, PO, IrlHuman };

inline constexpr std::array<AgentKind, 7> kSimulatedKinds{
    AgentKind::RL, AgentKind::NPP, AgentKind::NPR, AgentKind::NPO,
    AgentKind::PP, AgentKind::PR,  AgentKind::PO};

std::string_view to_string(AgentKind kind);
// Throws ValidationError("agent", ...) for unknown names.
AgentKind agent_kind_from_string(std::string_view name);

bool uses_advisor(AgentKind kind);
bool is_persistent(AgentKind kind);
// Advisor profile implied by the kind; empty for RL and IrlHuman.
std::optional<advice::AdvisorProfile> default_profile(AgentKind kind);

}  // namespace pirl::harness
