#pragma once

#include <filesystem>
#include <string>

#include "pirl/qnet/network.hpp"

namespace pirl::qnet {

// JSON checkpoint: {"format":"pirl-qnet","version":1,"layer_sizes":[...],
// "layers":[{"weights":[row-major...],"bias":[...]}, ...]}. Doubles are
// written in shortest round-trip form, so load(save(net)) == net exactly.
std::string network_to_json(const QNetwork& net);
QNetwork network_from_json(const std::string& text);

void save_network(const QNetwork& net, const std::filesystem::path& path);
QNetwork load_network(const std::filesystem::path& path);

}  // namespace pirl::qnet
