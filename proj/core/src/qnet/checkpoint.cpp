#include "pirl/qnet/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pirl/error.hpp"

namespace pirl::qnet {

namespace {
constexpr const char* kFormat = "pirl-qnet";
constexpr int kVersion = 1;
}  // namespace

std::string network_to_json(const QNetwork& net) {
  nlohmann::json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["layer_sizes"] = net.layer_sizes();
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : net.layers()) {
    std::vector<double> w;
    w.reserve(static_cast<std::size_t>(l.weights.size()));
    for (Eigen::Index r = 0; r < l.weights.rows(); ++r)
      for (Eigen::Index c = 0; c < l.weights.cols(); ++c) w.push_back(l.weights(r, c));
    layers.push_back({{"weights", w}, {"bias", std::vector<double>(l.bias.data(), l.bias.data() + l.bias.size())}});
  }
  j["layers"] = std::move(layers);
  return j.dump();
}

QNetwork network_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("checkpoint", std::string("malformed JSON: ") + e.what());
  }
  if (j.value("format", "") != kFormat) throw ValidationError("checkpoint.format", "expected 'pirl-qnet'");
  if (j.value("version", 0) != kVersion) throw ValidationError("checkpoint.version", "unsupported version");
  try {
    const auto sizes = j.at("layer_sizes").get<std::vector<std::size_t>>();
    const auto& layers = j.at("layers");
    if (sizes.size() < 2 || layers.size() != sizes.size() - 1)
      throw ValidationError("checkpoint.layers", "layer count does not match layer_sizes");
    std::vector<DenseLayer> out;
    for (std::size_t k = 0; k < layers.size(); ++k) {
      const auto rows = static_cast<Eigen::Index>(sizes[k + 1]);
      const auto cols = static_cast<Eigen::Index>(sizes[k]);
      const auto w = layers[k].at("weights").get<std::vector<double>>();
      const auto b = layers[k].at("bias").get<std::vector<double>>();
      if (w.size() != static_cast<std::size_t>(rows * cols) || b.size() != static_cast<std::size_t>(rows))
        throw ValidationError("checkpoint.layers[" + std::to_string(k) + "]", "parameter count mismatch");
      DenseLayer l{Eigen::MatrixXd(rows, cols), Eigen::VectorXd(rows)};
      for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) l.weights(r, c) = w[static_cast<std::size_t>(r * cols + c)];
        l.bias(r) = b[static_cast<std::size_t>(r)];
      }
      out.push_back(std::move(l));
    }
    return QNetwork::from_layers(std::move(out));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("checkpoint", e.what());
  }
}

void save_network(const QNetwork& net, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << network_to_json(net) << '\n';
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

QNetwork load_network(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return network_from_json(ss.str());
}

}  // namespace pirl::qnet
