#include "pirl/harness/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pirl/error.hpp"

#ifndef PIRL_DATA_DIR
#define PIRL_DATA_DIR "data"
#endif

namespace pirl::harness {

using nlohmann::json;

namespace {

// Reads typed fields from a JSON object and rejects keys nobody asked for.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ValidationError(path_, "expected a JSON object");
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  template <typename T>
  void read(const std::string& key, T& out) {
    if (!has(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ValidationError(field(key), std::string("wrong type: ") + e.what());
    }
  }

  void finish() const {
    for (const auto& [key, _] : j_.items())
      if (!seen_.count(key)) throw ValidationError(field(key), "unknown field");
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

env::Vec2 read_point(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ValidationError(path, "expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::filesystem::path default_oracle_path(env::EnvKind kind) {
  return std::filesystem::path(PIRL_DATA_DIR) / ("oracle_" + std::string(env::to_string(kind)) + ".json");
}

advice::AdvisorProfile RunConfig::effective_profile() const {
  if (advisor) return *advisor;
  if (auto p = default_profile(agent)) return *p;
  return {"none", 0.0, 0.0};
}

std::string RunConfig::run_id() const {
  return std::string(to_string(agent)) + "_" + std::string(env::to_string(env.kind));
}

std::filesystem::path RunConfig::oracle_path() const {
  return oracle ? *oracle : default_oracle_path(env.kind);
}

void RunConfig::validate() const {
  env.validate("env");
  hyperparams.validate("hyperparams");
  if (advisor) advisor->validate("advisor");
  discretization.validate("discretization");
  ppr.validate("ppr");
  if (episodes < 1) throw ValidationError("episodes", "must be >= 1");
  if (seeds.empty()) throw ValidationError("seeds", "must be non-empty");
  const std::size_t obs_dim = env.kind == env::EnvKind::CartPole ? 4 : 12;
  if (discretization.dims.size() != obs_dim)
    throw ValidationError("discretization", "needs one entry per observation dimension (" +
                                                std::to_string(obs_dim) + ")");
}

json env_spec_to_json(const env::EnvSpec& spec) {
  json j;
  j["kind"] = env::to_string(spec.kind);
  j["max_steps"] = spec.max_steps;
  if (spec.kind == env::EnvKind::CartPole) {
    const auto& c = spec.cartpole;
    j["gravity"] = c.gravity;
    j["cart_mass"] = c.cart_mass;
    j["pole_mass"] = c.pole_mass;
    j["half_length"] = c.half_length;
    j["force_mag"] = c.force_mag;
    j["dt"] = c.dt;
    j["angle_limit"] = c.angle_limit;
    j["position_limit"] = c.position_limit;
    j["init_bound"] = c.init_bound;
  } else {
    const auto& h = spec.homenav;
    j["width"] = h.width;
    j["height"] = h.height;
    j["step_size"] = h.step_size;
    j["start"] = {h.start.x, h.start.y};
    j["goal"] = {h.goal.x, h.goal.y};
    j["goal_radius"] = h.goal_radius;
    j["ray_clip"] = h.ray_clip;
    j["step_reward"] = h.step_reward;
    j["collision_reward"] = h.collision_reward;
    j["goal_reward"] = h.goal_reward;
    json obs = json::array();
    for (const auto& r : h.obstacles) obs.push_back({r.x0, r.y0, r.x1, r.y1});
    j["obstacles"] = obs;
  }
  return j;
}

env::EnvSpec env_spec_from_json(const json& j, const std::string& prefix) {
  ObjectReader r(j, prefix);
  std::string kind = "cartpole";
  r.read("kind", kind);
  env::EnvSpec spec = kind == "cartpole"  ? env::EnvSpec::cartpole_default()
                      : kind == "homenav" ? env::EnvSpec::homenav_default()
                                          : throw ValidationError(r.field("kind"), "unknown environment '" + kind + "'");
  r.read("max_steps", spec.max_steps);
  if (spec.kind == env::EnvKind::CartPole) {
    auto& c = spec.cartpole;
    r.read("gravity", c.gravity);
    r.read("cart_mass", c.cart_mass);
    r.read("pole_mass", c.pole_mass);
    r.read("half_length", c.half_length);
    r.read("force_mag", c.force_mag);
    r.read("dt", c.dt);
    r.read("angle_limit", c.angle_limit);
    r.read("position_limit", c.position_limit);
    r.read("init_bound", c.init_bound);
  } else {
    auto& h = spec.homenav;
    r.read("width", h.width);
    r.read("height", h.height);
    r.read("step_size", h.step_size);
    if (r.has("start")) h.start = read_point(r.raw("start"), r.field("start"));
    if (r.has("goal")) h.goal = read_point(r.raw("goal"), r.field("goal"));
    r.read("goal_radius", h.goal_radius);
    r.read("ray_clip", h.ray_clip);
    r.read("step_reward", h.step_reward);
    r.read("collision_reward", h.collision_reward);
    r.read("goal_reward", h.goal_reward);
    if (r.has("obstacles")) {
      const json& arr = r.raw("obstacles");
      if (!arr.is_array()) throw ValidationError(r.field("obstacles"), "expected an array");
      h.obstacles.clear();
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string path = r.field("obstacles") + "[" + std::to_string(i) + "]";
        const json& o = arr[i];
        if (!o.is_array() || o.size() != 4) throw ValidationError(path, "expected [x0, y0, x1, y1]");
        try {
          h.obstacles.push_back({o[0].get<double>(), o[1].get<double>(), o[2].get<double>(), o[3].get<double>()});
        } catch (const json::exception&) {
          throw ValidationError(path, "expected four numbers");
        }
      }
    }
  }
  r.finish();
  return spec;
}

std::vector<RunConfig> parse_configs(const json& j) {
  ObjectReader top(j, "");
  RunConfig base;

  if (top.has("env")) base.env = env_spec_from_json(top.raw("env"), "env");
  base.discretization = persistence::DiscretizationScheme::default_for(base.env);

  std::vector<AgentKind> kinds{AgentKind::RL};
  if (top.has("agent")) {
    const json& a = top.raw("agent");
    kinds.clear();
    if (a.is_string()) {
      kinds.push_back(agent_kind_from_string(a.get<std::string>()));
    } else if (a.is_array() && !a.empty()) {
      for (const auto& item : a) {
        if (!item.is_string()) throw ValidationError("agent", "expected agent kind names");
        kinds.push_back(agent_kind_from_string(item.get<std::string>()));
      }
    } else {
      throw ValidationError("agent", "expected a kind name or a non-empty array of names");
    }
  }

  if (top.has("hyperparams")) {
    ObjectReader r(top.raw("hyperparams"), "hyperparams");
    auto& hp = base.hyperparams;
    r.read("gamma", hp.gamma);
    r.read("learning_rate", hp.learning_rate);
    r.read("epsilon_start", hp.epsilon_start);
    r.read("epsilon_decay", hp.epsilon_decay);
    r.read("epsilon_min", hp.epsilon_min);
    r.read("batch_size", hp.batch_size);
    r.read("target_sync_steps", hp.target_sync_steps);
    r.read("train_start", hp.train_start);
    r.read("buffer_capacity", hp.buffer_capacity);
    r.read("hidden_layers", hp.hidden_layers);
    r.finish();
  }

  if (top.has("advisor")) {
    ObjectReader r(top.raw("advisor"), "advisor");
    advice::AdvisorProfile p{"custom", 0.0, 0.0};
    r.read("name", p.name);
    if (!r.has("frequency")) throw ValidationError("advisor.frequency", "required");
    if (!r.has("accuracy")) throw ValidationError("advisor.accuracy", "required");
    r.read("frequency", p.frequency);
    r.read("accuracy", p.accuracy);
    r.finish();
    base.advisor = p;
  }

  if (top.has("discretization")) {
    const json& arr = top.raw("discretization");
    if (!arr.is_array()) throw ValidationError("discretization", "expected an array of {lo, hi, bins}");
    base.discretization.dims.clear();
    for (std::size_t i = 0; i < arr.size(); ++i) {
      ObjectReader r(arr[i], "discretization[" + std::to_string(i) + "]");
      persistence::BinRange b;
      r.read("lo", b.lo);
      r.read("hi", b.hi);
      r.read("bins", b.bins);
      r.finish();
      base.discretization.dims.push_back(b);
    }
  }

  if (top.has("ppr")) {
    ObjectReader r(top.raw("ppr"), "ppr");
    r.read("initial", base.ppr.initial);
    r.read("decay", base.ppr.decay);
    r.finish();
  }

  top.read("episodes", base.episodes);
  top.read("seeds", base.seeds);
  if (top.has("out_dir")) {
    std::string out;
    top.read("out_dir", out);
    base.out_dir = out;
  }
  if (top.has("oracle")) {
    std::string oracle;
    top.read("oracle", oracle);
    base.oracle = oracle;
  }
  top.finish();

  std::vector<RunConfig> out;
  for (AgentKind k : kinds) {
    if (k == AgentKind::IrlHuman)
      throw ValidationError("agent", "IRL-HUMAN needs a live trainer; use the serve command");
    RunConfig c = base;
    c.agent = k;
    c.validate();
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<RunConfig> load_configs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("config", std::string("malformed JSON: ") + e.what());
  }
  return parse_configs(j);
}

RunConfig load_config(const std::filesystem::path& path) {
  auto configs = load_configs(path);
  if (configs.size() != 1) throw ValidationError("agent", "expected exactly one agent kind");
  return std::move(configs.front());
}

}  // namespace pirl::harness
