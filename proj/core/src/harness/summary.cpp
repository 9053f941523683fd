#include "pirl/harness/summary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pirl/error.hpp"

namespace pirl::harness {

std::optional<int> convergence_episode(std::span<const double> rewards, double threshold,
                                       std::size_t window) {
  if (window == 0 || rewards.size() < window) return std::nullopt;
  double sum = 0.0;
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    sum += rewards[i];
    if (i >= window) sum -= rewards[i - window];
    if (i + 1 >= window && sum / static_cast<double>(window) >= threshold) return static_cast<int>(i + 1);
  }
  return std::nullopt;
}

Summary summarize(const MetricsTable& table, double threshold) {
  if (table.runs.empty()) throw UsageError("summarize: no runs");
  Summary s;
  s.run_id = table.run_id;
  s.agent_kind = table.agent_kind;
  s.seeds = table.runs.size();
  s.episodes = table.runs.front().episodes.size();
  s.threshold = threshold;
  for (const SeedRun& r : table.runs)
    if (r.episodes.size() != s.episodes)
      throw UsageError("summarize: seed " + std::to_string(r.seed) + " has " + std::to_string(r.episodes.size()) +
                       " episodes, expected " + std::to_string(s.episodes));

  s.mean_reward.assign(s.episodes, 0.0);
  s.stddev_reward.assign(s.episodes, 0.0);
  const double n = static_cast<double>(s.seeds);
  for (std::size_t e = 0; e < s.episodes; ++e) {
    double sum = 0.0;
    for (const SeedRun& r : table.runs) sum += r.episodes[e].reward;
    const double mean = sum / n;
    double var = 0.0;
    for (const SeedRun& r : table.runs) var += (r.episodes[e].reward - mean) * (r.episodes[e].reward - mean);
    s.mean_reward[e] = mean;
    s.stddev_reward[e] = std::sqrt(var / n);
  }

  s.moving_average.resize(s.episodes);
  double window_sum = 0.0;
  for (std::size_t e = 0; e < s.episodes; ++e) {
    window_sum += s.mean_reward[e];
    if (e >= kMovingWindow) window_sum -= s.mean_reward[e - kMovingWindow];
    s.moving_average[e] = window_sum / static_cast<double>(std::min(e + 1, kMovingWindow));
  }
  s.convergence_episode = convergence_episode(s.mean_reward, threshold);

  for (const SeedRun& r : table.runs) {
    std::vector<double> rewards;
    rewards.reserve(r.episodes.size());
    for (const auto& m : r.episodes) {
      rewards.push_back(m.reward);
      s.total_advisor_queries += m.advisor_queries;
      s.total_advice_given += m.advice_given;
      s.total_rule_hits += m.rule_hits;
      s.total_rule_inserts += m.rule_inserts;
      s.total_reward += m.reward;
    }
    s.seed_convergence.push_back(convergence_episode(rewards, threshold));
  }
  return s;
}

double mean_seed_convergence(const Summary& s) {
  if (s.seed_convergence.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& c : s.seed_convergence) sum += c ? *c : static_cast<double>(s.episodes + 1);
  return sum / static_cast<double>(s.seed_convergence.size());
}

nlohmann::json summary_to_json(const Summary& s) {
  nlohmann::json j;
  j["run_id"] = s.run_id;
  j["agent_kind"] = s.agent_kind;
  j["seeds"] = s.seeds;
  j["episodes"] = s.episodes;
  j["threshold"] = s.threshold;
  j["convergence_episode"] = s.convergence_episode ? nlohmann::json(*s.convergence_episode) : nlohmann::json();
  nlohmann::json per_seed = nlohmann::json::array();
  for (const auto& c : s.seed_convergence) per_seed.push_back(c ? nlohmann::json(*c) : nlohmann::json());
  j["seed_convergence"] = per_seed;
  j["mean_seed_convergence"] = mean_seed_convergence(s);
  j["total_advisor_queries"] = s.total_advisor_queries;
  j["total_advice_given"] = s.total_advice_given;
  j["total_rule_hits"] = s.total_rule_hits;
  j["total_rule_inserts"] = s.total_rule_inserts;
  j["total_reward"] = s.total_reward;
  j["mean_reward"] = s.mean_reward;
  j["stddev_reward"] = s.stddev_reward;
  j["moving_average"] = s.moving_average;
  return j;
}

std::string learning_curve_svg(std::span<const Summary> summaries) {
  constexpr double kWidth = 800, kHeight = 480, kLeft = 60, kRight = 150, kTop = 20, kBottom = 40;
  static constexpr const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                            "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  std::size_t max_ep = 1;
  double lo = 0.0, hi = 1.0;
  for (const auto& s : summaries) {
    max_ep = std::max(max_ep, s.episodes);
    for (double v : s.moving_average) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
  auto px = [&](std::size_t e) { return kLeft + plot_w * static_cast<double>(e) / static_cast<double>(std::max<std::size_t>(max_ep, 2) - 1); };
  auto py = [&](double v) { return kTop + plot_h * (1.0 - (v - lo) / (hi - lo)); };

  std::ostringstream svg;
  svg.precision(6);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w << "\" y2=\""
      << kTop + plot_h << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + plot_h
      << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 8 << "\" text-anchor=\"middle\">episode</text>\n";
  svg << "<text x=\"14\" y=\"" << kTop + plot_h / 2 << "\" transform=\"rotate(-90 14 " << kTop + plot_h / 2
      << ")\" text-anchor=\"middle\">reward (50-episode mean)</text>\n";
  svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(hi) + 4 << "\" text-anchor=\"end\">" << hi << "</text>\n";
  svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(lo) << "\" text-anchor=\"end\">" << lo << "</text>\n";
  svg << "<text x=\"" << kLeft + plot_w << "\" y=\"" << kTop + plot_h + 16 << "\" text-anchor=\"end\">" << max_ep
      << "</text>\n";

  for (std::size_t k = 0; k < summaries.size(); ++k) {
    const Summary& s = summaries[k];
    const char* color = kColors[k % std::size(kColors)];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t e = 0; e < s.moving_average.size(); ++e)
      svg << (e ? " " : "") << px(e) << ',' << py(s.moving_average[e]);
    svg << "\"/>\n";
    const double ly = kTop + 16.0 * static_cast<double>(k + 1);
    svg << "<text x=\"" << kLeft + plot_w + 10 << "\" y=\"" << ly << "\" fill=\"" << color << "\">"
        << s.agent_kind << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace pirl::harness
