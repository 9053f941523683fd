#include "pirl/harness/metrics.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "pirl/error.hpp"

namespace pirl::harness {

namespace {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

template <typename T>
T parse_field(const std::string& s, const char* name, std::size_t line) {
  T value{};
  auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw ValidationError(std::string("csv.") + name,
                          "line " + std::to_string(line) + ": cannot parse '" + s + "'");
  return value;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, ',')) out.push_back(cur);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

void write_csv(const MetricsTable& table, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const SeedRun& run : table.runs) {
    for (const EpisodeMetrics& m : run.episodes) {
      out << table.run_id << ',' << run.seed << ',' << table.agent_kind << ',' << m.episode << ','
          << m.steps << ',' << format_double(m.reward) << ',' << m.advisor_queries << ','
          << m.advice_given << ',' << m.rule_hits << ',' << m.rule_inserts << ','
          << format_double(m.epsilon) << ',' << format_double(m.reuse_prob) << '\n';
    }
  }
}

void write_csv(const MetricsTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_csv(table, out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<MetricsTable> read_csv(std::istream& in) {
  std::vector<MetricsTable> tables;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line == kCsvHeader) continue;
    const auto f = split(line);
    if (f.size() != 12)
      throw ValidationError("csv", "line " + std::to_string(line_no) + ": expected 12 columns");

    EpisodeMetrics m;
    const auto seed = parse_field<std::uint64_t>(f[1], "seed", line_no);
    m.episode = parse_field<int>(f[3], "episode", line_no);
    m.steps = parse_field<int>(f[4], "steps", line_no);
    m.reward = parse_field<double>(f[5], "reward", line_no);
    m.advisor_queries = parse_field<std::uint64_t>(f[6], "advisor_queries", line_no);
    m.advice_given = parse_field<std::uint64_t>(f[7], "advice_given", line_no);
    m.rule_hits = parse_field<std::uint64_t>(f[8], "rule_hits", line_no);
    m.rule_inserts = parse_field<std::uint64_t>(f[9], "rule_inserts", line_no);
    m.epsilon = parse_field<double>(f[10], "epsilon", line_no);
    m.reuse_prob = parse_field<double>(f[11], "reuse_prob", line_no);

    if (tables.empty() || tables.back().run_id != f[0] || tables.back().agent_kind != f[2])
      tables.push_back({f[0], f[2], {}});
    auto& runs = tables.back().runs;
    if (runs.empty() || runs.back().seed != seed) runs.push_back({seed, {}});
    runs.back().episodes.push_back(m);
  }
  return tables;
}

std::vector<MetricsTable> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return read_csv(in);
}

}  // namespace pirl::harness
