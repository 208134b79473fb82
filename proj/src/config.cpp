#include "bopcrit/config.hpp"

#include "bopcrit/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bopcrit {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T, typename Fn>
std::string join(const std::vector<T>& items, Fn&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += fmt(items[i]);
  }
  return out;
}

long long parse_int(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size())
    throw std::invalid_argument("config: '" + key + "' must be an integer, got '" + value + "'");
  return v;
}

double parse_real(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size())
    throw std::invalid_argument("config: '" + key + "' must be a number, got '" + value + "'");
  return v;
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: missing '=' on line " + std::to_string(line_no));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "count_ab") cfg.count_ab = static_cast<int>(parse_int(key, value));
    else if (key == "count_er") cfg.count_er = static_cast<int>(parse_int(key, value));
    else if (key == "n_min") cfg.n_min = static_cast<int>(parse_int(key, value));
    else if (key == "n_max") cfg.n_max = static_cast<int>(parse_int(key, value));
    else if (key == "measures") cfg.measures = split_list(value);
    else if (key == "theta_grid") {
      cfg.theta_grid.clear();
      for (const std::string& item : split_list(value))
        cfg.theta_grid.push_back(parse_real(key, item));
    } else if (key == "h_grid") {
      cfg.h_grid.clear();
      for (const std::string& item : split_list(value))
        cfg.h_grid.push_back(static_cast<int>(parse_int(key, item)));
    } else if (key == "strategy") cfg.strategy = value;
    else if (key == "budget") cfg.budget = static_cast<int>(parse_int(key, value));
    else if (key == "cost_policy") cfg.cost_policy = value;
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "jobs") cfg.jobs = static_cast<int>(parse_int(key, value));
    else if (key == "out_dir") cfg.out_dir = value;
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  return parse(in);
}

std::string ExperimentConfig::emit() const {
  std::ostringstream os;
  os << "count_ab = " << count_ab << "\n";
  os << "count_er = " << count_er << "\n";
  os << "n_min = " << n_min << "\n";
  os << "n_max = " << n_max << "\n";
  os << "measures = " << join(measures, [](const std::string& s) { return s; }) << "\n";
  os << "theta_grid = " << join(theta_grid, [](double v) { return format_double(v); }) << "\n";
  os << "h_grid = " << join(h_grid, [](int v) { return std::to_string(v); }) << "\n";
  os << "strategy = " << strategy << "\n";
  os << "budget = " << budget << "\n";
  os << "cost_policy = " << cost_policy << "\n";
  os << "seed = " << seed << "\n";
  os << "jobs = " << jobs << "\n";
  os << "out_dir = " << out_dir << "\n";
  return os.str();
}

void ExperimentConfig::validate() const {
  if (count_ab < 0 || count_er < 0 || count_ab + count_er < 1)
    throw std::invalid_argument("config: population must contain at least one graph");
  if (n_min < 2 || n_max < n_min)
    throw std::invalid_argument("config: need 2 <= n_min <= n_max");
  if (measures.empty()) throw std::invalid_argument("config: measure list is empty");
  for (const std::string& m : measures) MeasureId::parse(m);  // throws on bad ids
  if (theta_grid.empty()) throw std::invalid_argument("config: theta grid is empty");
  for (double t : theta_grid)
    if (!(t > 0.0) || !std::isfinite(t))
      throw std::invalid_argument("config: theta grid values must be positive");
  if (h_grid.empty()) throw std::invalid_argument("config: h grid is empty");
  for (int h : h_grid)
    if (h < 1) throw std::invalid_argument("config: h grid values must be >= 1");
  if (strategy != "single" && strategy != "periodic")
    throw std::invalid_argument("config: strategy must be 'single' or 'periodic'");
  if (budget < 1) throw std::invalid_argument("config: budget must be >= 1");
  if (cost_policy != "reciprocal" && cost_policy != "unit")
    throw std::invalid_argument("config: cost_policy must be 'reciprocal' or 'unit'");
  if (out_dir.empty()) throw std::invalid_argument("config: out_dir is empty");
}

AttackStrategy ExperimentConfig::attack_strategy() const {
  return strategy == "periodic" ? AttackStrategy::periodic(budget) : AttackStrategy::single();
}

CostPolicy ExperimentConfig::policy() const {
  return cost_policy == "unit" ? CostPolicy::unit() : CostPolicy::reciprocal();
}

std::vector<MeasureId> ExperimentConfig::measure_ids() const {
  std::vector<MeasureId> ids;
  ids.reserve(measures.size());
  for (const std::string& m : measures) ids.push_back(MeasureId::parse(m));
  return ids;
}

std::vector<double> ExperimentConfig::grid_for(const MeasureId& id) const {
  if (id.kind == MeasureId::Kind::WK) {
    std::vector<double> grid;
    grid.reserve(h_grid.size());
    for (int h : h_grid) grid.push_back(h);
    return grid;
  }
  return theta_grid;
}

}  // namespace bopcrit
