#include "cfaloha/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cfaloha {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("bad value for '" + std::string(key) + "': '" +
                                std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw std::invalid_argument("bad boolean for '" + std::string(key) + "'");
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (!item.empty()) parts.push_back(item);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return parts;
}

template <typename T>
std::vector<T> parse_list(std::string_view key, std::string_view text) {
  std::vector<T> out;
  for (auto item : split_list(text)) out.push_back(parse_number<T>(key, item));
  return out;
}

}  // namespace

std::vector<double> SimulationConfig::default_pi_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 20; ++i) grid.push_back(0.05 * i);
  return grid;
}

FrameTiming SimulationConfig::timing() const {
  return FrameTiming{tau_d, tau_c, bandwidth_hz, prefactor};
}

ReceiverConfig SimulationConfig::receiver(Network mode) const {
  ReceiverConfig rx;
  rx.mode = mode;
  rx.noise_power = noise_power_w();
  rx.tx_powers.assign(static_cast<std::size_t>(num_users), tx_power_w());
  rx.capture_threshold = alpha_linear();
  return rx;
}

void SimulationConfig::validate() const {
  if (num_users < 1) throw std::invalid_argument("K must be >= 1");
  area.validate();
  timing().validate();
  if (num_aps < 1) throw std::invalid_argument("L must be >= 1");
  if (antennas_per_ap < 1) throw std::invalid_argument("N must be >= 1");
  if (total_antennas && *total_antennas != num_aps * antennas_per_ap) {
    throw std::invalid_argument("L * N must equal M");
  }
  if (cluster_size < 1) throw std::invalid_argument("cluster size must be >= 1");
  if (!std::isfinite(noise_dbm) || !std::isfinite(tx_power_dbm) || !std::isfinite(alpha_db)) {
    throw std::invalid_argument("power levels must be finite");
  }
  if (!(min_distance_m > 0.0)) throw std::invalid_argument("minimum distance must be positive");
  if (!(pi >= 0.0 && pi <= 1.0)) throw std::invalid_argument("pi must lie in [0, 1]");
  for (double p : pi_grid) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("pi grid values must lie in [0, 1]");
  }
  for (int n : n_grid) {
    if (n < 1) throw std::invalid_argument("N grid values must be >= 1");
  }
  for (int l : l_grid) {
    if (l < 1) throw std::invalid_argument("L grid values must be >= 1");
  }
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (first_trial < 0) throw std::invalid_argument("first trial must be >= 0");
  if (networks.empty()) throw std::invalid_argument("select at least one network");
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
}

void apply_config_value(SimulationConfig& cfg, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "K" || key == "num_users") {
    cfg.num_users = parse_number<int>(key, value);
  } else if (key == "side_length" || key == "area_side") {
    cfg.area.side_length = parse_number<double>(key, value);
  } else if (key == "wrap") {
    cfg.area.wrap = parse_bool(key, value);
  } else if (key == "B" || key == "bandwidth_hz") {
    cfg.bandwidth_hz = parse_number<double>(key, value);
  } else if (key == "noise_dbm") {
    cfg.noise_dbm = parse_number<double>(key, value);
  } else if (key == "tau_d") {
    cfg.tau_d = parse_number<double>(key, value);
  } else if (key == "tau_c") {
    cfg.tau_c = parse_number<double>(key, value);
  } else if (key == "alpha_db") {
    cfg.alpha_db = parse_number<double>(key, value);
  } else if (key == "M" || key == "total_antennas") {
    cfg.total_antennas = parse_number<int>(key, value);
  } else if (key == "L" || key == "num_aps") {
    cfg.num_aps = parse_number<int>(key, value);
  } else if (key == "N" || key == "antennas_per_ap") {
    cfg.antennas_per_ap = parse_number<int>(key, value);
  } else if (key == "cluster_size") {
    cfg.cluster_size = parse_number<int>(key, value);
  } else if (key == "tx_power_dbm") {
    cfg.tx_power_dbm = parse_number<double>(key, value);
  } else if (key == "min_distance_m") {
    cfg.min_distance_m = parse_number<double>(key, value);
  } else if (key == "pi") {
    cfg.pi = parse_number<double>(key, value);
  } else if (key == "pi_grid") {
    cfg.pi_grid = parse_list<double>(key, value);
  } else if (key == "n_grid") {
    cfg.n_grid = parse_list<int>(key, value);
  } else if (key == "l_grid") {
    cfg.l_grid = parse_list<int>(key, value);
  } else if (key == "trials") {
    cfg.trials = parse_number<std::int64_t>(key, value);
  } else if (key == "first_trial") {
    cfg.first_trial = parse_number<std::int64_t>(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "networks" || key == "network") {
    cfg.networks.clear();
    for (auto name : split_list(value)) cfg.networks.push_back(parse_network(name));
  } else if (key == "fixed_layout") {
    cfg.fixed_layout = parse_bool(key, value);
  } else if (key == "throughput_prefactor") {
    cfg.prefactor = parse_prefactor(value);
  } else if (key == "serving_rule") {
    cfg.serving_rule = parse_serving_rule(value);
  } else if (key == "threads") {
    cfg.threads = parse_number<int>(key, value);
  } else {
    throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
  }
}

void apply_config_text(SimulationConfig& cfg, std::string_view text) {
  int line_number = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("line " + std::to_string(line_number) + ": expected key = value");
    }
    try {
      apply_config_value(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(line_number) + ": " + e.what());
    }
  }
}

SimulationConfig load_config_file(const std::filesystem::path& path, SimulationConfig base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  apply_config_text(base, buffer.str());
  return base;
}

}  // namespace cfaloha
