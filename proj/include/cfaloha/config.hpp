#ifndef CFALOHA_CONFIG_HPP
#define CFALOHA_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cfaloha/detection.hpp"
#include "cfaloha/metrics.hpp"
#include "cfaloha/topology.hpp"

namespace cfaloha {

/// Every knob of a simulation run. Defaults reproduce the reference
/// scenario: 200 users on a wrapped 1 km x 1 km square, 16 APs with 4
/// antennas each (64 in total), 1 MHz, -109 dBm noise, 10 of 20 symbols for
/// data, a 3 dB capture threshold and 4-AP user-centric clusters.
///
/// The capture threshold is a ratio, so `alpha_db` is in dB.
/// Transmit power is not part of the reference scenario; -3 dBm is the
/// default (see README).
struct SimulationConfig {
  int num_users = 200;
  Area area{1000.0, true};
  double bandwidth_hz = 1.0e6;
  double noise_dbm = -109.0;
  double tau_d = 10.0;
  double tau_c = 20.0;
  double alpha_db = 3.0;
  std::optional<int> total_antennas;  // M; defaults to L * N
  int num_aps = 16;
  int antennas_per_ap = 4;
  int cluster_size = 4;
  double tx_power_dbm = -3.0;
  double min_distance_m = kDefaultMinDistance;
  double pi = 0.1;
  std::vector<double> pi_grid = default_pi_grid();
  std::vector<int> n_grid{1, 2, 4, 8};
  std::vector<int> l_grid{1, 2, 4, 8, 16, 32, 64};
  std::int64_t trials = 2000;
  std::int64_t first_trial = 0;
  std::uint64_t seed = 1;
  std::vector<Network> networks{std::begin(kAllNetworks), std::end(kAllNetworks)};
  bool fixed_layout = false;
  ThroughputPrefactor prefactor = ThroughputPrefactor::kTwoB;
  ServingRule serving_rule = ServingRule::kStrongestLargeScale;
  int threads = 0;  // 0: one per hardware thread; never affects results

  static std::vector<double> default_pi_grid();

  double tau_p() const { return tau_c - tau_d; }
  int antenna_count() const { return total_antennas.value_or(num_aps * antennas_per_ap); }
  double noise_power_w() const { return dbm_to_watts(noise_dbm); }
  double tx_power_w() const { return dbm_to_watts(tx_power_dbm); }
  double alpha_linear() const { return db_to_linear(alpha_db); }
  FrameTiming timing() const;
  ReceiverConfig receiver(Network mode) const;

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

/// Applies `key = value` lines on top of `cfg`. Blank lines and text after
/// '#' are ignored. Lists are comma-separated. Throws std::invalid_argument on
/// unknown keys or malformed values, naming the line.
void apply_config_text(SimulationConfig& cfg, std::string_view text);

/// Reads a config file; throws std::runtime_error if it cannot be read.
SimulationConfig load_config_file(const std::filesystem::path& path,
                                  SimulationConfig base = {});

/// Applies a single key/value pair (same keys as the file format).
void apply_config_value(SimulationConfig& cfg, std::string_view key, std::string_view value);

}  // namespace cfaloha

#endif  // CFALOHA_CONFIG_HPP
