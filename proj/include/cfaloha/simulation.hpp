#ifndef CFALOHA_SIMULATION_HPP
#define CFALOHA_SIMULATION_HPP

#include <cstdint>
#include <string_view>
#include <vector>

#include "cfaloha/config.hpp"

namespace cfaloha {

enum class SweepAxis { kPoint, kPi, kN, kL };

std::string_view to_string(SweepAxis axis);

/// Mean sum-throughput of one network at one operating point.
struct ThroughputResult {
  Network network = Network::kCellFreeFull;
  SweepAxis sweep_axis = SweepAxis::kPoint;
  double axis_value = 0.0;
  int num_aps = 0;
  int antennas_per_ap = 0;
  int num_users = 0;
  double pi = 0.0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  double mean_bps = 0.0;
  double stderr_bps = 0.0;
  bool degenerate_stderr = false;  // set when trials == 1

  friend bool operator==(const ThroughputResult&, const ThroughputResult&) = default;
};

/// Raw per-trial draws of one run, in trial order.
struct TrialSamples {
  std::vector<Network> networks;
  std::vector<std::vector<double>> throughput_bps;  // [network][trial]
  std::vector<int> active_users;                    // K_a per trial
};

/// Runs trials [first_trial, first_trial + trials) of `cfg`. Every trial
/// draws from substreams keyed by (seed, trial index), so the samples do
/// not depend on the worker count, and a run split into contiguous ranges
/// concatenates to the unsplit run.
TrialSamples run_trials(const SimulationConfig& cfg);

/// One result per network in cfg.networks. Throws std::invalid_argument for
/// an invalid config before any trial runs.
std::vector<ThroughputResult> run_point(const SimulationConfig& cfg,
                                        SweepAxis axis = SweepAxis::kPoint);

std::vector<ThroughputResult> sweep_pi(const SimulationConfig& cfg, const std::vector<double>& grid);

/// Distributed networks use (L, N); cellular uses one site with L*N antennas.
std::vector<ThroughputResult> sweep_n(const SimulationConfig& cfg, const std::vector<int>& grid);

/// M fixed at cfg.antenna_count(); each L must divide M and N = M / L.
/// Cluster size is clamped to L.
std::vector<ThroughputResult> sweep_l(const SimulationConfig& cfg, const std::vector<int>& grid);

}  // namespace cfaloha

#endif  // CFALOHA_SIMULATION_HPP
