#include "cfaloha/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

#include "cfaloha/channel.hpp"
#include "cfaloha/clustering.hpp"
#include "cfaloha/detection.hpp"
#include "cfaloha/metrics.hpp"
#include "cfaloha/topology.hpp"
#include "cfaloha/traffic.hpp"

namespace cfaloha {

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kPoint: return "point";
    case SweepAxis::kPi: return "pi";
    case SweepAxis::kN: return "N";
    case SweepAxis::kL: return "L";
  }
  return "unknown";
}

namespace {

constexpr std::uint64_t kFixedLayoutTrial = std::numeric_limits<std::uint64_t>::max();

bool is_distributed(Network n) { return n != Network::kCellularMimo; }

struct TrialContext {
  const SimulationConfig& cfg;
  std::optional<Layout> fixed_layout;
  ReceiverConfig receiver;
  FrameTiming timing;
  double alpha;
  bool need_distributed;
  bool need_cellular;
};

/// Fills out[n] with the throughput of cfg.networks[n]; returns K_a.
int run_one_trial(const TrialContext& ctx, std::uint64_t trial, std::vector<double>& out) {
  const SimulationConfig& cfg = ctx.cfg;
  std::fill(out.begin(), out.end(), 0.0);

  Layout layout;
  if (ctx.fixed_layout) {
    layout = *ctx.fixed_layout;
  } else {
    Rng rng = make_substream(cfg.seed, trial, StreamPurpose::kLayout);
    layout = random_layout(cfg.num_aps, cfg.num_users, cfg.antennas_per_ap, cfg.area, rng);
  }
  Rng activity_rng = make_substream(cfg.seed, trial, StreamPurpose::kActivity);
  const SlotActivity activity = sample_activity(cfg.num_users, cfg.pi, activity_rng);
  if (activity.k_a() == 0) return 0;

  auto throughput = [&](const SinrVector& sinrs) {
    return sum_throughput(sinrs, ctx.alpha, ctx.timing);
  };

  if (ctx.need_distributed) {
    Rng rng = make_substream(cfg.seed, trial, StreamPurpose::kDistributedChannel);
    const auto fading = sample_small_scale(cfg.num_users, cfg.num_aps, cfg.antennas_per_ap, rng);
    const auto channels =
        assemble_channel(large_scale_matrix(layout, cfg.min_distance_m), fading);
    for (std::size_t n = 0; n < cfg.networks.size(); ++n) {
      switch (cfg.networks[n]) {
        case Network::kCellFreeFull:
          out[n] = throughput(slot_sinrs(
              channels, activity,
              full_clusters(cfg.num_aps, cfg.num_users, cfg.antennas_per_ap), ctx.receiver));
          break;
        case Network::kUserCentric:
          out[n] = throughput(slot_sinrs(
              channels, activity,
              nearest_ap_clusters(layout, std::min(cfg.cluster_size, cfg.num_aps)), ctx.receiver));
          break;
        case Network::kSmallCell:
          out[n] = throughput(slot_sinrs(
              channels, activity,
              smallcell_assignment(channels, activity, ctx.receiver, cfg.serving_rule),
              ctx.receiver));
          break;
        case Network::kCellularMimo:
          break;
      }
    }
  }

  if (ctx.need_cellular) {
    const int antennas = cfg.num_aps * cfg.antennas_per_ap;
    Layout site;
    site.area = cfg.area;
    site.antennas_per_ap = antennas;
    site.user_positions = layout.user_positions;
    Rng site_rng = make_substream(cfg.seed, trial, StreamPurpose::kCellularLayout);
    site.ap_positions = place_uniform(1, cfg.area, site_rng);
    Rng rng = make_substream(cfg.seed, trial, StreamPurpose::kCellularChannel);
    const auto fading = sample_small_scale(cfg.num_users, 1, antennas, rng);
    const auto channels = assemble_channel(large_scale_matrix(site, cfg.min_distance_m), fading);
    const auto sinrs =
        slot_sinrs(channels, activity, full_clusters(1, cfg.num_users, antennas), ctx.receiver);
    for (std::size_t n = 0; n < cfg.networks.size(); ++n) {
      if (cfg.networks[n] == Network::kCellularMimo) out[n] = throughput(sinrs);
    }
  }
  return activity.k_a();
}

}  // namespace

TrialSamples run_trials(const SimulationConfig& cfg) {
  cfg.validate();
  TrialContext ctx{cfg,
                   std::nullopt,
                   cfg.receiver(Network::kCellFreeFull),
                   cfg.timing(),
                   cfg.alpha_linear(),
                   std::any_of(cfg.networks.begin(), cfg.networks.end(), is_distributed),
                   std::find(cfg.networks.begin(), cfg.networks.end(), Network::kCellularMimo) !=
                       cfg.networks.end()};
  if (cfg.fixed_layout) {
    Rng rng = make_substream(cfg.seed, kFixedLayoutTrial, StreamPurpose::kLayout);
    ctx.fixed_layout = random_layout(cfg.num_aps, cfg.num_users, cfg.antennas_per_ap, cfg.area, rng);
  }

  const auto num_networks = cfg.networks.size();
  const auto num_trials = static_cast<std::size_t>(cfg.trials);
  TrialSamples samples;
  samples.networks = cfg.networks;
  samples.throughput_bps.assign(num_networks, std::vector<double>(num_trials, 0.0));
  samples.active_users.assign(num_trials, 0);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    std::vector<double> row(num_networks);
    while (true) {
      const std::size_t t = next.fetch_add(1);
      if (t >= num_trials) return;
      try {
        const auto trial = static_cast<std::uint64_t>(cfg.first_trial) + t;
        samples.active_users[t] = run_one_trial(ctx, trial, row);
        for (std::size_t n = 0; n < num_networks; ++n) samples.throughput_bps[n][t] = row[n];
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(num_trials);
        return;
      }
    }
  };

  unsigned workers = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, num_trials));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return samples;
}

std::vector<ThroughputResult> run_point(const SimulationConfig& cfg, SweepAxis axis) {
  const TrialSamples samples = run_trials(cfg);
  std::vector<ThroughputResult> results;
  for (std::size_t n = 0; n < samples.networks.size(); ++n) {
    const SampleSummary summary = summarize(samples.throughput_bps[n]);
    ThroughputResult r;
    r.network = samples.networks[n];
    r.sweep_axis = axis;
    switch (axis) {
      case SweepAxis::kPoint:
      case SweepAxis::kPi: r.axis_value = cfg.pi; break;
      case SweepAxis::kN: r.axis_value = cfg.antennas_per_ap; break;
      case SweepAxis::kL: r.axis_value = cfg.num_aps; break;
    }
    r.num_aps = cfg.num_aps;
    r.antennas_per_ap = cfg.antennas_per_ap;
    if (r.network == Network::kCellularMimo) {
      r.num_aps = 1;
      r.antennas_per_ap = cfg.num_aps * cfg.antennas_per_ap;
    }
    r.num_users = cfg.num_users;
    r.pi = cfg.pi;
    r.trials = cfg.trials;
    r.seed = cfg.seed;
    r.mean_bps = summary.mean;
    r.stderr_bps = summary.standard_error;
    r.degenerate_stderr = cfg.trials == 1;
    results.push_back(r);
  }
  return results;
}

std::vector<ThroughputResult> sweep_pi(const SimulationConfig& cfg, const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("empty pi grid");
  std::vector<SimulationConfig> points;
  for (double pi : grid) {
    SimulationConfig point = cfg;
    point.pi = pi;
    point.validate();
    points.push_back(std::move(point));
  }
  std::vector<ThroughputResult> all;
  for (const auto& point : points) {
    auto rows = run_point(point, SweepAxis::kPi);
    all.insert(all.end(), rows.begin(), rows.end());
  }
  return all;
}

std::vector<ThroughputResult> sweep_n(const SimulationConfig& cfg, const std::vector<int>& grid) {
  if (grid.empty()) throw std::invalid_argument("empty N grid");
  std::vector<SimulationConfig> points;
  for (int n : grid) {
    SimulationConfig point = cfg;
    point.antennas_per_ap = n;
    point.total_antennas.reset();
    point.validate();
    points.push_back(std::move(point));
  }
  std::vector<ThroughputResult> all;
  for (const auto& point : points) {
    auto rows = run_point(point, SweepAxis::kN);
    all.insert(all.end(), rows.begin(), rows.end());
  }
  return all;
}

std::vector<ThroughputResult> sweep_l(const SimulationConfig& cfg, const std::vector<int>& grid) {
  if (grid.empty()) throw std::invalid_argument("empty L grid");
  const int total = cfg.antenna_count();
  std::vector<SimulationConfig> points;
  for (int l : grid) {
    if (l < 1 || total % l != 0) {
      throw std::invalid_argument("L = " + std::to_string(l) + " does not divide M = " +
                                  std::to_string(total));
    }
    SimulationConfig point = cfg;
    point.num_aps = l;
    point.antennas_per_ap = total / l;
    point.total_antennas = total;
    point.cluster_size = std::min(cfg.cluster_size, l);
    point.validate();
    points.push_back(std::move(point));
  }
  std::vector<ThroughputResult> all;
  for (const auto& point : points) {
    auto rows = run_point(point, SweepAxis::kL);
    all.insert(all.end(), rows.begin(), rows.end());
  }
  return all;
}

}  // namespace cfaloha
