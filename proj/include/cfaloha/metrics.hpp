#ifndef CFALOHA_METRICS_HPP
#define CFALOHA_METRICS_HPP

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "cfaloha/detection.hpp"

namespace cfaloha {

/// Multiplier in front of B in the sum-throughput. The default keeps the
/// factor 2B; kB uses B alone.
enum class ThroughputPrefactor { kTwoB, kB };

std::string_view to_string(ThroughputPrefactor prefactor);
ThroughputPrefactor parse_prefactor(std::string_view name);

struct FrameTiming {
  double tau_d = 10.0;          // data symbols per coherence block
  double tau_c = 20.0;          // symbols per coherence block
  double bandwidth_hz = 1.0e6;
  ThroughputPrefactor prefactor = ThroughputPrefactor::kTwoB;

  /// (tau_d / tau_c) * 2B (or * B).
  double rate_scale() const;
  void validate() const;
};

/// captured[k] = SINR_k > alpha (strict).
std::vector<bool> capture_outcomes(std::span<const double> sinrs, double alpha);

/// (tau_d/tau_c) * 2B * sum_k log2(1 + 1{SINR_k > alpha} SINR_k), bits/s.
double sum_throughput(std::span<const double> sinrs, double alpha, const FrameTiming& timing);

struct SlotOutcome {
  std::vector<bool> captured;
  std::vector<double> rate_bps;
  double sum_throughput_bps = 0.0;
};

SlotOutcome evaluate_slot(std::span<const double> sinrs, double alpha, const FrameTiming& timing);

struct ProbabilityEstimate {
  double probability = 0.0;
  double standard_error = 0.0;
  std::int64_t samples = 0;
};

/// Monte Carlo estimate of P[SINR_k > alpha].
///
/// Pooled mode counts every transmitted packet; per-user mode tracks one user
/// and counts only the slots in which that user transmits. Slots without any
/// contributing packet are skipped.
class CaptureEstimator {
 public:
  CaptureEstimator() = default;
  explicit CaptureEstimator(int tracked_user) : tracked_user_(tracked_user) {}

  void add_slot(const SlotActivity& activity, const std::vector<bool>& captured);

  /// Throws std::logic_error if no packet has been observed.
  ProbabilityEstimate estimate() const;

 private:
  int tracked_user_ = -1;  // -1: pooled over all users
  std::int64_t packets_ = 0;
  std::int64_t captured_ = 0;
};

/// Sample mean and standard error (sample std / sqrt(n)) in index order.
struct SampleSummary {
  double mean = 0.0;
  double standard_error = 0.0;
  std::int64_t count = 0;
};

SampleSummary summarize(std::span<const double> samples);

}  // namespace cfaloha

#endif  // CFALOHA_METRICS_HPP
