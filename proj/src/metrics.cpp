#include "cfaloha/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cfaloha {

std::string_view to_string(ThroughputPrefactor prefactor) {
  return prefactor == ThroughputPrefactor::kTwoB ? "2B" : "B";
}

ThroughputPrefactor parse_prefactor(std::string_view name) {
  if (name == "2B") return ThroughputPrefactor::kTwoB;
  if (name == "B") return ThroughputPrefactor::kB;
  throw std::invalid_argument("throughput prefactor must be 2B or B, got '" + std::string(name) + "'");
}

double FrameTiming::rate_scale() const {
  const double factor = prefactor == ThroughputPrefactor::kTwoB ? 2.0 : 1.0;
  return tau_d / tau_c * factor * bandwidth_hz;
}

void FrameTiming::validate() const {
  if (!(tau_d > 0.0 && tau_d <= tau_c)) throw std::invalid_argument("need 0 < tau_d <= tau_c");
  if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("bandwidth must be positive");
}

std::vector<bool> capture_outcomes(std::span<const double> sinrs, double alpha) {
  std::vector<bool> captured(sinrs.size());
  for (std::size_t k = 0; k < sinrs.size(); ++k) captured[k] = sinrs[k] > alpha;
  return captured;
}

SlotOutcome evaluate_slot(std::span<const double> sinrs, double alpha, const FrameTiming& timing) {
  SlotOutcome out;
  out.captured = capture_outcomes(sinrs, alpha);
  out.rate_bps.resize(sinrs.size(), 0.0);
  const double scale = timing.rate_scale();
  for (std::size_t k = 0; k < sinrs.size(); ++k) {
    if (out.captured[k]) out.rate_bps[k] = scale * std::log2(1.0 + sinrs[k]);
    out.sum_throughput_bps += out.rate_bps[k];
  }
  return out;
}

double sum_throughput(std::span<const double> sinrs, double alpha, const FrameTiming& timing) {
  return evaluate_slot(sinrs, alpha, timing).sum_throughput_bps;
}

void CaptureEstimator::add_slot(const SlotActivity& activity, const std::vector<bool>& captured) {
  if (static_cast<int>(captured.size()) != activity.k_a()) {
    throw std::invalid_argument("one capture flag per active user expected");
  }
  for (int j = 0; j < activity.k_a(); ++j) {
    if (tracked_user_ >= 0 && activity.active[j] != tracked_user_) continue;
    ++packets_;
    if (captured[j]) ++captured_;
  }
}

ProbabilityEstimate CaptureEstimator::estimate() const {
  if (packets_ == 0) throw std::logic_error("no packets observed");
  ProbabilityEstimate est;
  est.samples = packets_;
  est.probability = static_cast<double>(captured_) / static_cast<double>(packets_);
  est.standard_error =
      std::sqrt(est.probability * (1.0 - est.probability) / static_cast<double>(packets_));
  return est;
}

SampleSummary summarize(std::span<const double> samples) {
  SampleSummary s;
  s.count = static_cast<std::int64_t>(samples.size());
  if (samples.empty()) return s;
  double sum = 0.0;
  for (double x : samples) sum += x;
  s.mean = sum / static_cast<double>(samples.size());
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double x : samples) ss += (x - s.mean) * (x - s.mean);
    const double variance = ss / static_cast<double>(samples.size() - 1);
    s.standard_error = std::sqrt(variance / static_cast<double>(samples.size()));
  }
  return s;
}

}  // namespace cfaloha
