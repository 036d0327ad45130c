#ifndef CFALOHA_DETECTION_HPP
#define CFALOHA_DETECTION_HPP

#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "cfaloha/channel.hpp"
#include "cfaloha/clustering.hpp"
#include "cfaloha/traffic.hpp"

namespace cfaloha {

enum class Network { kCellFreeFull, kUserCentric, kCellularMimo, kSmallCell };

inline constexpr Network kAllNetworks[] = {Network::kCellFreeFull, Network::kUserCentric,
                                           Network::kCellularMimo, Network::kSmallCell};

std::string_view to_string(Network network);
/// Throws std::invalid_argument for unknown names.
Network parse_network(std::string_view name);

/// How a small-cell user picks the AP that decodes it.
enum class ServingRule {
  kStrongestLargeScale,  // argmax_l beta_kl
  kBestInstantaneous,    // argmax_l of the per-AP SINR in the current slot
};

std::string_view to_string(ServingRule rule);
ServingRule parse_serving_rule(std::string_view name);

struct ReceiverConfig {
  Network mode = Network::kCellFreeFull;
  double noise_power = 0.0;        // watts
  std::vector<double> tx_powers;   // watts, indexed by user
  double capture_threshold = 1.0;  // linear

  void validate(int num_users) const;
};

/// Per-active-user SINR, aligned with SlotActivity::active.
using SinrVector = std::vector<double>;

/// Centralized MMSE SINR of active user k under its mask D_k:
///   p_k g_k^H D_k (sum_{i != k} p_i D_k g_i g_i^H D_k + s2 I)^{-1} D_k g_k.
/// Evaluated with a Cholesky solve on the antennas kept by D_k.
double mmse_sinr(const ChannelRealization& channels, const SlotActivity& activity,
                 const ClusterAssignment& assignment, const ReceiverConfig& cfg, int user);

/// MMSE combining vector (length LN). The covariance includes user k itself.
Eigen::VectorXcd mmse_combiner(const ChannelRealization& channels, const SlotActivity& activity,
                               const ClusterAssignment& assignment, const ReceiverConfig& cfg,
                               int user);

/// SINR of user k for an arbitrary combiner v, after masking by D_k.
/// Throws std::invalid_argument if D_k v vanishes.
double sinr_from_combiner(const Eigen::VectorXcd& combiner, const ChannelRealization& channels,
                          const SlotActivity& activity, const ClusterAssignment& assignment,
                          const ReceiverConfig& cfg, int user);

/// Co-located massive MIMO: full MMSE on a single-AP realization.
/// Throws std::invalid_argument unless the realization has exactly one AP.
double cellular_sinr(const ChannelRealization& channels, const SlotActivity& activity,
                     const ReceiverConfig& cfg, int user);

/// Small-cell SINR: the serving AP decodes alone, with local MMSE over its N
/// antennas (for N = 1 this is p_k|g_kl|^2 / (sum_{i != k} p_i |g_il|^2 + s2)).
/// `assignment` must hold exactly one AP per user.
double smallcell_sinr(const ChannelRealization& channels, const SlotActivity& activity,
                      const ClusterAssignment& assignment, const ReceiverConfig& cfg, int user);

/// Serving AP per user for small-cell operation. kBestInstantaneous only
/// looks at active users' SINRs; inactive users fall back to the strongest AP.
ClusterAssignment smallcell_assignment(const ChannelRealization& channels,
                                       const SlotActivity& activity, const ReceiverConfig& cfg,
                                       ServingRule rule);

/// CPU-side symbol estimate v^H D_k (sum_i g_i s_i + n), split into its parts.
struct SymbolEstimate {
  std::complex<double> desired;
  std::complex<double> interference;
  std::complex<double> noise;

  std::complex<double> total() const { return desired + interference + noise; }
};

/// `symbols` is aligned with activity.active; `noise` has length LN.
SymbolEstimate symbol_estimate(const Eigen::VectorXcd& combiner, const ChannelRealization& channels,
                               const SlotActivity& activity, const ClusterAssignment& assignment,
                               int user, const std::vector<std::complex<double>>& symbols,
                               const Eigen::VectorXcd& noise);

/// MMSE SINRs of every active user in one pass. Builds the full covariance
/// once and recovers each interference-only SINR through the matrix
/// inversion lemma, SINR = a / (1 - a) with a = p_k g_k^H C^{-1} g_k on the
/// mask subspace. Factorizations are shared between users with equal masks.
SinrVector slot_sinrs(const ChannelRealization& channels, const SlotActivity& activity,
                      const ClusterAssignment& assignment, const ReceiverConfig& cfg);

}  // namespace cfaloha

#endif  // CFALOHA_DETECTION_HPP
