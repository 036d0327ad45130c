#include "cfaloha/detection.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace cfaloha {

std::string_view to_string(Network network) {
  switch (network) {
    case Network::kCellFreeFull: return "cell-free-full";
    case Network::kUserCentric: return "user-centric";
    case Network::kCellularMimo: return "cellular-mimo";
    case Network::kSmallCell: return "small-cell";
  }
  return "unknown";
}

Network parse_network(std::string_view name) {
  for (Network n : kAllNetworks) {
    if (to_string(n) == name) return n;
  }
  throw std::invalid_argument("unknown network '" + std::string(name) + "'");
}

std::string_view to_string(ServingRule rule) {
  switch (rule) {
    case ServingRule::kStrongestLargeScale: return "strongest";
    case ServingRule::kBestInstantaneous: return "best-instantaneous";
  }
  return "unknown";
}

ServingRule parse_serving_rule(std::string_view name) {
  if (name == "strongest") return ServingRule::kStrongestLargeScale;
  if (name == "best-instantaneous") return ServingRule::kBestInstantaneous;
  throw std::invalid_argument("unknown serving rule '" + std::string(name) + "'");
}

void ReceiverConfig::validate(int num_users) const {
  if (!(noise_power > 0.0) || !std::isfinite(noise_power)) {
    throw std::invalid_argument("noise power must be positive");
  }
  if (!(capture_threshold > 0.0)) throw std::invalid_argument("capture threshold must be positive");
  if (static_cast<int>(tx_powers.size()) != num_users) {
    throw std::invalid_argument("need one transmit power per user");
  }
  for (double p : tx_powers) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("transmit powers must be >= 0");
  }
}

namespace {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

void check_inputs(const ChannelRealization& channels, const SlotActivity& activity,
                  const ClusterAssignment& assignment, const ReceiverConfig& cfg, int user) {
  if (assignment.num_aps != channels.num_aps ||
      assignment.antennas_per_ap != channels.antennas_per_ap ||
      assignment.num_users() != channels.num_users()) {
    throw std::invalid_argument("cluster assignment does not match the channel realization");
  }
  if (static_cast<int>(cfg.tx_powers.size()) != channels.num_users()) {
    throw std::invalid_argument("need one transmit power per user");
  }
  if (!(cfg.noise_power > 0.0)) throw std::invalid_argument("noise power must be positive");
  if (!activity.is_active(user)) {
    throw std::invalid_argument("user " + std::to_string(user) + " is not active");
  }
  if (!channels.g.allFinite()) throw std::domain_error("channel contains non-finite entries");
}

/// Rows of g restricted to `rows`, columns of the active users, each column
/// scaled by sqrt(p_i / s2) so that the noise covariance becomes identity.
MatrixXcd normalized_active_channels(const ChannelRealization& channels,
                                     const SlotActivity& activity, const ReceiverConfig& cfg,
                                     const std::vector<int>& rows) {
  MatrixXcd out(static_cast<Index>(rows.size()), activity.k_a());
  for (int j = 0; j < activity.k_a(); ++j) {
    const int i = activity.active[j];
    const double scale = std::sqrt(cfg.tx_powers[i] / cfg.noise_power);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      out(static_cast<Index>(r), j) = scale * channels.g(rows[r], i);
    }
  }
  return out;
}

Eigen::LLT<MatrixXcd> factorize(const MatrixXcd& covariance) {
  Eigen::LLT<MatrixXcd> llt(covariance);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("covariance factorization failed");
  }
  return llt;
}

/// s2-normalized covariance on the mask subspace, optionally excluding one
/// active column.
MatrixXcd subspace_covariance(const MatrixXcd& scaled, int excluded_column) {
  MatrixXcd cov = MatrixXcd::Identity(scaled.rows(), scaled.rows());
  for (Index j = 0; j < scaled.cols(); ++j) {
    if (j == excluded_column) continue;
    cov.noalias() += scaled.col(j) * scaled.col(j).adjoint();
  }
  return cov;
}

}  // namespace

double mmse_sinr(const ChannelRealization& channels, const SlotActivity& activity,
                 const ClusterAssignment& assignment, const ReceiverConfig& cfg, int user) {
  check_inputs(channels, activity, assignment, cfg, user);
  const std::vector<int> rows = assignment.antenna_indices(user);
  if (rows.empty()) return 0.0;
  const MatrixXcd scaled = normalized_active_channels(channels, activity, cfg, rows);
  const int self = activity.position_of(user);
  const MatrixXcd interference = subspace_covariance(scaled, self);
  const auto llt = factorize(interference);
  const VectorXcd desired = scaled.col(self);
  const double sinr = desired.dot(llt.solve(desired)).real();
  if (!std::isfinite(sinr)) throw std::domain_error("non-finite SINR");
  return std::max(sinr, 0.0);
}

VectorXcd mmse_combiner(const ChannelRealization& channels, const SlotActivity& activity,
                        const ClusterAssignment& assignment, const ReceiverConfig& cfg, int user) {
  check_inputs(channels, activity, assignment, cfg, user);
  VectorXcd v = VectorXcd::Zero(channels.total_antennas());
  const std::vector<int> rows = assignment.antenna_indices(user);
  if (rows.empty()) return v;
  // (sum_i p_i D g_i g_i^H D + s2 I) is block diagonal: the masked block plus
  // s2 I elsewhere, where D g_k is zero. Only the masked block needs solving.
  MatrixXcd local(static_cast<Index>(rows.size()), activity.k_a());
  for (int j = 0; j < activity.k_a(); ++j) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      local(static_cast<Index>(r), j) = channels.g(rows[r], activity.active[j]);
    }
  }
  MatrixXcd cov = cfg.noise_power * MatrixXcd::Identity(local.rows(), local.rows());
  for (int j = 0; j < activity.k_a(); ++j) {
    cov.noalias() += cfg.tx_powers[activity.active[j]] * (local.col(j) * local.col(j).adjoint());
  }
  const auto llt = factorize(cov);
  const VectorXcd solved =
      cfg.tx_powers[user] * llt.solve(VectorXcd(local.col(activity.position_of(user))));
  for (std::size_t r = 0; r < rows.size(); ++r) v(rows[r]) = solved(static_cast<Index>(r));
  return v;
}

double sinr_from_combiner(const VectorXcd& combiner, const ChannelRealization& channels,
                          const SlotActivity& activity, const ClusterAssignment& assignment,
                          const ReceiverConfig& cfg, int user) {
  check_inputs(channels, activity, assignment, cfg, user);
  const VectorXcd masked = apply_mask(assignment, user, combiner);
  const double masked_norm2 = masked.squaredNorm();
  if (!(masked_norm2 > 0.0)) throw std::invalid_argument("combiner vanishes after masking");
  double signal = 0.0;
  double interference = 0.0;
  for (int i : activity.active) {
    const double gain = std::norm(masked.dot(channels.g.col(i)));
    if (i == user) {
      signal = cfg.tx_powers[i] * gain;
    } else {
      interference += cfg.tx_powers[i] * gain;
    }
  }
  return signal / (interference + cfg.noise_power * masked_norm2);
}

double cellular_sinr(const ChannelRealization& channels, const SlotActivity& activity,
                     const ReceiverConfig& cfg, int user) {
  if (channels.num_aps != 1) {
    throw std::invalid_argument("cellular massive MIMO expects a single co-located array");
  }
  const ClusterAssignment all =
      full_clusters(1, channels.num_users(), channels.antennas_per_ap);
  return mmse_sinr(channels, activity, all, cfg, user);
}

double smallcell_sinr(const ChannelRealization& channels, const SlotActivity& activity,
                      const ClusterAssignment& assignment, const ReceiverConfig& cfg, int user) {
  if (assignment.subsets.at(static_cast<std::size_t>(user)).size() != 1) {
    throw std::invalid_argument("small-cell users are decoded by exactly one AP");
  }
  return mmse_sinr(channels, activity, assignment, cfg, user);
}

ClusterAssignment smallcell_assignment(const ChannelRealization& channels,
                                       const SlotActivity& activity, const ReceiverConfig& cfg,
                                       ServingRule rule) {
  const int num_users = channels.num_users();
  const int num_aps = channels.num_aps;
  std::vector<int> serving(static_cast<std::size_t>(num_users), 0);
  for (int k = 0; k < num_users; ++k) {
    Index best = 0;
    channels.beta.row(k).maxCoeff(&best);  // first maximum wins ties
    serving[k] = static_cast<int>(best);
  }
  if (rule == ServingRule::kBestInstantaneous && num_aps > 1) {
    for (int k : activity.active) {
      double best_sinr = -1.0;
      for (int l = 0; l < num_aps; ++l) {
        ClusterAssignment probe = single_ap_clusters(std::vector<int>(num_users, l), num_aps,
                                                     channels.antennas_per_ap);
        const double s = mmse_sinr(channels, activity, probe, cfg, k);
        if (s > best_sinr) {
          best_sinr = s;
          serving[k] = l;
        }
      }
    }
  }
  return single_ap_clusters(std::move(serving), num_aps, channels.antennas_per_ap);
}

SymbolEstimate symbol_estimate(const VectorXcd& combiner, const ChannelRealization& channels,
                               const SlotActivity& activity, const ClusterAssignment& assignment,
                               int user, const std::vector<std::complex<double>>& symbols,
                               const VectorXcd& noise) {
  if (static_cast<int>(symbols.size()) != activity.k_a()) {
    throw std::invalid_argument("need one symbol per active user");
  }
  if (noise.size() != channels.total_antennas() || combiner.size() != channels.total_antennas()) {
    throw std::invalid_argument("noise and combiner must have length L*N");
  }
  const int self = activity.position_of(user);
  if (self < 0) throw std::invalid_argument("user is not active");
  const VectorXcd masked = apply_mask(assignment, user, combiner);
  SymbolEstimate est;
  for (int j = 0; j < activity.k_a(); ++j) {
    const std::complex<double> term = masked.dot(channels.g.col(activity.active[j])) * symbols[j];
    if (j == self) {
      est.desired = term;
    } else {
      est.interference += term;
    }
  }
  est.noise = masked.dot(noise);
  return est;
}

SinrVector slot_sinrs(const ChannelRealization& channels, const SlotActivity& activity,
                      const ClusterAssignment& assignment, const ReceiverConfig& cfg) {
  SinrVector out(static_cast<std::size_t>(activity.k_a()), 0.0);
  if (activity.k_a() == 0) return out;
  check_inputs(channels, activity, assignment, cfg, activity.active.front());

  std::vector<int> all_rows(static_cast<std::size_t>(channels.total_antennas()));
  for (std::size_t r = 0; r < all_rows.size(); ++r) all_rows[r] = static_cast<int>(r);
  const MatrixXcd scaled = normalized_active_channels(channels, activity, cfg, all_rows);
  MatrixXcd cov = MatrixXcd::Identity(scaled.rows(), scaled.rows());
  cov.noalias() += scaled * scaled.adjoint();

  // Users sharing a mask share one factorization of C_SS.
  std::map<std::vector<int>, std::vector<int>> users_by_mask;
  for (int j = 0; j < activity.k_a(); ++j) {
    users_by_mask[assignment.antenna_indices(activity.active[j])].push_back(j);
  }
  for (const auto& [rows, columns] : users_by_mask) {
    if (rows.empty()) continue;
    const Index dim = static_cast<Index>(rows.size());
    const Index count = static_cast<Index>(columns.size());
    MatrixXcd sub(dim, dim);
    MatrixXcd rhs(dim, count);
    for (Index a = 0; a < dim; ++a) {
      for (Index b = 0; b < dim; ++b) sub(a, b) = cov(rows[a], rows[b]);
      for (Index c = 0; c < count; ++c) rhs(a, c) = scaled(rows[a], columns[c]);
    }
    const MatrixXcd solved = factorize(sub).solve(rhs);
    for (Index c = 0; c < count; ++c) {
      const int j = columns[c];
      const double quad = rhs.col(c).dot(solved.col(c)).real();
      const double residual = 1.0 - quad;
      if (residual > 1e-8) {
        out[j] = std::max(quad, 0.0) / residual;
      } else {
        // Interference-free to within rounding; the lemma loses precision here.
        out[j] = mmse_sinr(channels, activity, assignment, cfg, activity.active[j]);
      }
    }
  }
  return out;
}

}  // namespace cfaloha
