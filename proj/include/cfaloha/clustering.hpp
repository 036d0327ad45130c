#ifndef CFALOHA_CLUSTERING_HPP
#define CFALOHA_CLUSTERING_HPP

#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "cfaloha/topology.hpp"

namespace cfaloha {

enum class ClusterMode { kFull, kUserCentric, kSingleAp };

std::string_view to_string(ClusterMode mode);

/// Per-user AP subsets M_k (0-based AP indices) of the DCC framework.
///
/// The block-diagonal masks D_k are never materialized: D_kl is I_N when
/// l is in M_k and 0_N otherwise, so multiplying by D_k keeps the antenna
/// blocks of the APs in M_k and zeroes the rest.
struct ClusterAssignment {
  ClusterMode mode = ClusterMode::kFull;
  int num_aps = 0;
  int antennas_per_ap = 1;
  std::vector<std::vector<int>> subsets;  // subsets[k] = M_k

  int num_users() const { return static_cast<int>(subsets.size()); }

  /// Checks that every M_k is non-empty, duplicate-free and in range.
  void validate() const;

  /// Antenna rows selected by D_k, ascending.
  std::vector<int> antenna_indices(int user) const;
};

/// M_k = the cluster_size APs closest to user k; ties go to the lower index.
/// Throws std::invalid_argument unless 1 <= cluster_size <= L.
ClusterAssignment nearest_ap_clusters(const Layout& layout, int cluster_size);

/// M_k = {0, ..., L-1} for every user.
ClusterAssignment full_clusters(int num_aps, int num_users, int antennas_per_ap = 1);

/// One serving AP per user.
ClusterAssignment single_ap_clusters(std::vector<int> serving_ap, int num_aps,
                                     int antennas_per_ap);

/// D_k x. Throws std::invalid_argument if x has the wrong length.
Eigen::VectorXcd apply_mask(const ClusterAssignment& assignment, int user,
                            const Eigen::VectorXcd& x);

/// Users k with AP l in M_k, ascending.
std::vector<int> served_users(const ClusterAssignment& assignment, int ap);

}  // namespace cfaloha

#endif  // CFALOHA_CLUSTERING_HPP
