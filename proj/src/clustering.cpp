#include "cfaloha/clustering.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cfaloha {

std::string_view to_string(ClusterMode mode) {
  switch (mode) {
    case ClusterMode::kFull: return "full";
    case ClusterMode::kUserCentric: return "user-centric";
    case ClusterMode::kSingleAp: return "single-AP";
  }
  return "unknown";
}

void ClusterAssignment::validate() const {
  if (num_aps < 1 || antennas_per_ap < 1) {
    throw std::invalid_argument("cluster assignment needs L >= 1 and N >= 1");
  }
  for (const auto& subset : subsets) {
    if (subset.empty()) throw std::invalid_argument("every user needs at least one serving AP");
    std::vector<int> sorted = subset;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("duplicate AP in cluster");
    }
    if (sorted.front() < 0 || sorted.back() >= num_aps) {
      throw std::invalid_argument("AP index out of range in cluster");
    }
  }
}

std::vector<int> ClusterAssignment::antenna_indices(int user) const {
  std::vector<int> aps = subsets.at(static_cast<std::size_t>(user));
  std::sort(aps.begin(), aps.end());
  std::vector<int> rows;
  rows.reserve(aps.size() * static_cast<std::size_t>(antennas_per_ap));
  for (int l : aps) {
    for (int n = 0; n < antennas_per_ap; ++n) rows.push_back(l * antennas_per_ap + n);
  }
  return rows;
}

ClusterAssignment nearest_ap_clusters(const Layout& layout, int cluster_size) {
  const int num_aps = layout.num_aps();
  if (cluster_size < 1 || cluster_size > num_aps) {
    throw std::invalid_argument("cluster size must lie in [1, L]");
  }
  ClusterAssignment out;
  out.mode = cluster_size == num_aps ? ClusterMode::kFull : ClusterMode::kUserCentric;
  out.num_aps = num_aps;
  out.antennas_per_ap = layout.antennas_per_ap;
  out.subsets.reserve(layout.user_positions.size());

  std::vector<double> dist(static_cast<std::size_t>(num_aps));
  std::vector<int> order(static_cast<std::size_t>(num_aps));
  for (const auto& user : layout.user_positions) {
    for (int l = 0; l < num_aps; ++l) {
      dist[l] = wrap_distance(user, layout.ap_positions[l], layout.area);
    }
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + cluster_size, order.end(),
                      [&](int a, int b) { return dist[a] < dist[b] || (dist[a] == dist[b] && a < b); });
    out.subsets.emplace_back(order.begin(), order.begin() + cluster_size);
  }
  return out;
}

ClusterAssignment full_clusters(int num_aps, int num_users, int antennas_per_ap) {
  if (num_aps < 1) throw std::invalid_argument("full clustering needs L >= 1");
  ClusterAssignment out;
  out.mode = ClusterMode::kFull;
  out.num_aps = num_aps;
  out.antennas_per_ap = antennas_per_ap;
  std::vector<int> all(static_cast<std::size_t>(num_aps));
  std::iota(all.begin(), all.end(), 0);
  out.subsets.assign(static_cast<std::size_t>(std::max(num_users, 0)), all);
  return out;
}

ClusterAssignment single_ap_clusters(std::vector<int> serving_ap, int num_aps,
                                     int antennas_per_ap) {
  ClusterAssignment out;
  out.mode = ClusterMode::kSingleAp;
  out.num_aps = num_aps;
  out.antennas_per_ap = antennas_per_ap;
  out.subsets.reserve(serving_ap.size());
  for (int l : serving_ap) out.subsets.push_back({l});
  out.validate();
  return out;
}

Eigen::VectorXcd apply_mask(const ClusterAssignment& assignment, int user,
                            const Eigen::VectorXcd& x) {
  const Eigen::Index n = assignment.antennas_per_ap;
  if (x.size() != static_cast<Eigen::Index>(assignment.num_aps) * n) {
    throw std::invalid_argument("vector length must equal L*N");
  }
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(x.size());
  for (int l : assignment.subsets.at(static_cast<std::size_t>(user))) {
    out.segment(l * n, n) = x.segment(l * n, n);
  }
  return out;
}

std::vector<int> served_users(const ClusterAssignment& assignment, int ap) {
  if (ap < 0 || ap >= assignment.num_aps) throw std::invalid_argument("AP index out of range");
  std::vector<int> users;
  for (int k = 0; k < assignment.num_users(); ++k) {
    const auto& subset = assignment.subsets[k];
    if (std::find(subset.begin(), subset.end(), ap) != subset.end()) users.push_back(k);
  }
  return users;
}

}  // namespace cfaloha
