#ifndef CFALOHA_TRAFFIC_HPP
#define CFALOHA_TRAFFIC_HPP

#include <vector>

#include "cfaloha/random.hpp"

namespace cfaloha {

/// Users transmitting in one slot.
struct SlotActivity {
  std::vector<int> active;  // ascending user indices

  int k_a() const { return static_cast<int>(active.size()); }
  bool is_active(int user) const;
  /// Position of `user` within `active`, or -1.
  int position_of(int user) const;
};

/// Each of the K users is active independently with probability pi, so
/// K_a ~ Bin(K, pi). Exactly K uniforms are drawn, one per user in index
/// order, which couples activity sets across pi for a shared stream.
/// Throws std::invalid_argument if pi lies outside [0, 1].
SlotActivity sample_activity(int num_users, double pi, Rng& rng);

/// Activity from pre-drawn per-user uniforms: user k is active iff u[k] < pi.
SlotActivity activity_from_uniforms(const std::vector<double>& uniforms, double pi);

}  // namespace cfaloha

#endif  // CFALOHA_TRAFFIC_HPP
