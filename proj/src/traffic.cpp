#include "cfaloha/traffic.hpp"

#include <algorithm>
#include <stdexcept>

namespace cfaloha {

bool SlotActivity::is_active(int user) const {
  return std::binary_search(active.begin(), active.end(), user);
}

int SlotActivity::position_of(int user) const {
  const auto it = std::lower_bound(active.begin(), active.end(), user);
  if (it == active.end() || *it != user) return -1;
  return static_cast<int>(it - active.begin());
}

SlotActivity activity_from_uniforms(const std::vector<double>& uniforms, double pi) {
  if (!(pi >= 0.0 && pi <= 1.0)) {
    throw std::invalid_argument("activation probability must lie in [0, 1]");
  }
  SlotActivity slot;
  for (std::size_t k = 0; k < uniforms.size(); ++k) {
    if (pi >= 1.0 || uniforms[k] < pi) slot.active.push_back(static_cast<int>(k));
  }
  return slot;
}

SlotActivity sample_activity(int num_users, double pi, Rng& rng) {
  if (!(pi >= 0.0 && pi <= 1.0)) {
    throw std::invalid_argument("activation probability must lie in [0, 1]");
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> u(static_cast<std::size_t>(std::max(num_users, 0)));
  for (auto& x : u) x = unit(rng);
  return activity_from_uniforms(u, pi);
}

}  // namespace cfaloha
