#include "cfaloha/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace cfaloha {

SmallScaleFading sample_small_scale(int num_users, int num_aps,
                                    int antennas_per_ap, Rng& rng) {
  if (num_users < 1 || num_aps < 1 || antennas_per_ap < 1) {
    throw std::invalid_argument("fading dimensions must be positive");
  }
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  SmallScaleFading out;
  out.num_aps = num_aps;
  out.antennas_per_ap = antennas_per_ap;
  out.h.resize(static_cast<Eigen::Index>(num_aps) * antennas_per_ap, num_users);
  for (Eigen::Index k = 0; k < out.h.cols(); ++k) {
    for (Eigen::Index m = 0; m < out.h.rows(); ++m) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      out.h(m, k) = {re, im};
    }
  }
  return out;
}

ChannelRealization assemble_channel(const Eigen::MatrixXd& beta,
                                    const SmallScaleFading& fading) {
  const Eigen::Index num_users = fading.h.cols();
  if (beta.rows() != num_users || beta.cols() != fading.num_aps ||
      fading.h.rows() != static_cast<Eigen::Index>(fading.num_aps) * fading.antennas_per_ap) {
    throw std::invalid_argument("large-scale matrix does not match fading dimensions");
  }
  ChannelRealization out;
  out.num_aps = fading.num_aps;
  out.antennas_per_ap = fading.antennas_per_ap;
  out.beta = beta;
  out.g.resize(fading.h.rows(), num_users);
  const int n = fading.antennas_per_ap;
  for (Eigen::Index k = 0; k < num_users; ++k) {
    for (int l = 0; l < fading.num_aps; ++l) {
      const double amplitude = std::sqrt(beta(k, l));
      out.g.block(static_cast<Eigen::Index>(l) * n, k, n, 1) =
          amplitude * fading.h.block(static_cast<Eigen::Index>(l) * n, k, n, 1);
    }
  }
  return out;
}

}  // namespace cfaloha
