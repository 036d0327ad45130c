#ifndef CFALOHA_CHANNEL_HPP
#define CFALOHA_CHANNEL_HPP

#include <Eigen/Dense>

#include "cfaloha/random.hpp"

namespace cfaloha {

/// Small-scale fading for K users, L APs, N antennas per AP.
/// Column k holds the stacked LN-vector of user k; AP l occupies rows
/// [l*N, (l+1)*N).
struct SmallScaleFading {
  Eigen::MatrixXcd h;
  int num_aps = 0;
  int antennas_per_ap = 0;
};

/// One block-fading realization. Column k of `g` is the stacked channel
/// g_k = [g_k1; ...; g_kL] of user k.
struct ChannelRealization {
  Eigen::MatrixXcd g;     // LN x K
  Eigen::MatrixXd beta;   // K x L, linear
  int num_aps = 0;
  int antennas_per_ap = 0;

  int num_users() const { return static_cast<int>(g.cols()); }
  int total_antennas() const { return static_cast<int>(g.rows()); }

  /// Rows of AP l's antenna block within a stacked channel vector.
  int block_start(int ap) const { return ap * antennas_per_ap; }
};

/// i.i.d. CN(0, 1) entries (real and imaginary parts each of variance 1/2).
SmallScaleFading sample_small_scale(int num_users, int num_aps,
                                    int antennas_per_ap, Rng& rng);

/// g_kl = sqrt(beta_kl) * h_kl. Throws std::invalid_argument on shape mismatch.
ChannelRealization assemble_channel(const Eigen::MatrixXd& beta,
                                    const SmallScaleFading& fading);

}  // namespace cfaloha

#endif  // CFALOHA_CHANNEL_HPP
