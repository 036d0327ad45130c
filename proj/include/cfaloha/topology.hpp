#ifndef CFALOHA_TOPOLOGY_HPP
#define CFALOHA_TOPOLOGY_HPP

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "cfaloha/random.hpp"

namespace cfaloha {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Square deployment area. With wrap enabled the square is treated as a torus
/// so that nodes near an edge see the same neighbourhood as nodes in the middle.
struct Area {
  double side_length = 1000.0;  // meters
  bool wrap = true;

  void validate() const;
};

/// AP and user positions plus the per-AP antenna count.
struct Layout {
  std::vector<Point2> ap_positions;
  std::vector<Point2> user_positions;
  int antennas_per_ap = 1;
  Area area;

  int num_aps() const { return static_cast<int>(ap_positions.size()); }
  int num_users() const { return static_cast<int>(user_positions.size()); }
  int total_antennas() const { return num_aps() * antennas_per_ap; }

  /// Throws std::invalid_argument on empty node sets, N < 1 or
  /// coordinates outside [0, side).
  void validate() const;
};

/// The CPU sits at the origin. It enters no formula and is kept for reference.
inline constexpr Point2 kCpuPosition{0.0, 0.0};

/// Default reference distance below which path loss is clamped (meters).
inline constexpr double kDefaultMinDistance = 1.0;

std::vector<Point2> place_uniform(std::size_t count, const Area& area, Rng& rng);

/// Distance between p and q; toroidal when area.wrap is set.
double wrap_distance(const Point2& p, const Point2& q, const Area& area);

/// -30.5 - 36.7 log10(d / 1 m). Throws std::domain_error for d <= 0.
double path_loss_db(double distance_m);

double db_to_linear(double db);
double linear_to_db(double linear);
/// dBm to watts.
double dbm_to_watts(double dbm);

/// K x L matrix of linear large-scale gains. Distances below min_distance are
/// raised to min_distance before evaluating the path loss.
Eigen::MatrixXd large_scale_matrix(const Layout& layout,
                                   double min_distance = kDefaultMinDistance);

/// Draws a fresh layout with uniformly placed APs and users.
Layout random_layout(int num_aps, int num_users, int antennas_per_ap,
                     const Area& area, Rng& rng);

}  // namespace cfaloha

#endif  // CFALOHA_TOPOLOGY_HPP
