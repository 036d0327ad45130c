#include "cfaloha/topology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cfaloha {

void Area::validate() const {
  if (!(side_length > 0.0) || !std::isfinite(side_length)) {
    throw std::invalid_argument("area side length must be positive");
  }
}

void Layout::validate() const {
  area.validate();
  if (ap_positions.empty()) throw std::invalid_argument("layout needs at least one AP");
  if (user_positions.empty()) throw std::invalid_argument("layout needs at least one user");
  if (antennas_per_ap < 1) throw std::invalid_argument("antennas per AP must be >= 1");
  auto inside = [this](const Point2& p) {
    return p.x >= 0.0 && p.x < area.side_length && p.y >= 0.0 && p.y < area.side_length;
  };
  for (const auto& p : ap_positions) {
    if (!inside(p)) throw std::invalid_argument("AP position outside the area");
  }
  for (const auto& p : user_positions) {
    if (!inside(p)) throw std::invalid_argument("user position outside the area");
  }
}

std::vector<Point2> place_uniform(std::size_t count, const Area& area, Rng& rng) {
  area.validate();
  std::uniform_real_distribution<double> coord(0.0, area.side_length);
  std::vector<Point2> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    // libstdc++ may round a draw up to the upper bound
    const double x = std::min(coord(rng), std::nextafter(area.side_length, 0.0));
    const double y = std::min(coord(rng), std::nextafter(area.side_length, 0.0));
    points.push_back({x, y});
  }
  return points;
}

double wrap_distance(const Point2& p, const Point2& q, const Area& area) {
  double dx = std::abs(p.x - q.x);
  double dy = std::abs(p.y - q.y);
  if (area.wrap) {
    dx = std::min(dx, area.side_length - dx);
    dy = std::min(dy, area.side_length - dy);
  }
  return std::hypot(dx, dy);
}

double path_loss_db(double distance_m) {
  if (!(distance_m > 0.0)) {
    throw std::domain_error("path loss requires a positive distance, got " +
                            std::to_string(distance_m));
  }
  return -30.5 - 36.7 * std::log10(distance_m);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

double dbm_to_watts(double dbm) { return db_to_linear(dbm - 30.0); }

Eigen::MatrixXd large_scale_matrix(const Layout& layout, double min_distance) {
  if (!(min_distance > 0.0)) {
    throw std::domain_error("distance clamp floor must be positive");
  }
  const int num_users = layout.num_users();
  const int num_aps = layout.num_aps();
  Eigen::MatrixXd beta(num_users, num_aps);
  for (int k = 0; k < num_users; ++k) {
    for (int l = 0; l < num_aps; ++l) {
      const double d = wrap_distance(layout.user_positions[k], layout.ap_positions[l], layout.area);
      beta(k, l) = db_to_linear(path_loss_db(std::max(d, min_distance)));
    }
  }
  return beta;
}

Layout random_layout(int num_aps, int num_users, int antennas_per_ap,
                     const Area& area, Rng& rng) {
  Layout layout;
  layout.area = area;
  layout.antennas_per_ap = antennas_per_ap;
  layout.ap_positions = place_uniform(static_cast<std::size_t>(num_aps), area, rng);
  layout.user_positions = place_uniform(static_cast<std::size_t>(num_users), area, rng);
  layout.validate();
  return layout;
}

}  // namespace cfaloha
