#include "uavnet/deployment.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "uavnet/error.hpp"

namespace uavnet::deployment {

FovSpec::FovSpec(double half_angle_deg, double altitude_m)
    : half_angle_deg_(half_angle_deg), altitude_(altitude_m) {
  if (!(half_angle_deg > 0.0 && half_angle_deg < 90.0))
    throw Error(Errc::invalid_parameter,
                "FOV half angle must be in (0, 90) degrees, got " + std::to_string(half_angle_deg));
  if (!(altitude_m > 0.0))
    throw Error(Errc::invalid_parameter, "altitude must be positive");
  footprint_side_ = 2.0 * altitude_m * std::tan(half_angle_deg * std::numbers::pi / 180.0);
}

Rect footprint(const DroneNode& drone, double side) {
  const double h = side / 2.0;
  return {drone.position.x - h, drone.position.y - h, drone.position.x + h, drone.position.y + h};
}

Rect cell_rect(const geometry::CoverageGrid& grid, std::size_t r, std::size_t c) {
  const auto center = grid.cell_center(r, c);
  const double h = grid.cell_size() / 2.0;
  return {center.x - h, center.y - h, center.x + h, center.y + h};
}

Fleet place_fleet(const geometry::CoverageGrid& grid, const FovSpec& fov) {
  if (grid.active_count() == 0) throw Error(Errc::empty_area, "coverage grid has no active cell");
  const double side = fov.footprint_side();
  if (std::abs(grid.cell_size() - side) > 1e-9 * side)
    throw Error(Errc::invalid_parameter, "grid cell size " + std::to_string(grid.cell_size()) +
                                             " does not match FOV footprint " +
                                             std::to_string(side));
  Fleet fleet;
  fleet.reserve(grid.active_count());
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      if (!grid.at(r, c)) continue;
      const auto center = grid.cell_center(r, c);
      DroneNode node;
      node.id = static_cast<DroneId>(fleet.size());
      node.position = {center.x, center.y, fov.altitude()};
      fleet.push_back(node);
    }
  }
  return fleet;
}

DroneId select_anchor(Fleet& fleet) {
  if (fleet.empty()) throw Error(Errc::empty_fleet, "cannot select an anchor from an empty fleet");
  Position centroid{};
  for (const auto& d : fleet) {
    centroid.x += d.position.x;
    centroid.y += d.position.y;
    centroid.altitude += d.position.altitude;
  }
  const double n = static_cast<double>(fleet.size());
  centroid = {centroid.x / n, centroid.y / n, centroid.altitude / n};

  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < fleet.size(); ++i) {
    const double d = distance(fleet[i].position, centroid);
    // sub-nanometre differences are round-off; keep the lower id
    if (d + 1e-9 < best_d) {
      best_d = d;
      best = i;
    }
  }
  for (auto& d : fleet) d.is_anchor = false;
  fleet[best].is_anchor = true;
  return fleet[best].id;
}

double distance(const Position& a, const Position& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.altitude - b.altitude;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

DistanceMatrix distance_matrix(const Fleet& fleet) {
  if (fleet.empty()) throw Error(Errc::empty_fleet, "distance matrix of an empty fleet");
  DistanceMatrix m(fleet.size());
  for (std::size_t i = 0; i < fleet.size(); ++i)
    for (std::size_t j = i + 1; j < fleet.size(); ++j)
      m.set(i, j, distance(fleet[i].position, fleet[j].position));
  return m;
}

}  // namespace uavnet::deployment
