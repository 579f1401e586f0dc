#pragma once

#include <cstddef>
#include <vector>

#include "uavnet/energy.hpp"
#include "uavnet/geometry.hpp"

namespace uavnet {

using DroneId = int;

namespace deployment {

struct Position {
  double x = 0.0;
  double y = 0.0;
  double altitude = 0.0;
};

struct DroneNode {
  DroneId id = 0;
  Position position;
  bool is_anchor = false;
  energy::BatteryState battery;
};

using Fleet = std::vector<DroneNode>;

class FovSpec {
 public:
  FovSpec(double half_angle_deg, double altitude_m);

  double half_angle_deg() const { return half_angle_deg_; }
  double altitude() const { return altitude_; }
  // side of the square ground footprint: 2 * altitude * tan(half_angle)
  double footprint_side() const { return footprint_side_; }

 private:
  double half_angle_deg_;
  double altitude_;
  double footprint_side_;
};

struct Rect {
  double x0, y0, x1, y1;
  bool contains(const Rect& inner, double tol = 1e-9) const {
    return inner.x0 >= x0 - tol && inner.x1 <= x1 + tol && inner.y0 >= y0 - tol &&
           inner.y1 <= y1 + tol;
  }
};

Rect footprint(const DroneNode& drone, double side);
Rect cell_rect(const geometry::CoverageGrid& grid, std::size_t r, std::size_t c);

// One drone per active cell, centered on it, ids in row-major cell order.
Fleet place_fleet(const geometry::CoverageGrid& grid, const FovSpec& fov);

// Marks the drone nearest the fleet centroid as anchor (lowest id on ties).
DroneId select_anchor(Fleet& fleet);

class DistanceMatrix {
 public:
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    d_[i * n_ + j] = v;
    d_[j * n_ + i] = v;
  }

 private:
  std::size_t n_;
  std::vector<double> d_;
};

double distance(const Position& a, const Position& b);

DistanceMatrix distance_matrix(const Fleet& fleet);

}  // namespace deployment
}  // namespace uavnet
