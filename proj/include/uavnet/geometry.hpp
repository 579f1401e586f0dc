#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace uavnet::geometry {

inline constexpr double kEarthRadiusM = 6'371'000.0;

struct GeoPoint {
  double lat_deg = 0.0;
  double lon_deg = 0.0;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point2&) const = default;
};

struct BoundingBox {
  Point2 min;
  Point2 max;
  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
};

// Closed ring implied; the closing vertex is never stored twice.
class GeoPolygon {
 public:
  explicit GeoPolygon(std::vector<GeoPoint> vertices);

  const std::vector<GeoPoint>& vertices() const { return vertices_; }

 private:
  std::vector<GeoPoint> vertices_;
};

class PlanarPolygon {
 public:
  explicit PlanarPolygon(std::vector<Point2> vertices);

  const std::vector<Point2>& vertices() const { return vertices_; }
  const BoundingBox& bbox() const { return bbox_; }
  double area() const { return area_; }
  double perimeter() const;
  bool contains(Point2 p) const;

 private:
  std::vector<Point2> vertices_;
  BoundingBox bbox_;
  double area_ = 0.0;
};

/// Binary coverage matrix. Row 0 is the top (largest y) row, matching the
/// line order of matrix files; cell (r, c) spans
/// [origin.x + c*s, origin.x + (c+1)*s] x [origin.y + (rows-r-1)*s, origin.y + (rows-r)*s].
class CoverageGrid {
 public:
  CoverageGrid(std::size_t rows, std::size_t cols, std::vector<bool> cells, double cell_size,
               Point2 origin = {});

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double cell_size() const { return cell_size_; }
  Point2 origin() const { return origin_; }

  bool at(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }
  std::size_t active_count() const;
  Point2 cell_center(std::size_t r, std::size_t c) const;

  bool operator==(const CoverageGrid&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<bool> cells_;
  double cell_size_;
  Point2 origin_;
};

// Local equirectangular projection about the centroid latitude, translated so
// the bounding-box min corner is the origin.
PlanarPolygon normalize(const GeoPolygon& polygon);

// Cell is active iff its center lies inside the polygon (even-odd rule).
CoverageGrid rasterize(const PlanarPolygon& polygon, double cell_size);

GeoPolygon load_polygon(const std::filesystem::path& source);
CoverageGrid load_binary_matrix(const std::filesystem::path& source, double cell_size);
CoverageGrid parse_binary_matrix(const std::string& text, double cell_size);

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d);

}  // namespace uavnet::geometry
