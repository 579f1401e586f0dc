#include "uavnet/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "uavnet/error.hpp"

namespace uavnet::geometry {
namespace {

double cross(Point2 o, Point2 a, Point2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(Point2 p, Point2 a, Point2 b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

int sign(double v) { return (v > 0) - (v < 0); }

double signed_area(const std::vector<Point2>& v) {
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    acc += a.x * b.y - b.x * a.y;
  }
  return acc / 2.0;
}

void check_simple(const std::vector<Point2>& v) {
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // adjacent edges share a vertex; skip them
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]))
        throw Error(Errc::invalid_polygon, "polygon edges " + std::to_string(i) + " and " +
                                               std::to_string(j) + " intersect");
    }
  }
}

std::vector<Point2> as_points(const std::vector<GeoPoint>& geo) {
  std::vector<Point2> out;
  out.reserve(geo.size());
  for (const auto& g : geo) out.push_back({g.lon_deg, g.lat_deg});
  return out;
}

}  // namespace

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  const int d1 = sign(cross(c, d, a));
  const int d2 = sign(cross(c, d, b));
  const int d3 = sign(cross(a, b, c));
  const int d4 = sign(cross(a, b, d));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(a, c, d)) return true;
  if (d2 == 0 && on_segment(b, c, d)) return true;
  if (d3 == 0 && on_segment(c, a, b)) return true;
  if (d4 == 0 && on_segment(d, a, b)) return true;
  return false;
}

GeoPolygon::GeoPolygon(std::vector<GeoPoint> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() > 1) {
    const auto& f = vertices_.front();
    const auto& b = vertices_.back();
    if (f.lat_deg == b.lat_deg && f.lon_deg == b.lon_deg) vertices_.pop_back();
  }
  if (vertices_.size() < 3)
    throw Error(Errc::invalid_polygon,
                "need at least 3 vertices, got " + std::to_string(vertices_.size()));
  for (const auto& g : vertices_) {
    if (!(g.lat_deg >= -90.0 && g.lat_deg <= 90.0) || !(g.lon_deg >= -180.0 && g.lon_deg <= 180.0))
      throw Error(Errc::invalid_polygon, "coordinate out of range");
  }
  const auto pts = as_points(vertices_);
  check_simple(pts);
  if (signed_area(pts) == 0.0) throw Error(Errc::invalid_polygon, "polygon has zero area");
}

PlanarPolygon::PlanarPolygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3)
    throw Error(Errc::invalid_polygon,
                "need at least 3 vertices, got " + std::to_string(vertices_.size()));
  check_simple(vertices_);
  area_ = std::abs(signed_area(vertices_));
  if (!(area_ > 0.0)) throw Error(Errc::invalid_polygon, "polygon has zero area");
  bbox_.min = bbox_.max = vertices_.front();
  for (const auto& p : vertices_) {
    bbox_.min.x = std::min(bbox_.min.x, p.x);
    bbox_.min.y = std::min(bbox_.min.y, p.y);
    bbox_.max.x = std::max(bbox_.max.x, p.x);
    bbox_.max.y = std::max(bbox_.max.y, p.y);
  }
}

double PlanarPolygon::perimeter() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const auto& a = vertices_[i];
    const auto& b = vertices_[(i + 1) % vertices_.size()];
    acc += std::hypot(b.x - a.x, b.y - a.y);
  }
  return acc;
}

bool PlanarPolygon::contains(Point2 p) const {
  bool inside = false;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = vertices_[i];
    const auto& b = vertices_[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

CoverageGrid::CoverageGrid(std::size_t rows, std::size_t cols, std::vector<bool> cells,
                           double cell_size, Point2 origin)
    : rows_(rows), cols_(cols), cells_(std::move(cells)), cell_size_(cell_size), origin_(origin) {
  if (!(cell_size_ > 0.0))
    throw Error(Errc::invalid_parameter, "cell size must be positive");
  if (cells_.size() != rows_ * cols_)
    throw Error(Errc::invalid_parameter, "cell count does not match grid dimensions");
  if (active_count() == 0) throw Error(Errc::empty_area, "coverage grid has no active cell");
}

std::size_t CoverageGrid::active_count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), true));
}

Point2 CoverageGrid::cell_center(std::size_t r, std::size_t c) const {
  return {origin_.x + (static_cast<double>(c) + 0.5) * cell_size_,
          origin_.y + (static_cast<double>(rows_ - r) - 0.5) * cell_size_};
}

PlanarPolygon normalize(const GeoPolygon& polygon) {
  const auto& geo = polygon.vertices();
  const auto pts = as_points(geo);

  // area centroid of the ring in (lon, lat) space
  const double a2 = 2.0 * signed_area(pts);
  double cy = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    const auto& q = pts[(i + 1) % pts.size()];
    cy += (p.y + q.y) * (p.x * q.y - q.x * p.y);
  }
  const double lat0 = cy / (3.0 * a2);

  const double deg = std::numbers::pi / 180.0;
  const double kx = kEarthRadiusM * deg * std::cos(lat0 * deg);
  const double ky = kEarthRadiusM * deg;

  double min_lat = geo.front().lat_deg;
  double min_lon = geo.front().lon_deg;
  for (const auto& g : geo) {
    min_lat = std::min(min_lat, g.lat_deg);
    min_lon = std::min(min_lon, g.lon_deg);
  }
  std::vector<Point2> out;
  out.reserve(geo.size());
  for (const auto& g : geo) out.push_back({kx * (g.lon_deg - min_lon), ky * (g.lat_deg - min_lat)});
  return PlanarPolygon(std::move(out));
}

CoverageGrid rasterize(const PlanarPolygon& polygon, double cell_size) {
  if (!(cell_size > 0.0)) throw Error(Errc::invalid_parameter, "cell size must be positive");
  const auto& box = polygon.bbox();
  // tolerate round-off when the extent is an exact multiple of the cell size
  auto cells_for = [cell_size](double extent) {
    return static_cast<std::size_t>(std::max(1.0, std::ceil(extent / cell_size - 1e-9)));
  };
  const std::size_t cols = cells_for(box.width());
  const std::size_t rows = cells_for(box.height());

  std::vector<bool> cells(rows * cols, false);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const Point2 center{box.min.x + (static_cast<double>(c) + 0.5) * cell_size,
                          box.min.y + (static_cast<double>(rows - r) - 0.5) * cell_size};
      cells[r * cols + c] = polygon.contains(center);
    }
  }
  bool any = std::find(cells.begin(), cells.end(), true) != cells.end();
  if (!any)
    throw Error(Errc::empty_area, "no cell center falls inside the polygon at this cell size");
  return CoverageGrid(rows, cols, std::move(cells), cell_size, box.min);
}

GeoPolygon load_polygon(const std::filesystem::path& source) {
  std::ifstream in(source);
  if (!in) throw Error(Errc::format_error, "cannot open polygon file " + source.string());
  std::vector<GeoPoint> vertices;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    GeoPoint g;
    std::string rest;
    if (!(fields >> g.lat_deg >> g.lon_deg) || (fields >> rest))
      throw Error(Errc::format_error,
                  source.string() + ":" + std::to_string(lineno) + ": expected \"lat,lon\"");
    vertices.push_back(g);
  }
  return GeoPolygon(std::move(vertices));
}

CoverageGrid parse_binary_matrix(const std::string& text, double cell_size) {
  std::istringstream in(text);
  std::vector<bool> cells;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (rows == 0) {
      cols = line.size();
    } else if (line.size() != cols) {
      throw Error(Errc::format_error, "row " + std::to_string(rows + 1) + " has " +
                                          std::to_string(line.size()) + " cells, expected " +
                                          std::to_string(cols));
    }
    for (char ch : line) {
      if (ch != '0' && ch != '1')
        throw Error(Errc::format_error, std::string("non-binary value '") + ch + "' in row " +
                                            std::to_string(rows + 1));
      cells.push_back(ch == '1');
    }
    ++rows;
  }
  if (rows == 0) throw Error(Errc::empty_area, "binary matrix has no rows");
  return CoverageGrid(rows, cols, std::move(cells), cell_size);
}

CoverageGrid load_binary_matrix(const std::filesystem::path& source, double cell_size) {
  std::ifstream in(source);
  if (!in) throw Error(Errc::format_error, "cannot open matrix file " + source.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_binary_matrix(buf.str(), cell_size);
}

}  // namespace uavnet::geometry
