#include "terralign/geodata.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "terralign/png_io.hpp"

namespace terralign {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error(what);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

void GeoTransform::validate() const {
  if (!(pixel_size_x > 0.0) || !(pixel_size_y > 0.0)) {
    fail("GeoTransform: pixel sizes must be positive (got " +
         std::to_string(pixel_size_x) + ", " + std::to_string(pixel_size_y) +
         ")");
  }
  if (!std::isfinite(origin_easting) || !std::isfinite(origin_northing)) {
    fail("GeoTransform: non-finite origin");
  }
}

GeoExtent Orthoimage::extent() const {
  return {geo.origin_easting,
          geo.origin_easting + width() * geo.pixel_size_x,
          geo.origin_northing - height() * geo.pixel_size_y,
          geo.origin_northing};
}

GeoExtent ElevationMap::extent() const {
  return {geo.origin_easting,
          geo.origin_easting + width() * geo.pixel_size_x,
          geo.origin_northing - height() * geo.pixel_size_y,
          geo.origin_northing};
}

const MapLayer& MapStack::recent() const {
  if (layers.empty()) fail("MapStack: no layers");
  const int idx = recent_index < 0 ? static_cast<int>(layers.size()) - 1
                                   : recent_index;
  if (idx >= static_cast<int>(layers.size())) {
    fail("MapStack: recent_index out of range");
  }
  return layers[idx];
}

const MapLayer& MapStack::layer(const std::string& label) const {
  for (const MapLayer& l : layers) {
    if (l.label == label) return l;
  }
  fail("MapStack: no layer labeled '" + label + "'");
}

void MapStack::validate() const {
  if (layers.empty()) fail("MapStack: at least one layer required");
  recent();  // range-checks recent_index
}

Orthoimage load_orthoimage(const std::string& image_path,
                           const std::string& world_file_path) {
  Orthoimage ortho;
  ortho.image = read_png(image_path);

  std::ifstream world(world_file_path);
  if (!world) fail("cannot open world file " + world_file_path);
  double psx, psy, oe, on;
  if (!(world >> psx >> psy >> oe >> on)) {
    fail("world file " + world_file_path +
         " must hold 4 numbers: pixel_size_x pixel_size_y origin_easting "
         "origin_northing");
  }
  ortho.geo = {oe, on, psx, psy};
  ortho.geo.validate();
  ortho.label = std::filesystem::path(image_path).stem().string();
  return ortho;
}

void save_orthoimage(const Orthoimage& ortho, const std::string& image_path,
                     const std::string& world_file_path) {
  write_png(image_path, ortho.image);
  std::ofstream world(world_file_path);
  if (!world) fail("cannot write world file " + world_file_path);
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%.17g\n%.17g\n%.17g\n%.17g\n",
                ortho.geo.pixel_size_x, ortho.geo.pixel_size_y,
                ortho.geo.origin_easting, ortho.geo.origin_northing);
  world << buf;
  if (!world) fail("write error on " + world_file_path);
}

ElevationMap load_elevation(const std::string& asc_path) {
  std::ifstream in(asc_path);
  if (!in) fail("cannot open elevation file " + asc_path);

  long ncols = -1, nrows = -1;
  double xll = 0.0, yll = 0.0, cellsize = 0.0;
  double nodata = -9999.0;

  // Header: key/value lines until the first numeric row.
  std::string key;
  while (true) {
    const auto pos = in.tellg();
    if (!(in >> key)) fail(asc_path + ": missing grid values");
    const std::string k = lower(key);
    if (k == "ncols") {
      if (!(in >> ncols)) fail(asc_path + ": malformed ncols");
    } else if (k == "nrows") {
      if (!(in >> nrows)) fail(asc_path + ": malformed nrows");
    } else if (k == "xllcorner") {
      if (!(in >> xll)) fail(asc_path + ": malformed xllcorner");
    } else if (k == "yllcorner") {
      if (!(in >> yll)) fail(asc_path + ": malformed yllcorner");
    } else if (k == "cellsize") {
      if (!(in >> cellsize)) fail(asc_path + ": malformed cellsize");
    } else if (k == "nodata_value") {
      if (!(in >> nodata)) fail(asc_path + ": malformed NODATA_value");
    } else {
      // First token of the value block; rewind and stop header parsing.
      in.clear();
      in.seekg(pos);
      break;
    }
  }

  if (ncols <= 0 || nrows <= 0) {
    fail(asc_path + ": header must define positive ncols and nrows");
  }
  if (!(cellsize > 0.0)) {
    fail(asc_path + ": header must define a positive cellsize");
  }

  ElevationMap map;
  map.nodata = static_cast<float>(nodata);
  map.geo = {xll, yll + nrows * cellsize, cellsize, cellsize};
  map.geo.validate();
  map.data = RasterF(static_cast<int>(ncols), static_cast<int>(nrows));

  for (long r = 0; r < nrows; ++r) {
    for (long c = 0; c < ncols; ++c) {
      double v;
      if (!(in >> v)) {
        fail(asc_path + ": row " + std::to_string(r) + " ended after " +
             std::to_string(c) + " of " + std::to_string(ncols) + " values");
      }
      if (!std::isfinite(v) && static_cast<float>(v) != map.nodata) {
        fail(asc_path + ": non-finite value at row " + std::to_string(r) +
             " col " + std::to_string(c));
      }
      map.data.at(static_cast<int>(c), static_cast<int>(r)) =
          static_cast<float>(v);
    }
  }
  double extra;
  if (in >> extra) {
    fail(asc_path + ": more values than ncols x nrows");
  }
  return map;
}

void save_elevation(const ElevationMap& map, const std::string& asc_path) {
  if (map.geo.pixel_size_x != map.geo.pixel_size_y) {
    fail("save_elevation: ESRI ASCII grids require square cells");
  }
  std::ofstream out(asc_path);
  if (!out) fail("cannot write elevation file " + asc_path);
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "ncols %d\nnrows %d\nxllcorner %.17g\nyllcorner %.17g\n"
                "cellsize %.17g\nNODATA_value %.9g\n",
                map.width(), map.height(), map.geo.origin_easting,
                map.geo.origin_northing - map.height() * map.geo.pixel_size_y,
                map.geo.pixel_size_x, static_cast<double>(map.nodata));
  out << buf;
  for (int r = 0; r < map.height(); ++r) {
    for (int c = 0; c < map.width(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.9g", map.data.at(c, r));
      out << buf << (c + 1 < map.width() ? ' ' : '\n');
    }
  }
  if (!out) fail("write error on " + asc_path);
}

double sample_elevation(const ElevationMap& map, double easting,
                        double northing) {
  const Eigen::Vector2d px = map.geo.geo_to_pixel(easting, northing);
  if (px.x() < 0.0 || px.y() < 0.0 || px.x() > map.width() ||
      px.y() > map.height()) {
    fail("sample_elevation: query (" + std::to_string(easting) + ", " +
         std::to_string(northing) + ") outside the raster extent");
  }
  // Shift to cell-center coordinates: cell (c, r) holds the value at
  // continuous coordinate (c + 0.5, r + 0.5). The outer half-pixel ring
  // clamps to the edge cells.
  const double x = std::clamp(px.x() - 0.5, 0.0, map.width() - 1.0);
  const double y = std::clamp(px.y() - 0.5, 0.0, map.height() - 1.0);
  int x0 = std::min(static_cast<int>(x), map.width() - 2);
  int y0 = std::min(static_cast<int>(y), map.height() - 2);
  if (map.width() == 1) x0 = 0;
  if (map.height() == 1) y0 = 0;
  const int x1 = std::min(x0 + 1, map.width() - 1);
  const int y1 = std::min(y0 + 1, map.height() - 1);
  for (int yy : {y0, y1}) {
    for (int xx : {x0, x1}) {
      if (map.is_nodata(xx, yy)) {
        fail("sample_elevation: nodata neighbor at cell (" +
             std::to_string(xx) + ", " + std::to_string(yy) + ")");
      }
    }
  }
  const double dx = x - x0;
  const double dy = y - y0;
  const double v00 = map.data.at(x0, y0);
  const double v10 = map.data.at(x1, y0);
  const double v01 = map.data.at(x0, y1);
  const double v11 = map.data.at(x1, y1);
  return (1.0 - dy) * ((1.0 - dx) * v00 + dx * v10) +
         dy * ((1.0 - dx) * v01 + dx * v11);
}

namespace {

// Snap a geo range onto a raster's pixel grid: outward snap with a small
// tolerance so exactly aligned requests do not spill into the next pixel.
struct PixelRange {
  int col0, col1, row0, row1;  // end-exclusive
};

PixelRange snap_range(const GeoTransform& geo, int width, int height,
                      const Eigen::Vector2d& easting_range,
                      const Eigen::Vector2d& northing_range) {
  constexpr double kSnap = 1e-9;
  const double c0 = (easting_range[0] - geo.origin_easting) / geo.pixel_size_x;
  const double c1 = (easting_range[1] - geo.origin_easting) / geo.pixel_size_x;
  const double r0 = (geo.origin_northing - northing_range[1]) / geo.pixel_size_y;
  const double r1 = (geo.origin_northing - northing_range[0]) / geo.pixel_size_y;
  PixelRange out;
  out.col0 = std::max(0, static_cast<int>(std::floor(c0 + kSnap)));
  out.col1 = std::min(width, static_cast<int>(std::ceil(c1 - kSnap)));
  out.row0 = std::max(0, static_cast<int>(std::floor(r0 + kSnap)));
  out.row1 = std::min(height, static_cast<int>(std::ceil(r1 - kSnap)));
  if (out.col1 <= out.col0 || out.row1 <= out.row0) {
    fail("crop_region: empty intersection with raster extent");
  }
  return out;
}

}  // namespace

MapStack crop_region(const MapStack& stack,
                     const Eigen::Vector2d& easting_range,
                     const Eigen::Vector2d& northing_range) {
  stack.validate();
  if (easting_range[0] >= easting_range[1] ||
      northing_range[0] >= northing_range[1]) {
    fail("crop_region: degenerate range");
  }

  MapStack out;
  out.recent_index = stack.recent_index;
  for (const MapLayer& layer : stack.layers) {
    MapLayer cropped;
    cropped.label = layer.label;

    const PixelRange orange =
        snap_range(layer.ortho.geo, layer.ortho.width(), layer.ortho.height(),
                   easting_range, northing_range);
    Orthoimage& o = cropped.ortho;
    o.label = layer.ortho.label;
    o.geo = layer.ortho.geo;
    o.geo.origin_easting += orange.col0 * o.geo.pixel_size_x;
    o.geo.origin_northing -= orange.row0 * o.geo.pixel_size_y;
    o.image = RasterU8(orange.col1 - orange.col0, orange.row1 - orange.row0,
                       layer.ortho.channels());
    for (int y = 0; y < o.height(); ++y) {
      for (int x = 0; x < o.width(); ++x) {
        for (int c = 0; c < o.channels(); ++c) {
          o.image.at(x, y, c) =
              layer.ortho.image.at(orange.col0 + x, orange.row0 + y, c);
        }
      }
    }

    const PixelRange erange = snap_range(
        layer.elevation.geo, layer.elevation.width(), layer.elevation.height(),
        easting_range, northing_range);
    ElevationMap& e = cropped.elevation;
    e.nodata = layer.elevation.nodata;
    e.geo = layer.elevation.geo;
    e.geo.origin_easting += erange.col0 * e.geo.pixel_size_x;
    e.geo.origin_northing -= erange.row0 * e.geo.pixel_size_y;
    e.data = RasterF(erange.col1 - erange.col0, erange.row1 - erange.row0);
    for (int y = 0; y < e.height(); ++y) {
      for (int x = 0; x < e.width(); ++x) {
        e.data.at(x, y) =
            layer.elevation.data.at(erange.col0 + x, erange.row0 + y);
      }
    }

    out.layers.push_back(std::move(cropped));
  }
  return out;
}

}  // namespace terralign
