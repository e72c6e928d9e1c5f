#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "terralign/raster.hpp"

namespace terralign {

// Affine mapping between raster pixel indices and planar metric coordinates
// (UTM-style easting/northing). North-up only: northing decreases as the row
// index grows. The origin anchors the outer corner of pixel (0, 0); the
// center of pixel (c, r) therefore sits at continuous coordinate
// (c + 0.5, r + 0.5).
struct GeoTransform {
  double origin_easting = 0.0;
  double origin_northing = 0.0;
  double pixel_size_x = 1.0;  // meters per pixel, > 0
  double pixel_size_y = 1.0;  // meters per pixel, > 0

  Eigen::Vector2d geo_to_pixel(double easting, double northing) const {
    return {(easting - origin_easting) / pixel_size_x,
            (origin_northing - northing) / pixel_size_y};
  }

  Eigen::Vector2d pixel_to_geo(double col, double row) const {
    return {origin_easting + col * pixel_size_x,
            origin_northing - row * pixel_size_y};
  }

  void validate() const;
};

struct GeoExtent {
  double east_min, east_max, north_min, north_max;

  bool contains(double easting, double northing) const {
    return easting >= east_min && easting <= east_max &&
           northing >= north_min && northing <= north_max;
  }
};

// Geo-referenced 8-bit texture raster (1 or 3 channels).
struct Orthoimage {
  RasterU8 image;
  GeoTransform geo;
  std::string label;

  int width() const { return image.width(); }
  int height() const { return image.height(); }
  int channels() const { return image.channels(); }
  GeoExtent extent() const;
};

// Geo-referenced float elevation raster, meters above datum. Cells equal to
// the nodata sentinel are holes; every other cell is finite.
struct ElevationMap {
  RasterF data;
  float nodata = -9999.0f;
  GeoTransform geo;

  int width() const { return data.width(); }
  int height() const { return data.height(); }
  bool is_nodata(int x, int y) const { return data.at(x, y) == nodata; }
  GeoExtent extent() const;
};

struct MapLayer {
  std::string label;
  Orthoimage ortho;
  ElevationMap elevation;
};

// Ordered texture+elevation layers (e.g. acquisition years). One layer is
// designated most recent and is the one online tracking renders from.
struct MapStack {
  std::vector<MapLayer> layers;
  int recent_index = -1;  // defaults to the last layer

  const MapLayer& recent() const;
  const MapLayer& layer(const std::string& label) const;
  void validate() const;
};

// PNG + 4-line world header (pixel_size_x, pixel_size_y, origin_easting,
// origin_northing). Label defaults to the image file stem.
Orthoimage load_orthoimage(const std::string& image_path,
                           const std::string& world_file_path);
void save_orthoimage(const Orthoimage& ortho, const std::string& image_path,
                     const std::string& world_file_path);

// ESRI ASCII grid (.asc), standard 6-line header, row-major north-up values.
ElevationMap load_elevation(const std::string& asc_path);
void save_elevation(const ElevationMap& map, const std::string& asc_path);

// Bilinear interpolation between the four surrounding cell centers. Throws
// when the query falls outside the cell-center hull or any neighbor is
// nodata.
double sample_elevation(const ElevationMap& map, double easting,
                        double northing);

// New stack covering the requested ranges snapped outward to each raster's
// own pixel grid. Throws when the region misses any raster.
MapStack crop_region(const MapStack& stack,
                     const Eigen::Vector2d& easting_range,
                     const Eigen::Vector2d& northing_range);

}  // namespace terralign
