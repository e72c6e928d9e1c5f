#pragma once

#include <Eigen/Core>
#include <array>
#include <string>
#include <vector>

#include "terralign/camera.hpp"
#include "terralign/geodata.hpp"
#include "terralign/raster.hpp"
#include "terralign/se3.hpp"

namespace terralign {

// Rectangle of orthoimage pixels, end-exclusive.
struct PixelRegion {
  int col0 = 0;
  int row0 = 0;
  int width = 0;
  int height = 0;
};

// One vertex per orthoimage pixel center over a region, each unit cell split
// into two triangles along the top-left to bottom-right diagonal.
struct TerrainMesh {
  std::vector<Eigen::Vector3d> vertices;        // (easting, northing, elevation)
  std::vector<std::array<int, 3>> triangles;
  std::vector<Eigen::Vector2d> texcoords;       // continuous ortho pixel coords
  int grid_width = 0;
  int grid_height = 0;
};

// Rendered texture + metric z-depth (camera-frame z, meters). Pixels with no
// surface hit carry mask 0 and depth +inf.
struct RenderOutput {
  RasterU8 image;
  RasterF depth;
  RasterU8 mask;

  double valid_fraction() const;
};

PixelRegion full_region(const Orthoimage& ortho);

// Throws when the region leaves the orthoimage, or when any sampled
// elevation cell is nodata or outside the elevation raster.
TerrainMesh build_mesh(const Orthoimage& ortho, const ElevationMap& elev,
                       const PixelRegion& region);

// Deterministic z-buffered software rasterizer. `pose` is the camera pose in
// the world frame (T maps camera coordinates into world coordinates).
// Projection is the zero-distortion pinhole; distortion is handled by
// render_distorted. workers <= 0 selects the machine parallelism; output is
// identical for every worker count.
RenderOutput render(const TerrainMesh& mesh, const PoseSE3& pose,
                    const CameraModel& cam, int workers = 0);

// Renders on an undistorted pinhole grid with a 10% field-of-view margin and
// resamples each output pixel through the distortion map (bilinear texture,
// nearest depth). Equals render() exactly when all coefficients are zero.
RenderOutput render_distorted(const TerrainMesh& mesh, const PoseSE3& pose,
                              const CameraModel& cam, int workers = 0);

// Ortho-pixel region covered by the camera frustum, grown by margin_m meters
// and clamped to both rasters. Falls back to the full overlap when a frustum
// ray never reaches the terrain elevation range.
PixelRegion camera_footprint_region(const Orthoimage& ortho,
                                    const ElevationMap& elev,
                                    const PoseSE3& pose,
                                    const CameraModel& cam, double margin_m);

// Footprint crop + mesh + render; picks render_distorted when the camera has
// distortion.
RenderOutput render_from_layer(const MapLayer& layer, const PoseSE3& pose,
                               const CameraModel& cam, int workers = 0);

// Depth raster file: 16-byte header (magic "DPTH", uint32 width, height,
// reserved), then row-major little-endian float32; invalid pixels are +inf.
void save_depth(const std::string& path, const RasterF& depth);
RasterF load_depth(const std::string& path);

}  // namespace terralign
