#pragma once

#include <Eigen/Core>

namespace terralign {

// Radial-tangential distortion, 5 coefficients (k1, k2, p1, p2, k3).
struct Distortion {
  double k1 = 0.0;
  double k2 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double k3 = 0.0;

  bool is_zero() const {
    return k1 == 0.0 && k2 == 0.0 && p1 == 0.0 && p2 == 0.0 && k3 == 0.0;
  }
};

// Pinhole camera. Convention: +z is the optical axis, +x right, +y down
// (image rows grow with +y).
class CameraModel {
 public:
  CameraModel(double fx, double fy, double cx, double cy, int width,
              int height, const Distortion& dist = {});

  double fx() const { return fx_; }
  double fy() const { return fy_; }
  double cx() const { return cx_; }
  double cy() const { return cy_; }
  int width() const { return width_; }
  int height() const { return height_; }
  const Distortion& distortion() const { return dist_; }

  // Camera-frame point to pixel. Throws std::domain_error when z <= 1e-6 m.
  // The result may fall outside the image.
  Eigen::Vector2d project(const Eigen::Vector3d& p_cam) const;

  // Pixel plus metric z-depth to camera-frame point. Undistortion runs the
  // fixed-point iteration (max 20 rounds, 1e-12 tolerance in normalized
  // coordinates) and throws on divergence.
  Eigen::Vector3d unproject(double u, double v, double depth) const;

  bool in_bounds(double u, double v, double margin = 0.0) const {
    return u >= margin && u <= width_ - 1.0 - margin && v >= margin &&
           v <= height_ - 1.0 - margin;
  }

  Eigen::Vector2d distort_normalized(const Eigen::Vector2d& xy) const;
  Eigen::Vector2d undistort_normalized(const Eigen::Vector2d& xy) const;

  // Intrinsics for pyramid level k under 2x2 block-average downsampling:
  // focal lengths halve, principal point follows the half-pixel-center rule
  // cx_k = (cx + 0.5)/2^k - 0.5, image size floor-halves per level.
  CameraModel scaled_for_level(int level) const;

  // Copy with all distortion coefficients cleared.
  CameraModel without_distortion() const;

 private:
  double fx_, fy_, cx_, cy_;
  int width_, height_;
  Distortion dist_;
};

}  // namespace terralign
