#include "terralign/camera.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace terralign {

namespace {
constexpr double kMinDepth = 1e-6;
}

CameraModel::CameraModel(double fx, double fy, double cx, double cy, int width,
                         int height, const Distortion& dist)
    : fx_(fx), fy_(fy), cx_(cx), cy_(cy), width_(width), height_(height),
      dist_(dist) {
  if (!(fx > 0.0) || !(fy > 0.0)) {
    throw std::invalid_argument("CameraModel: focal lengths must be positive");
  }
  if (width < 2 || height < 2) {
    throw std::invalid_argument("CameraModel: image size must be at least 2x2");
  }
}

Eigen::Vector2d CameraModel::distort_normalized(
    const Eigen::Vector2d& xy) const {
  if (dist_.is_zero()) return xy;
  const double x = xy.x();
  const double y = xy.y();
  const double r2 = x * x + y * y;
  const double radial =
      1.0 + r2 * (dist_.k1 + r2 * (dist_.k2 + r2 * dist_.k3));
  const double xd =
      x * radial + 2.0 * dist_.p1 * x * y + dist_.p2 * (r2 + 2.0 * x * x);
  const double yd =
      y * radial + dist_.p1 * (r2 + 2.0 * y * y) + 2.0 * dist_.p2 * x * y;
  return {xd, yd};
}

Eigen::Vector2d CameraModel::undistort_normalized(
    const Eigen::Vector2d& xy) const {
  if (dist_.is_zero()) return xy;
  Eigen::Vector2d guess = xy;
  for (int iter = 0; iter < 20; ++iter) {
    const double x = guess.x();
    const double y = guess.y();
    const double r2 = x * x + y * y;
    const double radial =
        1.0 + r2 * (dist_.k1 + r2 * (dist_.k2 + r2 * dist_.k3));
    const double tx = 2.0 * dist_.p1 * x * y + dist_.p2 * (r2 + 2.0 * x * x);
    const double ty = dist_.p1 * (r2 + 2.0 * y * y) + 2.0 * dist_.p2 * x * y;
    const Eigen::Vector2d next((xy.x() - tx) / radial, (xy.y() - ty) / radial);
    if (!next.allFinite() || next.cwiseAbs().maxCoeff() > 10.0) {
      throw std::runtime_error(
          "CameraModel::undistort_normalized: fixed-point iteration diverged");
    }
    const double delta = (next - guess).cwiseAbs().maxCoeff();
    guess = next;
    if (delta < 1e-12) break;
  }
  return guess;
}

Eigen::Vector2d CameraModel::project(const Eigen::Vector3d& p_cam) const {
  if (!(p_cam.z() > kMinDepth)) {
    throw std::domain_error("CameraModel::project: point depth " +
                            std::to_string(p_cam.z()) +
                            " is not in front of the camera");
  }
  const Eigen::Vector2d distorted =
      distort_normalized({p_cam.x() / p_cam.z(), p_cam.y() / p_cam.z()});
  return {fx_ * distorted.x() + cx_, fy_ * distorted.y() + cy_};
}

Eigen::Vector3d CameraModel::unproject(double u, double v, double depth) const {
  if (!(depth > 0.0)) {
    throw std::domain_error("CameraModel::unproject: depth must be positive");
  }
  const Eigen::Vector2d xy =
      undistort_normalized({(u - cx_) / fx_, (v - cy_) / fy_});
  return {depth * xy.x(), depth * xy.y(), depth};
}

CameraModel CameraModel::scaled_for_level(int level) const {
  if (level < 0) throw std::invalid_argument("scaled_for_level: level < 0");
  const double scale = static_cast<double>(1 << level);
  int w = width_;
  int h = height_;
  for (int i = 0; i < level; ++i) {
    w /= 2;
    h /= 2;
  }
  return CameraModel(fx_ / scale, fy_ / scale, (cx_ + 0.5) / scale - 0.5,
                     (cy_ + 0.5) / scale - 0.5, w, h, dist_);
}

CameraModel CameraModel::without_distortion() const {
  return CameraModel(fx_, fy_, cx_, cy_, width_, height_, Distortion{});
}

}  // namespace terralign
