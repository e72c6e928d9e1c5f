#pragma once

#include <Eigen/Core>
#include <string>

namespace terralign {

using Vector6d = Eigen::Matrix<double, 6, 1>;

// se(3) increment. Component ordering is translational-first (rho | phi) and
// must stay consistent across exp/log, Jacobian columns, and the LM solve.
struct TwistSE3 {
  Eigen::Vector3d rho = Eigen::Vector3d::Zero();
  Eigen::Vector3d phi = Eigen::Vector3d::Zero();

  Vector6d vector() const {
    Vector6d v;
    v << rho, phi;
    return v;
  }

  static TwistSE3 from_vector(const Vector6d& v) {
    return {v.head<3>(), v.tail<3>()};
  }

  double norm() const { return vector().norm(); }
};

// Rigid transform. Rotation kept as a matrix since the Jacobian assembly and
// the rasterizer consume matrices directly.
class PoseSE3 {
 public:
  PoseSE3()
      : rotation_(Eigen::Matrix3d::Identity()),
        translation_(Eigen::Vector3d::Zero()) {}

  // Validates orthonormality. Drift below 1e-12 is accepted as-is, drift up
  // to 1e-6 is repaired by polar projection (covers low-precision text
  // input), anything beyond throws.
  PoseSE3(const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation);

  static PoseSE3 identity() { return PoseSE3(); }

  const Eigen::Matrix3d& rotation() const { return rotation_; }
  const Eigen::Vector3d& translation() const { return translation_; }

  Eigen::Matrix4d matrix() const;

 private:
  struct Unchecked {};
  PoseSE3(const Eigen::Matrix3d& r, const Eigen::Vector3d& t, Unchecked)
      : rotation_(r), translation_(t) {}

  friend PoseSE3 exp(const TwistSE3&);
  friend PoseSE3 compose(const PoseSE3&, const PoseSE3&);
  friend PoseSE3 inverse(const PoseSE3&);

  Eigen::Matrix3d rotation_;
  Eigen::Vector3d translation_;
};

Eigen::Matrix3d skew(const Eigen::Vector3d& v);

// Closed-form SE(3) exponential (Rodrigues rotation plus V-matrix
// translation). Angles below 1e-8 rad switch to the series expansion.
PoseSE3 exp(const TwistSE3& xi);

// Inverse of exp. Throws when the rotation angle is within 1e-6 of pi, where
// the principal branch is ambiguous.
TwistSE3 log(const PoseSE3& pose);

PoseSE3 compose(const PoseSE3& a, const PoseSE3& b);
PoseSE3 inverse(const PoseSE3& pose);
Eigen::Vector3d transform_point(const PoseSE3& pose, const Eigen::Vector3d& p);

// Geodesic angle between the two rotations; symmetric in its arguments.
double rotation_angle(const PoseSE3& a, const PoseSE3& b);

inline PoseSE3 operator*(const PoseSE3& a, const PoseSE3& b) {
  return compose(a, b);
}

// Text form used by ground-truth files: 12 whitespace-separated numbers,
// row-major 3x4 [R | t].
std::string pose_to_text(const PoseSE3& pose);
PoseSE3 pose_from_text(const std::string& text);

}  // namespace terralign
