#include "terralign/se3.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace terralign {

namespace {

constexpr double kSmallAngle = 1e-8;
constexpr double kOrthoDrift = 1e-12;
constexpr double kPi = 3.1415926535897932384626433832795;

double orthonormal_drift(const Eigen::Matrix3d& r) {
  const Eigen::Matrix3d gram = r.transpose() * r;
  const double gram_err =
      (gram - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  const double det_err = std::abs(r.determinant() - 1.0);
  return std::max(gram_err, det_err);
}

// Nearest rotation in the Frobenius sense (polar factor).
Eigen::Matrix3d polar_rotation(const Eigen::Matrix3d& m) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(
      m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d r = svd.matrixU() * svd.matrixV().transpose();
  if (r.determinant() < 0.0) {
    Eigen::Matrix3d flip = Eigen::Matrix3d::Identity();
    flip(2, 2) = -1.0;
    r = svd.matrixU() * flip * svd.matrixV().transpose();
  }
  return r;
}

}  // namespace

PoseSE3::PoseSE3(const Eigen::Matrix3d& rotation,
                 const Eigen::Vector3d& translation)
    : rotation_(rotation), translation_(translation) {
  if (!rotation.allFinite() || !translation.allFinite()) {
    throw std::invalid_argument("PoseSE3: non-finite pose entries");
  }
  const double drift = orthonormal_drift(rotation_);
  if (drift > 1e-6) {
    throw std::invalid_argument("PoseSE3: rotation is not orthonormal (drift " +
                                std::to_string(drift) + ")");
  }
  if (drift > kOrthoDrift) {
    rotation_ = polar_rotation(rotation_);
  }
}

Eigen::Matrix4d PoseSE3::matrix() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = rotation_;
  m.topRightCorner<3, 1>() = translation_;
  return m;
}

Eigen::Matrix3d skew(const Eigen::Vector3d& v) {
  Eigen::Matrix3d m;
  m << 0.0, -v.z(), v.y(), v.z(), 0.0, -v.x(), -v.y(), v.x(), 0.0;
  return m;
}

PoseSE3 exp(const TwistSE3& xi) {
  const double theta = xi.phi.norm();
  const Eigen::Matrix3d k = skew(xi.phi);
  const Eigen::Matrix3d k2 = k * k;

  double a;  // sin(theta)/theta
  double b;  // (1-cos(theta))/theta^2
  double c;  // (theta - sin(theta))/theta^3
  if (theta < kSmallAngle) {
    const double t2 = theta * theta;
    a = 1.0 - t2 / 6.0;
    b = 0.5 - t2 / 24.0;
    c = 1.0 / 6.0 - t2 / 120.0;
  } else {
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / (theta * theta);
    c = (theta - std::sin(theta)) / (theta * theta * theta);
  }

  const Eigen::Matrix3d r = Eigen::Matrix3d::Identity() + a * k + b * k2;
  const Eigen::Matrix3d v = Eigen::Matrix3d::Identity() + b * k + c * k2;
  return PoseSE3(r, v * xi.rho, PoseSE3::Unchecked{});
}

TwistSE3 log(const PoseSE3& pose) {
  const Eigen::Matrix3d& r = pose.rotation();
  const double cos_theta =
      std::clamp((r.trace() - 1.0) * 0.5, -1.0, 1.0);
  const double theta = std::acos(cos_theta);
  if (theta >= kPi - 1e-6) {
    throw std::domain_error(
        "log(PoseSE3): rotation angle within 1e-6 of pi, principal branch "
        "ambiguous");
  }

  Eigen::Vector3d phi;
  if (theta < kSmallAngle) {
    // R - R^T = 2 sin(theta) [axis]_x; divide by ~2 for small angles.
    phi = 0.5 * Eigen::Vector3d(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0),
                                r(1, 0) - r(0, 1));
  } else {
    const double s = theta / (2.0 * std::sin(theta));
    phi = s * Eigen::Vector3d(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0),
                              r(1, 0) - r(0, 1));
  }

  const Eigen::Matrix3d k = skew(phi);
  const Eigen::Matrix3d k2 = k * k;
  double coeff;  // (1 - theta cot(theta/2) / 2) / theta^2
  if (theta < kSmallAngle) {
    coeff = 1.0 / 12.0 + theta * theta / 720.0;
  } else {
    const double half = 0.5 * theta;
    coeff = (1.0 - half * std::cos(half) / std::sin(half)) / (theta * theta);
  }
  const Eigen::Matrix3d v_inv =
      Eigen::Matrix3d::Identity() - 0.5 * k + coeff * k2;
  return {v_inv * pose.translation(), phi};
}

PoseSE3 compose(const PoseSE3& a, const PoseSE3& b) {
  Eigen::Matrix3d r = a.rotation() * b.rotation();
  if (orthonormal_drift(r) > kOrthoDrift) {
    r = polar_rotation(r);
  }
  return PoseSE3(r, a.rotation() * b.translation() + a.translation(),
                 PoseSE3::Unchecked{});
}

PoseSE3 inverse(const PoseSE3& pose) {
  const Eigen::Matrix3d rt = pose.rotation().transpose();
  return PoseSE3(rt, -(rt * pose.translation()), PoseSE3::Unchecked{});
}

Eigen::Vector3d transform_point(const PoseSE3& pose, const Eigen::Vector3d& p) {
  return pose.rotation() * p + pose.translation();
}

double rotation_angle(const PoseSE3& a, const PoseSE3& b) {
  const Eigen::Matrix3d rel = a.rotation() * b.rotation().transpose();
  return std::acos(std::clamp((rel.trace() - 1.0) * 0.5, -1.0, 1.0));
}

std::string pose_to_text(const PoseSE3& pose) {
  const Eigen::Matrix3d& r = pose.rotation();
  const Eigen::Vector3d& t = pose.translation();
  char buf[64];
  std::string out;
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) {
      std::snprintf(buf, sizeof(buf), "%.17g ", r(row, col));
      out += buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", t(row));
    out += buf;
    if (row < 2) out += ' ';
  }
  return out;
}

PoseSE3 pose_from_text(const std::string& text) {
  std::istringstream in(text);
  double v[12];
  for (double& x : v) {
    if (!(in >> x)) {
      throw std::invalid_argument(
          "pose_from_text: expected 12 whitespace-separated numbers, got '" +
          text + "'");
    }
  }
  std::string tail;
  if (in >> tail) {
    throw std::invalid_argument("pose_from_text: trailing content '" + tail +
                                "'");
  }
  Eigen::Matrix3d r;
  r << v[0], v[1], v[2], v[4], v[5], v[6], v[8], v[9], v[10];
  return PoseSE3(r, Eigen::Vector3d(v[3], v[7], v[11]));
}

}  // namespace terralign
