#include "oddity/pointset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oddity/error.hpp"

namespace oddity {

PointCloud::PointCloud(std::vector<Point2> points) : points_(std::move(points)) {
  for (const auto& p : points_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorKind::NonFiniteInput, "point coordinates must be finite");
    }
  }
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

PointCloud to_points(const BinaryRaster& binary) {
  std::vector<Point2> pts;
  pts.reserve(binary.count());
  for (int row = 0; row < binary.height(); ++row) {
    for (int col = 0; col < binary.width(); ++col) {
      if (binary.at(col, row)) {
        pts.push_back({static_cast<double>(col), static_cast<double>(binary.height() - 1 - row)});
      }
    }
  }
  return PointCloud(std::move(pts));
}

double round_to(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double r = std::round(value * scale) / scale;
  return r == 0.0 ? 0.0 : r;
}

Point2 project(const PrincipalFrame& frame, const Point2& p) {
  const double dx = p.x - frame.centroid.x;
  const double dy = p.y - frame.centroid.y;
  return {dx * frame.axis_major[0] + dy * frame.axis_major[1], dx * frame.axis_minor[0] + dy * frame.axis_minor[1]};
}

namespace {

struct Moments {
  Point2 mean;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
};

Moments central_moments(const PointCloud& cloud) {
  Moments m;
  const double n = static_cast<double>(cloud.size());
  for (const auto& p : cloud) {
    m.mean.x += p.x;
    m.mean.y += p.y;
  }
  m.mean.x /= n;
  m.mean.y /= n;
  for (const auto& p : cloud) {
    const double dx = p.x - m.mean.x;
    const double dy = p.y - m.mean.y;
    m.sxx += dx * dx;
    m.syy += dy * dy;
    m.sxy += dx * dy;
  }
  m.sxx /= n;
  m.syy /= n;
  m.sxy /= n;
  return m;
}

// Decides the orientation of `axis` from the projections of the centred cloud:
// +1 keeps it, -1 flips it. Skewed projections point the long tail positive;
// otherwise the farthest point goes positive.
int canonical_sign(const PointCloud& cloud, const Point2& centroid, const Vec2& axis, double variance) {
  double m3 = 0.0;
  double far_abs = -1.0;
  double far_val = 0.0;
  for (const auto& p : cloud) {
    const double t = (p.x - centroid.x) * axis[0] + (p.y - centroid.y) * axis[1];
    m3 += t * t * t;
    const double a = std::abs(t);
    if (a > far_abs + 1e-12 || (std::abs(a - far_abs) <= 1e-12 && t > far_val)) {
      far_abs = a;
      far_val = t;
    }
  }
  m3 /= static_cast<double>(cloud.size());
  const double tol = 1e-9 * std::pow(std::max(variance, 0.0), 1.5) + 1e-12;
  if (m3 > tol) return 1;
  if (m3 < -tol) return -1;
  return far_val >= 0.0 ? 1 : -1;
}

}  // namespace

namespace {

PrincipalFrame compute_frame(const PointCloud& cloud, bool& isotropic) {
  const Moments m = central_moments(cloud);

  PrincipalFrame frame;
  frame.centroid = m.mean;

  const double half_trace = 0.5 * (m.sxx + m.syy);
  const double half_diff = 0.5 * (m.sxx - m.syy);
  const double radius = std::hypot(half_diff, m.sxy);
  const double lambda_major = half_trace + radius;
  const double lambda_minor = std::max(half_trace - radius, 0.0);
  frame.var_major = lambda_major;
  frame.var_minor = lambda_minor;

  const double scale = std::max(lambda_major, std::numeric_limits<double>::min());
  isotropic = (lambda_major - lambda_minor) / scale < kIsotropyTolerance;
  if (isotropic) return frame;  // no preferred axis: identity

  Vec2 v;
  if (m.sxx >= m.syy) {
    v = {lambda_major - m.syy, m.sxy};
  } else {
    v = {m.sxy, lambda_major - m.sxx};
  }
  const double len = std::hypot(v[0], v[1]);
  v = {v[0] / len, v[1] / len};

  const int sign = canonical_sign(cloud, m.mean, v, lambda_major);
  v = {sign * v[0], sign * v[1]};
  frame.axis_major = v;
  frame.axis_minor = {-v[1], v[0]};
  return frame;
}

}  // namespace

PrincipalFrame principal_frame(const PointCloud& cloud) {
  if (cloud.empty()) throw Error(ErrorKind::EmptyCloud, "principal_frame of an empty cloud");
  bool isotropic = false;
  return compute_frame(cloud, isotropic);
}

PointCloud normalize(const PointCloud& cloud, int decimals) {
  if (cloud.empty()) throw Error(ErrorKind::EmptyCloud, "normalize of an empty cloud");
  bool isotropic = false;
  PrincipalFrame frame = compute_frame(cloud, isotropic);
  if (!isotropic) {
    const int sign = canonical_sign(cloud, frame.centroid, frame.axis_minor, frame.var_minor);
    frame.axis_minor = {sign * frame.axis_minor[0], sign * frame.axis_minor[1]};
  }

  std::vector<Point2> out;
  out.reserve(cloud.size());
  for (const auto& p : cloud) {
    const Point2 q = project(frame, p);
    out.push_back({round_to(q.x, decimals), round_to(q.y, decimals)});
  }
  return PointCloud(std::move(out));
}

}  // namespace oddity
