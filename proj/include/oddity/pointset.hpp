#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "oddity/raster.hpp"

namespace oddity {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
  friend auto operator<=>(const Point2&, const Point2&) = default;
};

/// Duplicate-free set of finite 2D points, kept sorted (x, then y).
class PointCloud {
 public:
  PointCloud() = default;
  /// Sorts and removes exact duplicates. Throws NonFiniteInput on NaN/inf.
  explicit PointCloud(std::vector<Point2> points);

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  std::span<const Point2> points() const noexcept { return points_; }

  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::vector<Point2> points_;
};

using Vec2 = std::array<double, 2>;

struct PrincipalFrame {
  Point2 centroid;
  Vec2 axis_major{1.0, 0.0};
  Vec2 axis_minor{0.0, 1.0};
  double var_major = 0.0;
  double var_minor = 0.0;
};

/// Relative eigenvalue gap below which a cloud counts as isotropic.
inline constexpr double kIsotropyTolerance = 1e-6;

/// One point per foreground pixel; x = column, y = height - 1 - row.
PointCloud to_points(const BinaryRaster& binary);

/// PCA of the population covariance. Axes are right-handed; the major axis
/// sign makes the third central moment of its projections non-negative.
/// Isotropic clouds get identity axes. Throws EmptyCloud.
PrincipalFrame principal_frame(const PointCloud& cloud);

/// Rounds to `decimals` places; -0 becomes 0.
double round_to(double value, int decimals);

/// Centres the cloud, rotates it into its principal axes, rounds every
/// coordinate to the grid and merges the resulting duplicates.
///
/// The minor axis sign is canonicalized the same way as the major one, so the
/// output frame may be a reflection. Mirror images therefore normalize to the
/// same cloud, which is the documented chirality blind spot of the method.
/// Throws EmptyCloud.
PointCloud normalize(const PointCloud& cloud, int decimals = 0);

/// Coordinates of `p` in the frame (no rounding).
Point2 project(const PrincipalFrame& frame, const Point2& p);

}  // namespace oddity
