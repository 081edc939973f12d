#pragma once

#include <Eigen/Core>

#include <cmath>

namespace sigwriter {

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

/// Ordered planar point sequence, one (x, y) row per vertex.
///
/// Coordinates follow the image convention: x grows to the right, y grows
/// downward. A closed polyline implicitly contains the segment from its last
/// vertex back to its first.
template <typename Scalar>
struct Polyline {
  using PointMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, 2, Eigen::RowMajor>;

  PointMatrix points;
  bool closed = false;

  Polyline() = default;
  explicit Polyline(PointMatrix pts, bool is_closed = false)
      : points(std::move(pts)), closed(is_closed) {}

  Eigen::Index size() const { return points.rows(); }
  Point2<Scalar> point(Eigen::Index i) const { return points.row(i).transpose(); }

  /// Number of segments, counting the closing segment of a ring.
  Eigen::Index segment_count() const {
    if (size() < 2) return 0;
    return closed ? size() : size() - 1;
  }

  Point2<Scalar> segment(Eigen::Index i) const {
    const Eigen::Index j = (i + 1) % size();
    return point(j) - point(i);
  }
};

using Polyline2d = Polyline<double>;

/// Removes consecutive duplicate vertices. For rings the closing segment is
/// also checked, so a ring never starts and ends on the same vertex.
template <typename Scalar>
Polyline<Scalar> drop_repeated_points(const Polyline<Scalar>& p) {
  typename Polyline<Scalar>::PointMatrix out(p.size(), 2);
  Eigen::Index n = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (n > 0 && out.row(n - 1) == p.points.row(i)) continue;
    out.row(n++) = p.points.row(i);
  }
  if (p.closed) {
    while (n > 1 && out.row(n - 1) == out.row(0)) --n;
  }
  out.conservativeResize(n, 2);
  return Polyline<Scalar>(std::move(out), p.closed);
}

template <typename Scalar>
Polyline<Scalar> reversed(const Polyline<Scalar>& p) {
  return Polyline<Scalar>(p.points.colwise().reverse(), p.closed);
}

template <typename Scalar>
Scalar arc_length(const Polyline<Scalar>& p) {
  Scalar total(0);
  for (Eigen::Index i = 0; i < p.segment_count(); ++i) total += p.segment(i).norm();
  return total;
}

}  // namespace sigwriter
