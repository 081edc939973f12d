#pragma once

// Page image -> polygonized ink contours.

#include <sigwriter/polyline.hpp>

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace sigwriter {

/// 8-bit grayscale page, rows = height, cols = width.
using GrayImage = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
/// Ink mask with the same shape as its source image.
using BinaryImage = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Binarization {
  BinaryImage ink;
  int threshold = 0;  ///< ink = pixels strictly darker than this value
  bool degenerate = false;  ///< one of the two classes is empty
};

/// Otsu's threshold over the 256-bin histogram. Ink is the dark class
/// (pixel < threshold); ties resolve to the lowest maximizing threshold.
Binarization otsu_binarize(const GrayImage& img);

inline GrayImage inverted(const GrayImage& img) { return 255 - img; }

/// Closed pixel border. Consecutive points are 8-adjacent; (x, y) = (col, row).
struct Contour {
  std::vector<Eigen::Vector2i> points;
  bool hole = false;
};

struct TraceOptions {
  int min_perimeter = 10;
  bool include_holes = true;
};

/// Suzuki-Abe border following with 8-connected ink. Emits the outer border
/// of every component and the border of every hole, in raster order of
/// their starting pixels.
std::vector<Contour> trace_contours(const BinaryImage& ink, const TraceOptions& options = {});

/// Closed-curve Douglas-Peucker. The ring is split at a mutually farthest
/// vertex pair and each half is simplified so that every dropped point lies
/// within `epsilon` of its chord. Repeated vertices are merged. Throws
/// std::invalid_argument for negative epsilon.
Polyline2d polygonize(const Contour& contour, double epsilon);

/// Distance from p to the segment [a, b].
double point_segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a, const Eigen::Vector2d& b);

}  // namespace sigwriter
