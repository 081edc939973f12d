#pragma once

// Sliding-window pathlets on polygonized contours and their normalized
// log-signature features.

#include <sigwriter/polyline.hpp>

#include <Eigen/Core>

#include <string>
#include <vector>

namespace sigwriter {

/// How the backward member of a hinged pair is traversed.
enum class PairOrientation {
  traversal,  ///< both pathlets follow contour order, meeting at the hinge
  outward,    ///< both pathlets start at the hinge and walk away from it
};

std::string to_string(PairOrientation o);
PairOrientation parse_pair_orientation(const std::string& s);

/// Window of consecutive vertices on one polygonized contour.
struct Pathlet {
  Polyline2d path;
  int contour_id = 0;
  Eigen::Index anchor = 0;  ///< contour index of the first vertex
};

/// Two pathlets sharing the hinge vertex.
struct PathletPair {
  Pathlet backward;
  Pathlet forward;
};

/// One pathlet per anchor vertex (stride 1). Closed rings wrap around; open
/// polylines are windowed without wrap. Rings shorter than w yield nothing.
/// Throws std::invalid_argument for w < 3.
std::vector<Pathlet> extract_pathlets(const Polyline2d& contour, int w, int contour_id = 0);

/// One pair per hinge vertex i: backward covers i-w+1..i, forward covers
/// i..i+w-1. Closed rings need at least 2w-1 vertices.
std::vector<PathletPair> extract_pairs(const Polyline2d& contour, int w,
                                       PairOrientation orientation = PairOrientation::traversal,
                                       int contour_id = 0);

using LpsFeature = Eigen::VectorXd;
/// Feature rows, one per pathlet.
using FeaturePool = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Length-normalized log-signature of a pathlet: the Lyndon coordinates of
/// log S(P) truncated at m, with every level-k coefficient divided by L^k
/// where L is the arc length. Requires 2 <= m <= size - 1.
LpsFeature lps_feature(const Polyline2d& pathlet, int m);
inline LpsFeature lps_feature(const Pathlet& p, int m) { return lps_feature(p.path, m); }

/// Per-dimension range of a training pool.
struct RescaleBounds {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  Eigen::Index dimension() const { return lower.size(); }
};

/// Throws std::invalid_argument on an empty pool.
RescaleBounds fit_rescale(const FeaturePool& pool);

/// Affine map of [lower, upper] onto [-1, 1] per dimension, clamped.
/// Constant dimensions map to 0.
LpsFeature apply_rescale(const LpsFeature& f, const RescaleBounds& bounds);
FeaturePool rescale_pool(const FeaturePool& pool, const RescaleBounds& bounds);

/// Features of every pathlet and every hinged pair of a set of contours.
struct PathletFeatures {
  FeaturePool pathlets;  ///< one row per pathlet, used for codebook training
  FeaturePool backward;  ///< row i pairs with forward row i
  FeaturePool forward;
};

struct PathletConfig {
  int w = 4;
  int m = 3;
  PairOrientation orientation = PairOrientation::traversal;
};

PathletFeatures pathlet_features(const std::vector<Polyline2d>& contours, const PathletConfig& config);

}  // namespace sigwriter
