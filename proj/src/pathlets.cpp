#include <sigwriter/pathlets.hpp>

#include <sigwriter/lyndon.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sigwriter {

std::string to_string(PairOrientation o) {
  return o == PairOrientation::traversal ? "traversal" : "outward";
}

PairOrientation parse_pair_orientation(const std::string& s) {
  if (s == "traversal") return PairOrientation::traversal;
  if (s == "outward") return PairOrientation::outward;
  throw std::invalid_argument("unknown pair orientation: " + s);
}

namespace {

void require_window(int w) {
  if (w < 3) throw std::invalid_argument("pathlet size w must be >= 3, got " + std::to_string(w));
}

// w vertices starting at `start`, stepping by +1 or -1 (ring arithmetic).
Polyline2d window(const Polyline2d& contour, Eigen::Index start, int w, int step) {
  const Eigen::Index n = contour.size();
  Polyline2d::PointMatrix pts(w, 2);
  for (int j = 0; j < w; ++j) pts.row(j) = contour.points.row(((start + step * j) % n + n) % n);
  return Polyline2d(std::move(pts), false);
}

// Anchors of the first and last pathlet, or an empty range.
std::pair<Eigen::Index, Eigen::Index> anchor_range(const Polyline2d& contour, int w) {
  const Eigen::Index n = contour.size();
  if (n < w) return {0, 0};
  return {0, contour.closed ? n : n - w + 1};
}

std::pair<Eigen::Index, Eigen::Index> hinge_range(const Polyline2d& contour, int w) {
  const Eigen::Index n = contour.size();
  if (n < 2 * w - 1) return {0, 0};
  if (contour.closed) return {0, n};
  return {w - 1, n - w + 1};
}

}  // namespace

std::vector<Pathlet> extract_pathlets(const Polyline2d& contour, int w, int contour_id) {
  require_window(w);
  std::vector<Pathlet> out;
  const auto [first, last] = anchor_range(contour, w);
  for (Eigen::Index a = first; a < last; ++a) out.push_back({window(contour, a, w, +1), contour_id, a});
  return out;
}

std::vector<PathletPair> extract_pairs(const Polyline2d& contour, int w, PairOrientation orientation,
                                       int contour_id) {
  require_window(w);
  std::vector<PathletPair> out;
  const Eigen::Index n = contour.size();
  const auto [first, last] = hinge_range(contour, w);
  for (Eigen::Index i = first; i < last; ++i) {
    PathletPair pair;
    pair.forward = {window(contour, i, w, +1), contour_id, i};
    if (orientation == PairOrientation::traversal) {
      const Eigen::Index a = ((i - w + 1) % n + n) % n;
      pair.backward = {window(contour, a, w, +1), contour_id, a};
    } else {
      pair.backward = {window(contour, i, w, -1), contour_id, i};
    }
    out.push_back(std::move(pair));
  }
  return out;
}

LpsFeature lps_feature(const Polyline2d& pathlet, int m) {
  if (m < 2 || m > pathlet.size() - 1) {
    throw std::invalid_argument("truncation level m must satisfy 1 < m < w (m=" + std::to_string(m) +
                                ", w=" + std::to_string(pathlet.size()) + ")");
  }
  const double length = arc_length(pathlet);
  if (!(length > 0.0)) throw std::invalid_argument("lps_feature: pathlet has zero length");

  const auto& basis = LyndonBasis<double>::cached(m);
  LpsFeature f = basis.project(tensor_log(path_signature(pathlet, m))).coeffs;
  double scale = 1.0;
  for (int k = 1; k <= m; ++k) {
    scale *= length;
    f.segment(basis.level_offset(k), basis.level_dimension(k)) /= scale;
  }
  return f;
}

RescaleBounds fit_rescale(const FeaturePool& pool) {
  if (pool.rows() == 0) throw std::invalid_argument("fit_rescale: empty feature pool");
  return {pool.colwise().minCoeff().transpose(), pool.colwise().maxCoeff().transpose()};
}

LpsFeature apply_rescale(const LpsFeature& f, const RescaleBounds& bounds) {
  if (f.size() != bounds.dimension()) throw std::invalid_argument("apply_rescale: dimension mismatch");
  LpsFeature out(f.size());
  for (Eigen::Index d = 0; d < f.size(); ++d) {
    const double span = bounds.upper(d) - bounds.lower(d);
    out(d) = span > 0.0 ? std::clamp(2.0 * (f(d) - bounds.lower(d)) / span - 1.0, -1.0, 1.0) : 0.0;
  }
  return out;
}

FeaturePool rescale_pool(const FeaturePool& pool, const RescaleBounds& bounds) {
  FeaturePool out(pool.rows(), pool.cols());
  for (Eigen::Index r = 0; r < pool.rows(); ++r) {
    out.row(r) = apply_rescale(LpsFeature(pool.row(r).transpose()), bounds).transpose();
  }
  return out;
}

PathletFeatures pathlet_features(const std::vector<Polyline2d>& contours, const PathletConfig& config) {
  require_window(config.w);
  const Eigen::Index dim = logsig_dimension(config.m);

  std::vector<LpsFeature> pathlets, backward, forward;
  for (const auto& contour : contours) {
    const auto [a0, a1] = anchor_range(contour, config.w);
    std::vector<LpsFeature> by_anchor;
    for (Eigen::Index a = a0; a < a1; ++a) by_anchor.push_back(lps_feature(window(contour, a, config.w, +1), config.m));

    const Eigen::Index n = contour.size();
    const auto [h0, h1] = hinge_range(contour, config.w);
    for (Eigen::Index i = h0; i < h1; ++i) {
      forward.push_back(by_anchor[i]);
      if (config.orientation == PairOrientation::traversal) {
        backward.push_back(by_anchor[((i - config.w + 1) % n + n) % n]);
      } else {
        backward.push_back(lps_feature(window(contour, i, config.w, -1), config.m));
      }
    }
    pathlets.insert(pathlets.end(), std::make_move_iterator(by_anchor.begin()), std::make_move_iterator(by_anchor.end()));
  }

  auto stack = [dim](const std::vector<LpsFeature>& rows) {
    FeaturePool pool(static_cast<Eigen::Index>(rows.size()), dim);
    for (std::size_t i = 0; i < rows.size(); ++i) pool.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    return pool;
  };
  return {stack(pathlets), stack(backward), stack(forward)};
}

}  // namespace sigwriter
