#include <sigwriter/imageproc.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace sigwriter {

Binarization otsu_binarize(const GrayImage& img) {
  if (img.size() == 0) throw std::invalid_argument("otsu_binarize: empty image");

  std::array<double, 256> hist{};
  for (Eigen::Index i = 0; i < img.size(); ++i) hist[img(i)] += 1.0;
  const double total = static_cast<double>(img.size());
  double total_sum = 0.0;
  for (int v = 0; v < 256; ++v) total_sum += v * hist[v];

  // Class 0 = values < t, class 1 = values >= t.
  double best = -1.0;
  int best_t = 1;
  double w0 = 0.0, sum0 = 0.0;
  for (int t = 1; t < 256; ++t) {
    w0 += hist[t - 1];
    sum0 += (t - 1) * hist[t - 1];
    const double w1 = total - w0;
    double between = 0.0;
    if (w0 > 0 && w1 > 0) {
      const double diff = sum0 / w0 - (total_sum - sum0) / w1;
      between = w0 * w1 * diff * diff;
    }
    if (between > best) {
      best = between;
      best_t = t;
    }
  }

  Binarization out;
  out.threshold = best_t;
  out.ink = img < static_cast<std::uint8_t>(best_t);
  out.degenerate = !(best > 0.0);
  return out;
}

namespace {

// Clockwise on screen (y down): E, SE, S, SW, W, NW, N, NE.
constexpr std::array<std::pair<int, int>, 8> kDirs = {
    {{0, 1}, {1, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}}};

int direction_of(int dr, int dc) {
  for (int d = 0; d < 8; ++d) {
    if (kDirs[d].first == dr && kDirs[d].second == dc) return d;
  }
  throw std::logic_error("direction_of: not a neighbour");
}

class BorderFollower {
 public:
  explicit BorderFollower(const BinaryImage& ink)
      : rows_(static_cast<int>(ink.rows()) + 2), cols_(static_cast<int>(ink.cols()) + 2), f_(rows_ * cols_, 0) {
    for (int r = 0; r < ink.rows(); ++r) {
      for (int c = 0; c < ink.cols(); ++c) at(r + 1, c + 1) = ink(r, c) ? 1 : 0;
    }
  }

  std::vector<Contour> run(const TraceOptions& options) {
    std::vector<Contour> out;
    int nbd = 1;
    for (int r = 1; r < rows_ - 1; ++r) {
      for (int c = 1; c < cols_ - 1; ++c) {
        const int v = at(r, c);
        if (v == 0) continue;
        const bool outer = v == 1 && at(r, c - 1) == 0;
        const bool hole = !outer && v >= 1 && at(r, c + 1) == 0;
        if (!outer && !hole) continue;
        ++nbd;
        Contour contour = follow(r, c, outer ? c - 1 : c + 1, nbd);
        contour.hole = hole;
        if (hole && !options.include_holes) continue;
        if (static_cast<int>(contour.points.size()) < options.min_perimeter) continue;
        out.push_back(std::move(contour));
      }
    }
    return out;
  }

 private:
  int& at(int r, int c) { return f_[static_cast<std::size_t>(r) * cols_ + c]; }

  Contour follow(int r0, int c0, int c_from, int nbd) {
    Contour contour;
    auto record = [&](int r, int c) { contour.points.emplace_back(c - 1, r - 1); };

    // Clockwise search for the first ink neighbour, starting at the background pixel.
    const int d_from = direction_of(0, c_from - c0);
    int r1 = -1, c1 = -1;
    for (int k = 0; k < 8; ++k) {
      const auto [dr, dc] = kDirs[(d_from + k) % 8];
      if (at(r0 + dr, c0 + dc) != 0) {
        r1 = r0 + dr;
        c1 = c0 + dc;
        break;
      }
    }
    if (r1 < 0) {
      at(r0, c0) = -nbd;
      record(r0, c0);
      return contour;
    }

    int r2 = r1, c2 = c1, r3 = r0, c3 = c0;
    while (true) {
      // Counter-clockwise search around p3 starting just after p2.
      const int d2 = direction_of(r2 - r3, c2 - c3);
      bool east_is_background = false;
      int r4 = -1, c4 = -1;
      for (int k = 1; k <= 8; ++k) {
        const int d = (d2 - k + 16) % 8;
        const auto [dr, dc] = kDirs[d];
        if (at(r3 + dr, c3 + dc) != 0) {
          r4 = r3 + dr;
          c4 = c3 + dc;
          break;
        }
        if (d == 0) east_is_background = true;
      }
      if (east_is_background) {
        at(r3, c3) = -nbd;
      } else if (at(r3, c3) == 1) {
        at(r3, c3) = nbd;
      }
      record(r3, c3);
      if (r4 == r0 && c4 == c0 && r3 == r1 && c3 == c1) break;
      r2 = r3;
      c2 = c3;
      r3 = r4;
      c3 = c4;
    }
    return contour;
  }

  int rows_;
  int cols_;
  std::vector<int> f_;
};

}  // namespace

std::vector<Contour> trace_contours(const BinaryImage& ink, const TraceOptions& options) {
  return BorderFollower(ink).run(options);
}

double point_segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const Eigen::Vector2d ap = p - a;
  const double t = ap.dot(ab) / len2;
  if (t <= 0.0) return ap.norm();
  if (t >= 1.0) return (p - b).norm();
  // Cross product form is exact for collinear integer points.
  return std::abs(ab.x() * ap.y() - ab.y() * ap.x()) / std::sqrt(len2);
}

Polyline2d polygonize(const Contour& contour, double epsilon) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("polygonize: epsilon must be >= 0");
  const auto n = static_cast<Eigen::Index>(contour.points.size());
  Polyline2d::PointMatrix pts(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) pts.row(i) = contour.points[i].cast<double>().transpose();
  if (n < 3) return drop_repeated_points(Polyline2d(pts, true));

  auto pt = [&](Eigen::Index i) -> Eigen::Vector2d { return pts.row(i % n).transpose(); };
  auto farthest_from = [&](Eigen::Index i) {
    Eigen::Index best = i;
    double best_d = -1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double d = (pt(j) - pt(i)).squaredNorm();
      if (d > best_d) {
        best_d = d;
        best = j;
      }
    }
    return std::pair{best, best_d};
  };

  // Walk to a mutually farthest pair: each endpoint is a farthest vertex of the other.
  Eigen::Index a = 0;
  auto [b, ab] = farthest_from(a);
  while (true) {
    const auto [c, bc] = farthest_from(b);
    if (!(bc > ab)) break;
    a = b;
    b = c;
    ab = bc;
  }
  if (ab == 0.0) return drop_repeated_points(Polyline2d(pts.topRows(1), true));

  std::vector<char> keep(n, 0);
  const Eigen::Index lo = std::min(a, b), hi = std::max(a, b);
  keep[lo] = keep[hi] = 1;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> stack = {{lo, hi}, {hi, lo + n}};
  while (!stack.empty()) {
    const auto [first, last] = stack.back();
    stack.pop_back();
    if (last - first < 2) continue;
    const Eigen::Vector2d pa = pt(first), pb = pt(last);
    double worst = -1.0;
    Eigen::Index worst_i = first;
    for (Eigen::Index i = first + 1; i < last; ++i) {
      const double d = point_segment_distance(pt(i), pa, pb);
      if (d > worst) {
        worst = d;
        worst_i = i;
      }
    }
    if (worst > epsilon) {
      keep[worst_i % n] = 1;
      stack.emplace_back(first, worst_i);
      stack.emplace_back(worst_i, last);
    }
  }

  Polyline2d::PointMatrix out(n, 2);
  Eigen::Index m = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (keep[i]) out.row(m++) = pts.row(i);
  }
  out.conservativeResize(m, 2);
  return drop_repeated_points(Polyline2d(std::move(out), true));
}

}  // namespace sigwriter
