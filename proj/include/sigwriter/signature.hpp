#pragma once

// Truncated tensor algebra over R^2 and path signatures of piecewise-linear
// paths.
//
// A word (i1, ..., ik) with letters in {1, 2} is stored at the flat index
// whose binary digits, most significant first, are (i1 - 1, ..., ik - 1).
// With that layout the tensor product of a level-p block with a level-q block
// is a Kronecker product, i.e. an outer product viewed column-major.

#include <sigwriter/polyline.hpp>

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sigwriter {

inline constexpr int kPathDim = 2;
inline constexpr int kMaxDepth = 16;

inline std::size_t word_index(std::span<const int> word) {
  std::size_t index = 0;
  for (int letter : word) {
    if (letter != 1 && letter != 2) throw std::invalid_argument("word letters must be 1 or 2");
    index = (index << 1) | static_cast<std::size_t>(letter - 1);
  }
  return index;
}

/// Element of the tensor algebra T((R^2)) truncated after `depth` levels.
template <typename Scalar>
class TensorSeries {
 public:
  using Level = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit TensorSeries(int depth) {
    if (depth < 0 || depth > kMaxDepth) {
      throw std::invalid_argument("truncation depth out of range: " + std::to_string(depth));
    }
    levels_.reserve(depth + 1);
    for (int k = 0; k <= depth; ++k) levels_.push_back(Level::Zero(Eigen::Index(1) << k));
  }

  static TensorSeries zero(int depth) { return TensorSeries(depth); }

  static TensorSeries identity(int depth) {
    TensorSeries s(depth);
    s.levels_[0](0) = Scalar(1);
    return s;
  }

  int depth() const { return static_cast<int>(levels_.size()) - 1; }

  const Level& level(int k) const { return levels_.at(k); }
  Level& level(int k) { return levels_.at(k); }

  Scalar coeff(std::initializer_list<int> word) const {
    return coeff(std::span<const int>(word.begin(), word.size()));
  }
  Scalar coeff(std::span<const int> word) const {
    return level(static_cast<int>(word.size()))(word_index(word));
  }
  Scalar& coeff(std::initializer_list<int> word) {
    return level(static_cast<int>(word.size()))(word_index({word.begin(), word.size()}));
  }

  TensorSeries& operator+=(const TensorSeries& other) {
    require_same_depth(other);
    for (std::size_t k = 0; k < levels_.size(); ++k) levels_[k] += other.levels_[k];
    return *this;
  }
  TensorSeries& operator-=(const TensorSeries& other) {
    require_same_depth(other);
    for (std::size_t k = 0; k < levels_.size(); ++k) levels_[k] -= other.levels_[k];
    return *this;
  }
  TensorSeries& operator*=(Scalar factor) {
    for (auto& l : levels_) l *= factor;
    return *this;
  }

  friend TensorSeries operator+(TensorSeries a, const TensorSeries& b) { return a += b; }
  friend TensorSeries operator-(TensorSeries a, const TensorSeries& b) { return a -= b; }
  friend TensorSeries operator*(TensorSeries a, Scalar f) { return a *= f; }
  friend TensorSeries operator*(Scalar f, TensorSeries a) { return a *= f; }

  /// Largest coefficient-wise absolute difference across all levels.
  Scalar max_abs_diff(const TensorSeries& other) const {
    require_same_depth(other);
    Scalar worst(0);
    for (std::size_t k = 0; k < levels_.size(); ++k) {
      worst = std::max(worst, (levels_[k] - other.levels_[k]).cwiseAbs().maxCoeff());
    }
    return worst;
  }

  bool all_finite() const {
    return std::all_of(levels_.begin(), levels_.end(), [](const Level& l) { return l.allFinite(); });
  }

  void require_same_depth(const TensorSeries& other) const {
    if (other.depth() != depth()) {
      throw std::invalid_argument("truncation depth mismatch: " + std::to_string(depth()) + " vs " +
                                  std::to_string(other.depth()));
    }
  }

 private:
  std::vector<Level> levels_;
};

using TensorSeriesd = TensorSeries<double>;

/// Truncated tensor product: level k of the result is sum_{p+q=k} a_p (x) b_q.
template <typename Scalar>
TensorSeries<Scalar> tensor_product(const TensorSeries<Scalar>& a, const TensorSeries<Scalar>& b) {
  a.require_same_depth(b);
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  TensorSeries<Scalar> out(a.depth());
  for (int k = 0; k <= a.depth(); ++k) {
    auto& dst = out.level(k);
    for (int p = 0; p <= k; ++p) {
      const int q = k - p;
      const auto& left = a.level(p);
      const auto& right = b.level(q);
      if (left.isZero(0) || right.isZero(0)) continue;
      Eigen::Map<Mat> block(dst.data(), right.size(), left.size());
      block.noalias() += right * left.transpose();
    }
  }
  return out;
}

namespace detail {
template <typename Scalar>
void require_group_like(const TensorSeries<Scalar>& s, const char* what) {
  using std::abs;
  if (!(abs(s.level(0)(0) - Scalar(1)) <= Scalar(1e-9))) {
    throw std::invalid_argument(std::string(what) + ": level-0 coefficient must be 1");
  }
}
}  // namespace detail

/// Signature of the straight segment with the given displacement, i.e. the
/// tensor exponential of the displacement: level k holds prod(delta_ij) / k!.
template <typename Scalar>
TensorSeries<Scalar> segment_signature(const Point2<Scalar>& displacement, int depth) {
  if (depth < 1) throw std::invalid_argument("segment_signature: depth must be >= 1");
  TensorSeries<Scalar> s = TensorSeries<Scalar>::identity(depth);
  for (int k = 1; k <= depth; ++k) {
    const auto& prev = s.level(k - 1);
    auto& cur = s.level(k);
    // cur[2 * i + j] = prev[i] * delta[j] / k
    Eigen::Map<Eigen::Matrix<Scalar, 2, Eigen::Dynamic>> view(cur.data(), 2, prev.size());
    view.noalias() = displacement * prev.transpose() / Scalar(k);
  }
  return s;
}

/// Signature of the concatenation of two paths (Chen's identity).
template <typename Scalar>
TensorSeries<Scalar> chen_concat(const TensorSeries<Scalar>& a, const TensorSeries<Scalar>& b) {
  detail::require_group_like(a, "chen_concat");
  detail::require_group_like(b, "chen_concat");
  return tensor_product(a, b);
}

/// Signature of a piecewise-linear path, built segment by segment with
/// Chen's identity. Zero-length segments are skipped.
template <typename Scalar>
TensorSeries<Scalar> path_signature(const Polyline<Scalar>& path, int depth) {
  if (path.size() < 2) throw std::invalid_argument("path_signature: need at least 2 points");
  if (depth < 1) throw std::invalid_argument("path_signature: depth must be >= 1");
  TensorSeries<Scalar> s = TensorSeries<Scalar>::identity(depth);
  for (Eigen::Index i = 0; i < path.segment_count(); ++i) {
    const Point2<Scalar> delta = path.segment(i);
    if (delta.isZero(0)) continue;
    s = tensor_product(s, segment_signature(delta, depth));
  }
  return s;
}

/// Truncated tensor logarithm of a group-like series:
/// log(s) = sum_{n>=1} (-1)^(n+1) / n * (s - 1)^n.
template <typename Scalar>
TensorSeries<Scalar> tensor_log(const TensorSeries<Scalar>& s) {
  detail::require_group_like(s, "tensor_log");
  TensorSeries<Scalar> x = s;
  x.level(0)(0) = Scalar(0);
  TensorSeries<Scalar> result(s.depth());
  TensorSeries<Scalar> power = x;
  for (int n = 1; n <= s.depth(); ++n) {
    const Scalar sign = (n % 2 == 1) ? Scalar(1) : Scalar(-1);
    result += power * (sign / Scalar(n));
    if (n < s.depth()) power = tensor_product(power, x);
  }
  return result;
}

/// Truncated tensor exponential of a series with zero level-0 coefficient.
template <typename Scalar>
TensorSeries<Scalar> tensor_exp(const TensorSeries<Scalar>& x) {
  using std::abs;
  if (!(abs(x.level(0)(0)) <= Scalar(1e-12))) {
    throw std::invalid_argument("tensor_exp: level-0 coefficient must be 0");
  }
  TensorSeries<Scalar> result = TensorSeries<Scalar>::identity(x.depth());
  TensorSeries<Scalar> term = TensorSeries<Scalar>::identity(x.depth());
  for (int n = 1; n <= x.depth(); ++n) {
    term = tensor_product(term, x) * (Scalar(1) / Scalar(n));
    result += term;
  }
  return result;
}

}  // namespace sigwriter
