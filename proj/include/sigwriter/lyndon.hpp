#pragma once

// Lyndon basis of the free Lie algebra over two letters and the projection of
// log-signatures onto it.
//
// Basis elements are the standard bracketings of Lyndon words, ordered by
// word length and then lexicographically: e1, e2, [e1,e2], [e1,[e1,e2]],
// [[e1,e2],e2], ... With this convention the level-2 coefficient of a
// log-signature equals (S^12 - S^21) / 2.

#include <sigwriter/signature.hpp>

#include <Eigen/Core>
#include <Eigen/LU>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace sigwriter {

/// Tag persisted next to any stored log-signature coefficients.
inline constexpr const char* kBasisConvention = "lyndon-standard-bracketing/half-area/v1";

using Word = std::vector<int>;

/// Lyndon words over {1, 2} of length 1..max_length, by length then lexicographic
/// order. Generated with Duval's algorithm.
inline std::vector<Word> lyndon_words(int max_length) {
  std::vector<std::vector<Word>> by_length(max_length + 1);
  Word w{1};
  while (!w.empty()) {
    by_length[w.size()].push_back(w);
    const std::size_t n = w.size();
    while (w.size() < static_cast<std::size_t>(max_length)) w.push_back(w[w.size() - n]);
    while (!w.empty() && w.back() == kPathDim) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  std::vector<Word> out;
  for (auto& words : by_length) {
    std::sort(words.begin(), words.end());
    out.insert(out.end(), words.begin(), words.end());
  }
  return out;
}

/// Dimension of the degree-k component of the free Lie algebra on two
/// generators (Witt's formula).
inline int witt_dimension(int k) {
  auto mobius = [](int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
      if (n % p == 0) {
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
      }
    }
    if (n > 1) result = -result;
    return result;
  };
  long total = 0;
  for (int d = 1; d <= k; ++d) {
    if (k % d == 0) total += mobius(d) * (1L << (k / d));
  }
  return static_cast<int>(total / k);
}

/// Total log-signature dimension up to `depth`: 2, 3, 5, 8, 14, ...
inline int logsig_dimension(int depth) {
  int total = 0;
  for (int k = 1; k <= depth; ++k) total += witt_dimension(k);
  return total;
}

template <typename Scalar>
struct LogSigVector {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> coeffs;
  int depth = 0;
};

template <typename Scalar>
class LyndonBasis {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  explicit LyndonBasis(int depth) : depth_(depth), levels_(depth + 1) {
    if (depth < 1 || depth > kMaxDepth) {
      throw std::invalid_argument("LyndonBasis: depth out of range: " + std::to_string(depth));
    }
    words_ = lyndon_words(depth);

    std::map<Word, Vector> expansion;
    for (const Word& w : words_) {
      Vector e;
      if (w.size() == 1) {
        e = Vector::Unit(2, w[0] - 1);
      } else {
        // Standard factorisation: v is the longest proper suffix that is Lyndon.
        std::size_t split = 1;
        for (; split < w.size(); ++split) {
          if (expansion.count(Word(w.begin() + split, w.end()))) break;
        }
        const Vector& left = expansion.at(Word(w.begin(), w.begin() + split));
        const Vector& right = expansion.at(Word(w.begin() + split, w.end()));
        e = kron(left, right) - kron(right, left);
      }
      expansion.emplace(w, e);
    }

    Eigen::Index offset = 0;
    for (int k = 1; k <= depth; ++k) {
      LevelData& data = levels_[k];
      data.offset = offset;
      std::vector<const Word*> level_words;
      for (const Word& w : words_) {
        if (static_cast<int>(w.size()) == k) level_words.push_back(&w);
      }
      const Eigen::Index n = static_cast<Eigen::Index>(level_words.size());
      data.expansion.resize(Eigen::Index(1) << k, n);
      Matrix square(n, n);
      for (Eigen::Index j = 0; j < n; ++j) data.expansion.col(j) = expansion.at(*level_words[j]);
      for (Eigen::Index i = 0; i < n; ++i) {
        const auto row = static_cast<Eigen::Index>(word_index(*level_words[i]));
        data.lyndon_rows.push_back(row);
        square.row(i) = data.expansion.row(row);
      }
      data.solver.compute(square);
      offset += n;
    }
    dimension_ = offset;
  }

  /// Shared instance per depth.
  static const LyndonBasis& cached(int depth) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<const LyndonBasis>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[depth];
    if (!slot) slot = std::make_unique<const LyndonBasis>(depth);
    return *slot;
  }

  int depth() const { return depth_; }
  Eigen::Index dimension() const { return dimension_; }
  Eigen::Index level_dimension(int k) const { return levels_.at(k).expansion.cols(); }
  Eigen::Index level_offset(int k) const { return levels_.at(k).offset; }
  const std::vector<Word>& words() const { return words_; }

  /// Tensor-algebra expansion of the k-th level basis brackets, one per column.
  const Matrix& expansion(int k) const { return levels_.at(k).expansion; }

  /// Coordinates of a Lie element in this basis. Throws std::domain_error if
  /// the input does not lie in the free Lie algebra.
  LogSigVector<Scalar> project(const TensorSeries<Scalar>& lie) const {
    if (lie.depth() != depth_) throw std::invalid_argument("hall_project: depth mismatch");
    using std::abs;
    LogSigVector<Scalar> out{Vector::Zero(dimension_), depth_};
    for (int k = 1; k <= depth_; ++k) {
      const LevelData& data = levels_[k];
      const auto& x = lie.level(k);
      Vector rhs(data.lyndon_rows.size());
      for (std::size_t i = 0; i < data.lyndon_rows.size(); ++i) rhs(i) = x(data.lyndon_rows[i]);
      const Vector c = data.solver.solve(rhs);
      const Scalar residual = (data.expansion * c - x).cwiseAbs().maxCoeff();
      const Scalar scale = std::max(Scalar(1), x.cwiseAbs().maxCoeff());
      if (!(residual <= Scalar(1e-8) * scale)) {
        throw std::domain_error("hall_project: input is not a Lie element at level " + std::to_string(k));
      }
      out.coeffs.segment(data.offset, c.size()) = c;
    }
    return out;
  }

  /// Inverse of project(): expands basis coordinates into the tensor algebra.
  TensorSeries<Scalar> expand(const LogSigVector<Scalar>& v) const {
    if (v.depth != depth_ || v.coeffs.size() != dimension_) {
      throw std::invalid_argument("hall_expand: dimension mismatch");
    }
    TensorSeries<Scalar> out(depth_);
    for (int k = 1; k <= depth_; ++k) {
      const LevelData& data = levels_[k];
      out.level(k).noalias() = data.expansion * v.coeffs.segment(data.offset, data.expansion.cols());
    }
    return out;
  }

 private:
  struct LevelData {
    Matrix expansion;
    std::vector<Eigen::Index> lyndon_rows;
    Eigen::PartialPivLU<Matrix> solver;
    Eigen::Index offset = 0;
  };

  static Vector kron(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    Eigen::Map<Matrix>(out.data(), b.size(), a.size()).noalias() = b * a.transpose();
    return out;
  }

  int depth_;
  Eigen::Index dimension_ = 0;
  std::vector<Word> words_;
  std::vector<LevelData> levels_;
};

template <typename Scalar>
LogSigVector<Scalar> hall_project(const TensorSeries<Scalar>& lie) {
  return LyndonBasis<Scalar>::cached(lie.depth()).project(lie);
}

template <typename Scalar>
TensorSeries<Scalar> hall_expand(const LogSigVector<Scalar>& v) {
  return LyndonBasis<Scalar>::cached(v.depth).expand(v);
}

/// Log-signature of a path in Lyndon coordinates.
template <typename Scalar>
LogSigVector<Scalar> log_signature(const Polyline<Scalar>& path, int depth) {
  return hall_project(tensor_log(path_signature(path, depth)));
}

}  // namespace sigwriter
