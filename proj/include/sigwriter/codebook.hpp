#pragma once

// k-means codebook over rescaled LPS features and the M x M pair
// co-occurrence matrix that describes a document.

#include <sigwriter/pathlets.hpp>

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace sigwriter {

/// Parameters a codebook was trained under. Features computed with other
/// values cannot be quantized against it.
struct CodebookParams {
  int w = 4;
  int m = 3;
  double epsilon = 1.0;
  PairOrientation orientation = PairOrientation::traversal;
  int min_perimeter = 10;
  bool include_holes = true;
  bool invert = false;
  std::uint64_t seed = 0;

  bool operator==(const CodebookParams&) const = default;
};

struct Codebook {
  FeaturePool centroids;  ///< M rows of dimension D
  RescaleBounds bounds;
  CodebookParams params;
  std::string basis_convention;
  double inertia = 0.0;

  Eigen::Index size() const { return centroids.rows(); }
  Eigen::Index dimension() const { return centroids.cols(); }
};

struct KMeansOptions {
  int max_iterations = 300;
  double tolerance = 1e-6;  ///< stop once no centroid moves further than this
  int restarts = 1;
  std::uint64_t seed = 0;
};

struct KMeansResult {
  FeaturePool centroids;
  std::vector<int> labels;
  double inertia = 0.0;
  int iterations = 0;
  std::vector<double> inertia_history;  ///< inertia after each assignment step
};

/// Lloyd's algorithm from k-means++ seeding. Empty clusters are re-seeded at
/// the point farthest from its centroid. With restarts > 1 the run with the
/// lowest inertia wins. Deterministic for a given seed.
KMeansResult kmeans(const FeaturePool& pool, int k, const KMeansOptions& options = {});

/// Index of the nearest centroid by squared Euclidean distance; ties go to
/// the lowest index. Throws DimensionMismatch.
Eigen::Index nearest_code(const Eigen::Ref<const Eigen::VectorXd>& f, const FeaturePool& centroids);
inline Eigen::Index nearest_code(const Eigen::Ref<const Eigen::VectorXd>& f, const Codebook& cb) {
  return nearest_code(f, cb.centroids);
}

/// Fits rescale bounds on the raw pool, rescales it, and clusters it into M
/// codes. Throws std::invalid_argument if the pool has fewer than M rows,
/// M < 2, or contains non-finite values.
Codebook train_codebook(const FeaturePool& raw_pool, int M, const CodebookParams& params,
                        const KMeansOptions& options = {});

/// Uniform random subset of at most `cap` rows, kept in original order.
FeaturePool subsample_rows(const FeaturePool& pool, Eigen::Index cap, std::uint64_t seed);

/// Normalized pair histogram. Entries sum to 1 when pair_count > 0;
/// a document without pairs gives the zero matrix.
struct FeatureMatrix {
  Eigen::MatrixXd values;
  std::size_t pair_count = 0;

  Eigen::Index size() const { return values.rows(); }
};

/// Quantizes each (backward, forward) row pair to (k1, k2), counts, and
/// normalizes. Features must already be rescaled with the codebook's bounds.
FeatureMatrix build_feature_matrix(const FeaturePool& backward, const FeaturePool& forward, const Codebook& cb);

}  // namespace sigwriter
