#include <sigwriter/codebook.hpp>

#include <sigwriter/errors.hpp>
#include <sigwriter/lyndon.hpp>

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace sigwriter {

Eigen::Index nearest_code(const Eigen::Ref<const Eigen::VectorXd>& f, const FeaturePool& centroids) {
  if (f.size() != centroids.cols()) {
    throw DimensionMismatch("feature dimension " + std::to_string(f.size()) + " does not match codebook dimension " +
                            std::to_string(centroids.cols()));
  }
  Eigen::Index best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < centroids.rows(); ++j) {
    const double d = (centroids.row(j).transpose() - f).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = j;
    }
  }
  return best;
}

namespace {

FeaturePool plus_plus_seeds(const FeaturePool& pool, int k, std::mt19937_64& rng) {
  const Eigen::Index n = pool.rows();
  FeaturePool centroids(k, pool.cols());
  std::uniform_int_distribution<Eigen::Index> first(0, n - 1);
  centroids.row(0) = pool.row(first(rng));
  Eigen::VectorXd d2 = (pool.rowwise() - centroids.row(0)).rowwise().squaredNorm();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      const double target = unit(rng) * total;
      double acc = 0.0;
      pick = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += d2(i);
        if (acc > target && d2(i) > 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = first(rng);
    }
    centroids.row(c) = pool.row(pick);
    d2 = d2.cwiseMin((pool.rowwise() - centroids.row(c)).rowwise().squaredNorm());
  }
  return centroids;
}

KMeansResult lloyd(const FeaturePool& pool, int k, const KMeansOptions& options, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Eigen::Index n = pool.rows();
  KMeansResult result;
  result.centroids = plus_plus_seeds(pool, k, rng);
  result.labels.assign(n, 0);
  Eigen::VectorXd dist(n);

  auto assign = [&] {
    double inertia = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index c = nearest_code(pool.row(i).transpose(), result.centroids);
      result.labels[i] = static_cast<int>(c);
      dist(i) = (pool.row(i) - result.centroids.row(c)).squaredNorm();
      inertia += dist(i);
    }
    return inertia;
  };

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    result.inertia_history.push_back(assign());
    result.iterations = iter + 1;

    FeaturePool sums = FeaturePool::Zero(k, pool.cols());
    std::vector<Eigen::Index> counts(k, 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(result.labels[i]) += pool.row(i);
      ++counts[result.labels[i]];
    }
    FeaturePool next = result.centroids;
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) next.row(c) = sums.row(c) / static_cast<double>(counts[c]);
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      Eigen::Index far = 0;
      dist.maxCoeff(&far);
      if (dist(far) <= 0.0) break;
      next.row(c) = pool.row(far);
      dist(far) = 0.0;
    }
    const double shift = (next - result.centroids).rowwise().norm().maxCoeff();
    result.centroids = std::move(next);
    if (shift < options.tolerance) break;
  }
  result.inertia = assign();
  return result;
}

}  // namespace

KMeansResult kmeans(const FeaturePool& pool, int k, const KMeansOptions& options) {
  if (k < 1) throw std::invalid_argument("kmeans: k must be >= 1");
  if (pool.rows() < k) {
    throw std::invalid_argument("kmeans: pool of " + std::to_string(pool.rows()) + " features is smaller than k=" +
                                std::to_string(k));
  }
  if (!pool.allFinite()) throw std::invalid_argument("kmeans: pool contains non-finite values");

  std::vector<std::uint64_t> seeds(std::max(1, options.restarts));
  std::mt19937_64 master(options.seed);
  for (auto& s : seeds) s = master();
  KMeansResult best;
  for (std::size_t r = 0; r < seeds.size(); ++r) {
    KMeansResult run = lloyd(pool, k, options, seeds[r]);
    if (r == 0 || run.inertia < best.inertia) best = std::move(run);
  }
  return best;
}

Codebook train_codebook(const FeaturePool& raw_pool, int M, const CodebookParams& params,
                        const KMeansOptions& options) {
  if (M < 2) throw std::invalid_argument("codebook size M must be >= 2");
  if (raw_pool.cols() != logsig_dimension(params.m)) {
    throw DimensionMismatch("feature pool dimension does not match truncation level m=" + std::to_string(params.m));
  }
  if (!raw_pool.allFinite()) throw std::invalid_argument("train_codebook: pool contains non-finite values");
  Codebook cb;
  cb.params = params;
  cb.basis_convention = kBasisConvention;
  cb.bounds = fit_rescale(raw_pool);
  KMeansOptions opts = options;
  opts.seed = params.seed;
  const KMeansResult km = kmeans(rescale_pool(raw_pool, cb.bounds), M, opts);
  cb.centroids = km.centroids;
  cb.inertia = km.inertia;
  return cb;
}

FeaturePool subsample_rows(const FeaturePool& pool, Eigen::Index cap, std::uint64_t seed) {
  if (pool.rows() <= cap) return pool;
  std::vector<Eigen::Index> idx(pool.rows());
  std::iota(idx.begin(), idx.end(), Eigen::Index(0));
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(cap);
  std::sort(idx.begin(), idx.end());
  FeaturePool out(cap, pool.cols());
  for (Eigen::Index i = 0; i < cap; ++i) out.row(i) = pool.row(idx[i]);
  return out;
}

FeatureMatrix build_feature_matrix(const FeaturePool& backward, const FeaturePool& forward, const Codebook& cb) {
  if (backward.rows() != forward.rows()) throw std::invalid_argument("build_feature_matrix: unpaired features");
  const Eigen::Index M = cb.size();
  FeatureMatrix fm{Eigen::MatrixXd::Zero(M, M), static_cast<std::size_t>(backward.rows())};
  for (Eigen::Index i = 0; i < backward.rows(); ++i) {
    fm.values(nearest_code(backward.row(i).transpose(), cb), nearest_code(forward.row(i).transpose(), cb)) += 1.0;
  }
  if (fm.pair_count > 0) fm.values /= static_cast<double>(fm.pair_count);
  return fm;
}

}  // namespace sigwriter
