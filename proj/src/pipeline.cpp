#include <sigwriter/pipeline.hpp>

#include <sigwriter/errors.hpp>
#include <sigwriter/image_io.hpp>
#include <sigwriter/lyndon.hpp>

#include "parallel.hpp"

#include <cmath>

namespace sigwriter {

void PipelineConfig::validate() const {
  if (w < 3) throw ConfigError("pathlet size w must be >= 3 (got " + std::to_string(w) + ")");
  if (m <= 1 || m >= w) {
    throw ConfigError("truncation level must satisfy 1 < m < w (got m=" + std::to_string(m) +
                      ", w=" + std::to_string(w) + ")");
  }
  if (m > kMaxDepth) throw ConfigError("truncation level m must be <= " + std::to_string(kMaxDepth));
  if (M < 2) throw ConfigError("codebook size M must be >= 2 (got " + std::to_string(M) + ")");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw ConfigError("epsilon must be a finite value >= 0");
  if (min_perimeter < 0) throw ConfigError("min_perimeter must be >= 0");
  if (subsample_cap < static_cast<std::size_t>(M)) throw ConfigError("subsample cap must be at least M");
  if (restarts < 1) throw ConfigError("restarts must be >= 1");
}

CodebookParams PipelineConfig::codebook_params() const {
  return {w, m, epsilon, orientation, min_perimeter, include_holes, invert, seed};
}

PipelineConfig preset(const std::string& name) {
  PipelineConfig c;
  if (name == "default") return c;
  if (name == "small-ink") {
    c.w = 3;
    c.m = 2;
    c.M = 32;
    return c;
  }
  throw ConfigError("unknown preset: " + name + " (expected default or small-ink)");
}

PipelineConfig config_from_codebook(const Codebook& cb, PipelineConfig base) {
  base.w = cb.params.w;
  base.m = cb.params.m;
  base.M = static_cast<int>(cb.size());
  base.epsilon = cb.params.epsilon;
  base.orientation = cb.params.orientation;
  base.min_perimeter = cb.params.min_perimeter;
  base.include_holes = cb.params.include_holes;
  base.invert = cb.params.invert;
  base.seed = cb.params.seed;
  return base;
}

std::vector<Polyline2d> page_polygons(const GrayImage& img, const PipelineConfig& config, PageFeatures* page) {
  const Binarization bin = otsu_binarize(config.invert ? inverted(img) : img);
  if (page && bin.degenerate) page->warnings.push_back("image has a single intensity class; no ink found");
  const auto contours = trace_contours(bin.ink, {config.min_perimeter, config.include_holes});

  std::vector<Polyline2d> polygons;
  for (const auto& c : contours) {
    Polyline2d poly = polygonize(c, config.epsilon);
    if (poly.size() < 3) continue;
    if (page) {
      ++page->contours;
      page->raw_points += c.points.size();
      page->vertices += static_cast<std::size_t>(poly.size());
    }
    polygons.push_back(std::move(poly));
  }
  return polygons;
}

PageFeatures featurize_image(const GrayImage& img, const PipelineConfig& config) {
  config.validate();
  PageFeatures page;
  page.features = pathlet_features(page_polygons(img, config, &page), config.pathlet_config());
  if (page.features.forward.rows() == 0) page.warnings.push_back("no pathlet pairs extracted");
  return page;
}

Codebook train_codebook(std::span<const PageFeatures> pages, const PipelineConfig& config) {
  config.validate();
  Eigen::Index rows = 0;
  for (const auto& p : pages) rows += p.features.pathlets.rows();
  const Eigen::Index dim = logsig_dimension(config.m);
  FeaturePool pool(rows, dim);
  Eigen::Index at = 0;
  for (const auto& p : pages) {
    if (p.features.pathlets.rows() == 0) continue;
    if (p.features.pathlets.cols() != dim) throw DimensionMismatch("page features do not match truncation level");
    pool.middleRows(at, p.features.pathlets.rows()) = p.features.pathlets;
    at += p.features.pathlets.rows();
  }
  if (pool.rows() < config.M) {
    throw ConfigError("training pages yield " + std::to_string(pool.rows()) + " pathlets, fewer than M=" +
                      std::to_string(config.M));
  }
  pool = subsample_rows(pool, static_cast<Eigen::Index>(config.subsample_cap), config.seed);
  KMeansOptions options;
  options.restarts = config.restarts;
  return train_codebook(pool, config.M, config.codebook_params(), options);
}

FeatureMatrix describe(const PageFeatures& page, const Codebook& cb) {
  const auto& f = page.features;
  if (f.forward.rows() > 0 && f.forward.cols() != cb.dimension()) {
    throw DimensionMismatch("page features have dimension " + std::to_string(f.forward.cols()) +
                            ", codebook expects " + std::to_string(cb.dimension()));
  }
  if (f.forward.rows() == 0) return {Eigen::MatrixXd::Zero(cb.size(), cb.size()), 0};
  return build_feature_matrix(rescale_pool(f.backward, cb.bounds), rescale_pool(f.forward, cb.bounds), cb);
}

std::vector<PageFeatures> featurize_files(std::span<const std::filesystem::path> paths, const PipelineConfig& config) {
  config.validate();
  std::vector<PageFeatures> out(paths.size());
  detail::parallel_for(paths.size(), [&](std::size_t i) { out[i] = featurize_image(read_image(paths[i]), config); });
  return out;
}

}  // namespace sigwriter
