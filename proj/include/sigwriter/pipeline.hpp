#pragma once

// Image -> contours -> polygons -> pathlet features -> feature matrix.

#include <sigwriter/codebook.hpp>
#include <sigwriter/identify.hpp>
#include <sigwriter/imageproc.hpp>
#include <sigwriter/pathlets.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sigwriter {

struct PipelineConfig {
  double epsilon = 1.0;
  int w = 4;
  int m = 3;
  int M = 48;
  std::optional<Metric> metric;  ///< empty selects by epsilon
  PairOrientation orientation = PairOrientation::traversal;
  std::uint64_t seed = 0;
  int min_perimeter = 10;
  bool include_holes = true;
  bool invert = false;  ///< light ink on dark background
  std::size_t subsample_cap = 500000;
  int restarts = 1;

  /// Throws ConfigError unless 1 < m < w, M >= 2, epsilon >= 0.
  void validate() const;
  Metric effective_metric() const { return resolve_metric(metric, epsilon); }
  CodebookParams codebook_params() const;
  PathletConfig pathlet_config() const { return {w, m, orientation}; }
};

/// Named parameter sets: "default" (w=4, m=3, M=48) and "small-ink"
/// (w=3, m=2, M=32). Throws ConfigError for other names.
PipelineConfig preset(const std::string& name);

/// Copies the feature-defining parameters out of a trained codebook.
PipelineConfig config_from_codebook(const Codebook& cb, PipelineConfig base = {});

struct PageFeatures {
  PathletFeatures features;
  std::size_t contours = 0;
  std::size_t raw_points = 0;  ///< border pixels before polygonization
  std::size_t vertices = 0;    ///< polygon vertices after polygonization
  std::vector<std::string> warnings;

  /// Fraction of contour points removed by polygonization.
  double reduction() const {
    return raw_points == 0 ? 0.0 : 1.0 - static_cast<double>(vertices) / static_cast<double>(raw_points);
  }
};

/// Binarize, trace, and polygonize. Rings with fewer than three vertices are
/// dropped. `page` may collect counts and warnings.
std::vector<Polyline2d> page_polygons(const GrayImage& img, const PipelineConfig& config,
                                      PageFeatures* page = nullptr);

PageFeatures featurize_image(const GrayImage& img, const PipelineConfig& config);

/// Pools pathlet features of all pages, subsamples to the cap, and trains.
Codebook train_codebook(std::span<const PageFeatures> pages, const PipelineConfig& config);

/// Rescales a page's pair features with the codebook bounds and builds its
/// feature matrix. Throws DimensionMismatch if the page was featurized with
/// a different truncation level.
FeatureMatrix describe(const PageFeatures& page, const Codebook& cb);

/// Loads and featurizes many images concurrently; results keep input order.
std::vector<PageFeatures> featurize_files(std::span<const std::filesystem::path> paths, const PipelineConfig& config);

}  // namespace sigwriter
