#pragma once

// Pseudo-handwriting pages drawn from per-writer parametric styles, used as
// a stand-in corpus when no scanned dataset is available.

#include <sigwriter/imageproc.hpp>
#include <sigwriter/manifest.hpp>

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

namespace sigwriter {

/// Control points of one pen stroke in glyph units (baseline y = 0,
/// x-height y = 1, y pointing up).
using Stroke = std::vector<Eigen::Vector2d>;

struct Glyph {
  std::vector<Stroke> strokes;
  double advance = 1.0;
};

using Alphabet = std::vector<Glyph>;

/// The shared alphabet every writer draws from.
Alphabet make_alphabet(std::uint64_t seed = 0x5eed);

struct WriterStyle {
  double slant_deg = 0.0;
  double pen_radius = 2.0;       ///< pixels
  double pressure = 0.1;         ///< relative radius modulation along strokes
  double x_height = 36.0;        ///< pixels
  double aspect = 1.0;           ///< horizontal stretch
  double angularity = 0.0;       ///< 0 smooth splines, 1 straight polylines
  double wobble = 0.0;           ///< curvature wobble amplitude in glyph units
  double wobble_frequency = 2.0; ///< cycles per unit stroke parameter
  double letter_spacing = 0.25;  ///< glyph units between letters
  double spacing_jitter = 0.05;
  double line_spacing = 3.0;     ///< in x-heights
  double connectedness = 0.5;    ///< probability that adjacent letters are joined
  Alphabet allographs;           ///< this writer's perturbed copy of the alphabet
};

WriterStyle sample_writer_style(const Alphabet& alphabet, std::mt19937_64& rng);

struct PageLayout {
  int width = 1800;
  int height = 1300;
  int margin = 60;
  double paper = 222.0;
  double ink = 35.0;
  double noise_sigma = 5.0;
  double instance_jitter = 0.025;  ///< per-letter control point noise, glyph units
};

/// Renders one page of random text in the given style.
GrayImage render_page(const WriterStyle& style, std::uint64_t doc_seed, const PageLayout& layout = {});

struct SyntheticOptions {
  int writers = 10;
  int docs_per_writer = 2;
  int train_writers = 5;  ///< extra writers whose pages are tagged role=train
  std::uint64_t seed = 0;
  PageLayout layout;
};

/// Writes PGM pages and manifest.csv into `out_dir` and returns the
/// manifest. Deterministic for a given seed. Throws IoError if the
/// directory cannot be written and ConfigError for non-positive counts.
CorpusManifest generate_synthetic_corpus(const std::filesystem::path& out_dir, const SyntheticOptions& options);

}  // namespace sigwriter
