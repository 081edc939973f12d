#include <sigwriter/synthetic.hpp>

#include <sigwriter/errors.hpp>
#include <sigwriter/image_io.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>

namespace sigwriter {

namespace fs = std::filesystem;

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double gaussian(std::mt19937_64& rng, double sigma) { return std::normal_distribution<double>(0.0, sigma)(rng); }

// A wandering pen trajectory inside the glyph box.
Stroke random_stroke(std::mt19937_64& rng, double width) {
  const int n = std::uniform_int_distribution<int>(4, 7)(rng);
  const double top = uniform(rng, 0.0, 1.0) < 0.25 ? 1.8 : 1.0;
  const double bottom = uniform(rng, 0.0, 1.0) < 0.15 ? -0.7 : 0.0;
  Stroke s;
  double x = uniform(rng, 0.0, 0.3 * width);
  for (int i = 0; i < n; ++i) {
    const double y = i == 0 ? uniform(rng, 0.3, top) : uniform(rng, bottom, top);
    s.emplace_back(x, y);
    x = std::clamp(x + uniform(rng, -0.25, 0.55) * width, 0.0, width);
  }
  return s;
}

Glyph perturbed(const Glyph& g, std::mt19937_64& rng, double sigma) {
  Glyph out = g;
  for (auto& stroke : out.strokes)
    for (auto& p : stroke) p += Eigen::Vector2d(gaussian(rng, sigma), gaussian(rng, sigma));
  return out;
}

// Dense samples along a stroke: Catmull-Rom through the control points,
// blended toward straight segments by `angularity`.
std::vector<Eigen::Vector2d> trace_stroke(const Stroke& ctrl, double angularity, double samples_per_unit) {
  std::vector<Eigen::Vector2d> out;
  const std::size_t n = ctrl.size();
  if (n == 0) return out;
  if (n == 1) return {ctrl[0]};
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Eigen::Vector2d& p0 = ctrl[i == 0 ? 0 : i - 1];
    const Eigen::Vector2d& p1 = ctrl[i];
    const Eigen::Vector2d& p2 = ctrl[i + 1];
    const Eigen::Vector2d& p3 = ctrl[std::min(i + 2, n - 1)];
    const int steps = std::max(2, static_cast<int>(std::ceil((p2 - p1).norm() * samples_per_unit)));
    for (int s = 0; s < steps; ++s) {
      const double t = static_cast<double>(s) / steps;
      const double t2 = t * t, t3 = t2 * t;
      const Eigen::Vector2d spline = 0.5 * ((2.0 * p1) + (-p0 + p2) * t + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * t2 +
                                            (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * t3);
      out.push_back((1.0 - angularity) * spline + angularity * ((1.0 - t) * p1 + t * p2));
    }
  }
  out.push_back(ctrl.back());
  return out;
}

class Canvas {
 public:
  Canvas(int width, int height) : cover_(Eigen::ArrayXXf::Zero(height, width)) {}

  // Anti-aliased disc: coverage falls off linearly over one pixel at the rim.
  void stamp(double cx, double cy, double r) {
    const int x0 = std::max(0, static_cast<int>(std::floor(cx - r - 1)));
    const int x1 = std::min<int>(cover_.cols() - 1, static_cast<int>(std::ceil(cx + r + 1)));
    const int y0 = std::max(0, static_cast<int>(std::floor(cy - r - 1)));
    const int y1 = std::min<int>(cover_.rows() - 1, static_cast<int>(std::ceil(cy + r + 1)));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const double d = std::hypot(x - cx, y - cy);
        const float c = static_cast<float>(std::clamp(r + 0.5 - d, 0.0, 1.0));
        cover_(y, x) = std::max(cover_(y, x), c);
      }
    }
  }

  GrayImage finish(const PageLayout& layout, std::mt19937_64& rng) const {
    GrayImage img(cover_.rows(), cover_.cols());
    std::normal_distribution<double> noise(0.0, layout.noise_sigma);
    for (Eigen::Index y = 0; y < cover_.rows(); ++y) {
      for (Eigen::Index x = 0; x < cover_.cols(); ++x) {
        const double v = layout.paper + cover_(y, x) * (layout.ink - layout.paper) + noise(rng);
        img(y, x) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
      }
    }
    return img;
  }

 private:
  Eigen::ArrayXXf cover_;
};

}  // namespace

Alphabet make_alphabet(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Alphabet alphabet(26);
  for (auto& g : alphabet) {
    g.advance = uniform(rng, 0.6, 1.1);
    g.strokes.push_back(random_stroke(rng, g.advance));
    if (uniform(rng, 0.0, 1.0) < 0.3) g.strokes.push_back(random_stroke(rng, g.advance));
  }
  return alphabet;
}

WriterStyle sample_writer_style(const Alphabet& alphabet, std::mt19937_64& rng) {
  WriterStyle s;
  s.slant_deg = uniform(rng, -25.0, 25.0);
  s.pen_radius = uniform(rng, 1.8, 4.0);
  s.pressure = uniform(rng, 0.0, 0.35);
  s.x_height = uniform(rng, 40.0, 64.0);
  s.aspect = uniform(rng, 0.7, 1.35);
  s.angularity = uniform(rng, 0.0, 1.0);
  s.wobble = uniform(rng, 0.0, 0.08);
  s.wobble_frequency = uniform(rng, 1.0, 4.0);
  s.letter_spacing = uniform(rng, 0.05, 0.45);
  s.spacing_jitter = uniform(rng, 0.02, 0.12);
  s.line_spacing = uniform(rng, 2.6, 3.4);
  s.connectedness = uniform(rng, 0.0, 1.0);
  const double allograph_sigma = uniform(rng, 0.05, 0.12);
  for (const auto& g : alphabet) s.allographs.push_back(perturbed(g, rng, allograph_sigma));
  return s;
}

GrayImage render_page(const WriterStyle& style, std::uint64_t doc_seed, const PageLayout& layout) {
  std::mt19937_64 rng(doc_seed);
  Canvas canvas(layout.width, layout.height);
  const double shear = std::tan(style.slant_deg * std::numbers::pi / 180.0);
  const double h = style.x_height;
  const double doc_slant = shear + gaussian(rng, 0.02);
  const double doc_scale = 1.0 + gaussian(rng, 0.02);
  const double samples_per_unit = 2.5 * h;  // about 2.5 samples per pixel of x-height

  auto to_page = [&](const Eigen::Vector2d& g, double pen_x, double baseline) {
    return Eigen::Vector2d(pen_x + (g.x() * style.aspect + g.y() * doc_slant) * h * doc_scale,
                           baseline - g.y() * h * doc_scale);
  };

  auto draw = [&](const std::vector<Eigen::Vector2d>& pts, double phase) {
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / std::max<std::size_t>(1, n - 1);
      const Eigen::Vector2d tangent = pts[std::min(i + 1, n - 1)] - pts[i == 0 ? 0 : i - 1];
      Eigen::Vector2d p = pts[i];
      if (tangent.norm() > 0.0) {
        const Eigen::Vector2d normal(-tangent.y(), tangent.x());
        p += normal.normalized() * style.wobble * h *
             std::sin(2.0 * std::numbers::pi * style.wobble_frequency * t + phase);
      }
      const double r = style.pen_radius * (1.0 + style.pressure * std::sin(std::numbers::pi * t));
      canvas.stamp(p.x(), p.y(), r);
    }
  };

  std::uniform_int_distribution<int> letter(0, static_cast<int>(style.allographs.size()) - 1);
  std::uniform_int_distribution<int> word_length(2, 7);
  const double line_step = style.line_spacing * h;
  const double right = layout.width - layout.margin;
  for (double baseline = layout.margin + 1.8 * h; baseline + 0.8 * h < layout.height - layout.margin;
       baseline += line_step * (1.0 + gaussian(rng, 0.02))) {
    double pen_x = layout.margin + uniform(rng, 0.0, h);
    while (true) {
      const int len = word_length(rng);
      double word_width = 0.0;
      std::vector<int> word;
      for (int i = 0; i < len; ++i) {
        word.push_back(letter(rng));
        word_width += (style.allographs[word.back()].advance + style.letter_spacing) * style.aspect * h;
      }
      if (pen_x + word_width + 2.0 * h > right) break;

      std::optional<Eigen::Vector2d> last_end;
      for (int idx : word) {
        const Glyph g = perturbed(style.allographs[idx], rng, layout.instance_jitter);
        for (std::size_t s = 0; s < g.strokes.size(); ++s) {
          Stroke page_ctrl;
          for (const auto& p : g.strokes[s]) page_ctrl.push_back(to_page(p, pen_x, baseline));
          if (s == 0 && last_end && uniform(rng, 0.0, 1.0) < style.connectedness) {
            page_ctrl.insert(page_ctrl.begin(), *last_end);
          }
          draw(trace_stroke(page_ctrl, style.angularity, samples_per_unit / h), uniform(rng, 0.0, 6.28));
          if (s == 0) last_end = page_ctrl.back();
        }
        pen_x += (g.advance + style.letter_spacing + gaussian(rng, style.spacing_jitter)) * style.aspect * h;
      }
      pen_x += uniform(rng, 0.6, 1.0) * h;
    }
  }
  return canvas.finish(layout, rng);
}

CorpusManifest generate_synthetic_corpus(const fs::path& out_dir, const SyntheticOptions& options) {
  if (options.writers < 1 || options.docs_per_writer < 1) {
    throw ConfigError("synthetic corpus needs at least one writer and one document per writer");
  }
  if (options.train_writers < 0) throw ConfigError("train_writers must be >= 0");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) throw IoError("cannot create output directory " + out_dir.string());

  const Alphabet alphabet = make_alphabet();
  std::mt19937_64 master(options.seed);
  CorpusManifest manifest{out_dir, {}};

  auto emit = [&](const std::string& prefix, int writer, int docs, Role role) {
    const WriterStyle style = sample_writer_style(alphabet, master);
    char writer_id[32];
    std::snprintf(writer_id, sizeof writer_id, "%s%03d", prefix.c_str(), writer);
    for (int d = 0; d < docs; ++d) {
      const std::string doc_id = std::string(writer_id) + "_" + std::to_string(d);
      const fs::path file = doc_id + ".pgm";
      write_pgm(out_dir / file, render_page(style, master(), options.layout));
      manifest.entries.push_back({doc_id, writer_id, file, role});
    }
  };
  for (int w = 0; w < options.writers; ++w) emit("w", w, options.docs_per_writer, Role::gallery);
  for (int w = 0; w < options.train_writers; ++w) emit("t", w, 1, Role::train);

  save_manifest(out_dir / "manifest.csv", manifest);
  return manifest;
}

}  // namespace sigwriter
