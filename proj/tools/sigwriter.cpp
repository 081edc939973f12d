// sigwriter: writer identification from handwriting contours.
//
//   sigwriter generate-synthetic --out corpus --writers 10 --docs 2
//   sigwriter train     --manifest corpus/manifest.csv --codebook cb.bin
//   sigwriter featurize --manifest corpus/manifest.csv --codebook cb.bin --out features
//   sigwriter evaluate  --manifest corpus/manifest.csv --codebook cb.bin --features features
//   sigwriter identify  --image page.png --codebook cb.bin --gallery features
//
// Exit codes: 0 success, 1 unexpected failure, 2 I/O error, 3 invalid
// configuration, 4 dimension or codebook mismatch.

#include <sigwriter/errors.hpp>
#include <sigwriter/identify.hpp>
#include <sigwriter/image_io.hpp>
#include <sigwriter/manifest.hpp>
#include <sigwriter/pipeline.hpp>
#include <sigwriter/storage.hpp>
#include <sigwriter/synthetic.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace sigwriter;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kIo = 2, kConfig = 3, kMismatch = 4 };

void warn(const std::string& msg) { std::cerr << "warning: " << msg << '\n'; }

fs::path in_data_root(const fs::path& p) {
  if (p.empty() || p.is_absolute() || !std::getenv(kDataRootEnv)) return p;
  return default_data_root() / p;
}

// Pipeline flags shared by every subcommand that touches images. Values
// left unset fall back to the preset, or to the codebook when one is loaded.
struct ConfigFlags {
  std::string preset_name = "default";
  std::optional<double> epsilon;
  std::optional<int> w, m, M;
  std::string metric = "auto";
  std::optional<std::string> orientation;
  std::optional<std::uint64_t> seed;
  std::optional<int> min_perimeter;
  bool no_holes = false;
  bool invert = false;
  std::optional<std::size_t> subsample_cap;
  int restarts = 1;

  void attach(CLI::App* cmd, bool training) {
    cmd->add_option("--preset", preset_name, "Parameter preset: default or small-ink");
    cmd->add_option("--epsilon", epsilon, "Polygonization tolerance in pixels");
    cmd->add_option("-w,--w", w, "Pathlet size in vertices");
    cmd->add_option("-m,--m", m, "Log-signature truncation level");
    cmd->add_option("--metric", metric, "Distance: manhattan, chi2 or auto")
        ->check(CLI::IsMember({"manhattan", "chi2", "auto"}));
    cmd->add_option("--pair-orientation", orientation, "traversal or outward")
        ->check(CLI::IsMember({"traversal", "outward"}));
    cmd->add_option("--min-perimeter", min_perimeter, "Discard contours with fewer border pixels");
    cmd->add_flag("--no-holes", no_holes, "Ignore inner (hole) contours");
    cmd->add_flag("--invert", invert, "Light ink on a dark background");
    if (training) {
      cmd->add_option("-M,--M", M, "Codebook size");
      cmd->add_option("--seed", seed, "Random seed");
      cmd->add_option("--subsample-cap", subsample_cap, "Maximum pathlets used for clustering");
      cmd->add_option("--restarts", restarts, "k-means restarts; the lowest inertia run is kept");
    }
  }

  std::optional<Metric> requested_metric() const {
    if (metric == "auto") return std::nullopt;
    return parse_metric(metric);
  }

  PipelineConfig build() const {
    PipelineConfig c = preset(preset_name);
    if (epsilon) c.epsilon = *epsilon;
    if (w) c.w = *w;
    if (m) c.m = *m;
    if (M) c.M = *M;
    if (orientation) c.orientation = parse_pair_orientation(*orientation);
    if (seed) c.seed = *seed;
    if (min_perimeter) c.min_perimeter = *min_perimeter;
    if (no_holes) c.include_holes = false;
    if (invert) c.invert = true;
    if (subsample_cap) c.subsample_cap = *subsample_cap;
    c.restarts = restarts;
    c.metric = requested_metric();
    c.validate();
    return c;
  }

  // Explicit feature flags must agree with the codebook they are used with.
  PipelineConfig against(const Codebook& cb) const {
    PipelineConfig c = config_from_codebook(cb);
    c.metric = requested_metric();
    std::vector<std::string> clashes;
    auto check = [&](bool given, bool same, const std::string& name) {
      if (given && !same) clashes.push_back(name);
    };
    check(epsilon.has_value(), epsilon && *epsilon == c.epsilon, "epsilon");
    check(w.has_value(), w && *w == c.w, "w");
    check(m.has_value(), m && *m == c.m, "m");
    check(orientation.has_value(), orientation && parse_pair_orientation(*orientation) == c.orientation,
          "pair-orientation");
    check(min_perimeter.has_value(), min_perimeter && *min_perimeter == c.min_perimeter, "min-perimeter");
    check(no_holes, !c.include_holes, "no-holes");
    check(invert, c.invert, "invert");
    check(preset_name != "default", preset(preset_name).codebook_params() == c.codebook_params(), "preset");
    if (!clashes.empty()) {
      std::string list;
      for (const auto& s : clashes) list += (list.empty() ? "" : ", ") + s;
      throw DimensionMismatch("codebook was trained with different " + list + " (trained with w=" +
                              std::to_string(c.w) + ", m=" + std::to_string(c.m) + ", epsilon=" +
                              std::to_string(c.epsilon) + ")");
    }
    c.validate();
    return c;
  }
};

std::string fingerprint_hex(std::uint64_t f) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(f));
  return buf;
}

std::string matrix_file_name(const std::string& doc_id) {
  std::string name = doc_id;
  std::replace_if(name.begin(), name.end(), [](char c) { return c == '/' || c == '\\'; }, '_');
  return name + ".fm";
}

std::vector<fs::path> image_paths(const CorpusManifest& m, const std::vector<ManifestEntry>& entries) {
  std::vector<fs::path> out;
  for (const auto& e : entries) out.push_back(m.resolve(e));
  return out;
}

void report_page_warnings(const std::vector<ManifestEntry>& entries, const std::vector<PageFeatures>& pages) {
  for (std::size_t i = 0; i < pages.size(); ++i)
    for (const auto& w : pages[i].warnings) warn(entries[i].doc_id + ": " + w);
}

std::vector<ManifestEntry> non_training(const CorpusManifest& m) {
  std::vector<ManifestEntry> out;
  for (const auto& e : m.entries)
    if (e.role != Role::train) out.push_back(e);
  return out;
}

std::vector<DocumentDescriptor> describe_entries(const CorpusManifest& m, const std::vector<ManifestEntry>& entries,
                                                 const Codebook& cb, const PipelineConfig& config) {
  const auto pages = featurize_files(image_paths(m, entries), config);
  report_page_warnings(entries, pages);
  std::vector<DocumentDescriptor> docs;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    docs.push_back({entries[i].doc_id, entries[i].writer_id, describe(pages[i], cb), m.resolve(entries[i]).string()});
  }
  return docs;
}

// --- generate-synthetic ---------------------------------------------------

struct GenerateArgs {
  fs::path out;
  int writers = 10;
  int docs = 2;
  int train_writers = 5;
  std::uint64_t seed = 0;
  int width = PageLayout{}.width;
  int height = PageLayout{}.height;
};

int run_generate(const GenerateArgs& a) {
  SyntheticOptions o;
  o.writers = a.writers;
  o.docs_per_writer = a.docs;
  o.train_writers = a.train_writers;
  o.seed = a.seed;
  o.layout.width = a.width;
  o.layout.height = a.height;
  if (a.width < 200 || a.height < 200) throw ConfigError("page size must be at least 200x200");
  const fs::path out = in_data_root(a.out);
  const auto m = generate_synthetic_corpus(out, o);
  std::cout << "wrote " << m.entries.size() << " pages and " << (out / "manifest.csv").string() << '\n';
  return kOk;
}

// --- train ------------------------------------------------------------------

struct TrainArgs {
  fs::path manifest;
  fs::path codebook;
  ConfigFlags flags;
};

int run_train(const TrainArgs& a) {
  const PipelineConfig config = a.flags.build();
  const auto m = load_manifest(in_data_root(a.manifest));
  auto entries = m.with_role(Role::train);
  if (entries.empty()) {
    warn("manifest has no train documents; training on all documents");
    entries = m.entries;
  }
  if (entries.empty()) throw ConfigError("manifest lists no documents");
  const auto pages = featurize_files(image_paths(m, entries), config);
  report_page_warnings(entries, pages);

  std::size_t raw = 0, vertices = 0, pathlets = 0;
  for (const auto& p : pages) {
    raw += p.raw_points;
    vertices += p.vertices;
    pathlets += static_cast<std::size_t>(p.features.pathlets.rows());
  }
  const Codebook cb = train_codebook(pages, config);
  save_codebook(a.codebook, cb);
  std::cout << "pages: " << pages.size() << "\npathlets: " << pathlets << "\nvertex reduction: "
            << (raw ? 100.0 * (1.0 - static_cast<double>(vertices) / raw) : 0.0) << "%\ncodebook: M=" << cb.size()
            << " D=" << cb.dimension() << " inertia=" << cb.inertia << "\nfingerprint: "
            << fingerprint_hex(codebook_fingerprint(cb)) << '\n';
  return kOk;
}

// --- featurize ----------------------------------------------------------------

struct FeaturizeArgs {
  fs::path manifest;
  fs::path codebook;
  fs::path out;
  bool include_train = false;
  ConfigFlags flags;
};

int run_featurize(const FeaturizeArgs& a) {
  const Codebook cb = load_codebook(a.codebook);
  const PipelineConfig config = a.flags.against(cb);
  const auto m = load_manifest(in_data_root(a.manifest));
  const auto entries = a.include_train ? m.entries : non_training(m);
  const fs::path out = in_data_root(a.out);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (!fs::is_directory(out)) throw IoError("cannot create output directory " + out.string());

  const std::uint64_t fp = codebook_fingerprint(cb);
  for (const auto& d : describe_entries(m, entries, cb, config)) {
    if (d.matrix.pair_count == 0) warn(d.doc_id + ": no pathlet pairs; writing a zero matrix");
    save_feature_matrix(out / matrix_file_name(d.doc_id), {d.doc_id, d.writer_id, d.source, fp, d.matrix});
  }
  std::cout << "wrote " << entries.size() << " feature matrices to " << out.string() << '\n';
  return kOk;
}

// --- evaluate -------------------------------------------------------------------

struct EvaluateArgs {
  fs::path manifest;
  fs::path codebook;
  fs::path features;
  std::string mode = "loo";
  std::vector<int> tops{1, 10};
  std::string dataset;
  fs::path report;
  ConfigFlags flags;
};

int run_evaluate(const EvaluateArgs& a) {
  const Codebook cb = load_codebook(a.codebook);
  const PipelineConfig config = a.flags.against(cb);
  const Metric metric = config.effective_metric();
  const auto m = load_manifest(in_data_root(a.manifest));
  const std::uint64_t fp = codebook_fingerprint(cb);

  auto load = [&](const std::vector<ManifestEntry>& entries) {
    if (a.features.empty()) return describe_entries(m, entries, cb, config);
    std::vector<DocumentDescriptor> docs;
    for (const auto& e : entries) {
      const auto s = load_feature_matrix(in_data_root(a.features) / matrix_file_name(e.doc_id), fp);
      if (s.doc_id != e.doc_id || s.writer_id != e.writer_id) {
        throw ConfigError("feature file for " + e.doc_id + " belongs to " + s.doc_id + " (writer " + s.writer_id + ")");
      }
      docs.push_back({s.doc_id, s.writer_id, s.matrix, s.source});
    }
    return docs;
  };

  AccuracyReport report;
  if (a.mode == "loo") {
    auto entries = m.with_role(Role::gallery);
    if (entries.empty()) throw ConfigError("leave-one-out needs gallery documents in the manifest");
    report = evaluate_loo(load(entries), metric, a.tops);
  } else {
    const auto templates = m.with_role(Role::template_);
    const auto queries = m.with_role(Role::query);
    if (templates.empty() || queries.empty()) throw ConfigError("query-set mode needs template and query documents");
    report = evaluate_queryset(load(templates), load(queries), metric, a.tops);
  }
  for (const auto& w : report.warnings) warn(w);

  const std::string dataset = a.dataset.empty() ? m.root.filename().string() : a.dataset;
  const std::vector<ReportRow> rows{{dataset.empty() ? "corpus" : dataset, report, config.w, config.m, config.M}};
  const std::string table = format_report_table(rows);
  std::cout << "metric: " << to_string(metric) << "  queries: " << report.queries << "\n" << table;
  if (!a.report.empty()) {
    const fs::path base = in_data_root(a.report);
    for (const auto& [ext, text] : {std::pair{".csv", format_report_csv(rows)}, std::pair{".txt", table}}) {
      fs::path p = base;
      p += ext;
      std::ofstream out(p, std::ios::trunc);
      if (!(out << text)) throw IoError("cannot write report " + p.string());
    }
  }
  return kOk;
}

// --- identify -------------------------------------------------------------------

struct IdentifyArgs {
  fs::path image;
  fs::path codebook;
  fs::path gallery;
  int top = 10;
  ConfigFlags flags;
};

int run_identify(const IdentifyArgs& a) {
  const Codebook cb = load_codebook(a.codebook);
  const PipelineConfig config = a.flags.against(cb);
  const std::uint64_t fp = codebook_fingerprint(cb);

  const fs::path dir = in_data_root(a.gallery);
  if (!fs::is_directory(dir)) throw IoError("gallery is not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".fm") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<DocumentDescriptor> gallery;
  for (const auto& f : files) {
    auto s = load_feature_matrix(f, fp);
    gallery.push_back({s.doc_id, s.writer_id, std::move(s.matrix), s.source});
  }
  if (gallery.empty()) throw ConfigError("gallery " + dir.string() + " holds no feature matrices");

  const fs::path image = in_data_root(a.image);
  const PageFeatures page = featurize_image(read_image(image), config);
  for (const auto& w : page.warnings) warn(w);
  const DocumentDescriptor query{"query:" + image.string(), "", describe(page, cb), image.string()};
  const auto ranking = rank(query, gallery, config.effective_metric());

  std::cout << "rank,writer_id,doc_id,distance\n";
  const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(a.top), ranking.candidates.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = ranking.candidates[i];
    char dist[32];
    std::snprintf(dist, sizeof dist, "%.6f", c.distance);
    std::cout << i + 1 << ',' << c.writer_id << ',' << c.doc_id << ',' << dist << '\n';
  }
  return kOk;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const IoError& e) {
    std::cerr << "error (io): " << e.what() << '\n';
    return kIo;
  } catch (const DimensionMismatch& e) {
    std::cerr << "error (mismatch): " << e.what() << '\n';
    return kMismatch;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error (config): " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Writer identification with log path signatures of handwriting contours"};
  app.require_subcommand(1);
  std::function<int()> action;

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate-synthetic", "Render a synthetic pseudo-handwriting corpus");
  g->add_option("--out", gen.out, "Output directory")->required();
  g->add_option("--writers", gen.writers, "Gallery writers");
  g->add_option("--docs", gen.docs, "Documents per gallery writer");
  g->add_option("--train-writers", gen.train_writers, "Additional writers reserved for codebook training");
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_option("--width", gen.width, "Page width in pixels");
  g->add_option("--height", gen.height, "Page height in pixels");
  g->callback([&] { action = [&] { return run_generate(gen); }; });

  TrainArgs train;
  auto* t = app.add_subcommand("train", "Learn a codebook from the manifest's train documents");
  t->add_option("--manifest", train.manifest, "Corpus manifest (CSV)")->required();
  t->add_option("--codebook", train.codebook, "Codebook file to write")->required();
  train.flags.attach(t, true);
  t->callback([&] { action = [&] { return run_train(train); }; });

  FeaturizeArgs feat;
  auto* f = app.add_subcommand("featurize", "Write one feature matrix per document");
  f->add_option("--manifest", feat.manifest, "Corpus manifest (CSV)")->required();
  f->add_option("--codebook", feat.codebook, "Trained codebook")->required();
  f->add_option("--out", feat.out, "Output directory for .fm files")->required();
  f->add_flag("--include-train", feat.include_train, "Also featurize train documents");
  feat.flags.attach(f, false);
  f->callback([&] { action = [&] { return run_featurize(feat); }; });

  EvaluateArgs eval;
  auto* e = app.add_subcommand("evaluate", "Top-N identification accuracy");
  e->add_option("--manifest", eval.manifest, "Corpus manifest (CSV)")->required();
  e->add_option("--codebook", eval.codebook, "Trained codebook")->required();
  e->add_option("--features", eval.features, "Directory of .fm files; featurizes images when omitted");
  e->add_option("--mode", eval.mode, "loo or queryset")->check(CLI::IsMember({"loo", "queryset"}));
  e->add_option("--top", eval.tops, "Top-N values")->delimiter(',');
  e->add_option("--dataset", eval.dataset, "Dataset label for the report");
  e->add_option("--report", eval.report, "Write <path>.csv and <path>.txt");
  eval.flags.attach(e, false);
  e->callback([&] { action = [&] { return run_evaluate(eval); }; });

  IdentifyArgs ident;
  auto* i = app.add_subcommand("identify", "Rank gallery writers for one page");
  i->add_option("--image", ident.image, "Query image (PNG, PGM, PPM)")->required();
  i->add_option("--codebook", ident.codebook, "Trained codebook")->required();
  i->add_option("--gallery", ident.gallery, "Directory of .fm files")->required();
  i->add_option("--top", ident.top, "Number of candidates to print")->check(CLI::PositiveNumber);
  ident.flags.attach(i, false);
  i->callback([&] { action = [&] { return run_identify(ident); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? kOk : kConfig;
  }
  return guarded(action);
}
