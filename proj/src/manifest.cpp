#include <sigwriter/manifest.hpp>

#include <sigwriter/errors.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace sigwriter {

namespace fs = std::filesystem;

std::string to_string(Role r) {
  switch (r) {
    case Role::train: return "train";
    case Role::gallery: return "gallery";
    case Role::template_: return "template";
    case Role::query: return "query";
  }
  return "gallery";
}

Role parse_role(const std::string& s) {
  if (s == "train") return Role::train;
  if (s == "gallery") return Role::gallery;
  if (s == "template") return Role::template_;
  if (s == "query") return Role::query;
  throw ConfigError("unknown role: " + s + " (expected train, gallery, template or query)");
}

std::vector<ManifestEntry> CorpusManifest::with_role(Role r) const {
  std::vector<ManifestEntry> out;
  std::copy_if(entries.begin(), entries.end(), std::back_inserter(out), [r](const auto& e) { return e.role == r; });
  return out;
}

bool CorpusManifest::has_role(Role r) const {
  return std::any_of(entries.begin(), entries.end(), [r](const auto& e) { return e.role == r; });
}

fs::path default_data_root() {
  if (const char* env = std::getenv(kDataRootEnv); env && *env) return env;
  return fs::current_path();
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string field; std::getline(ss, field, ',');) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

CorpusManifest load_manifest(const fs::path& path, bool check_paths) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  CorpusManifest manifest;
  manifest.root = path.parent_path().empty() ? fs::path(".") : path.parent_path();

  std::set<std::string> ids;
  int lineno = 0;
  bool first = true;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_fields(line);
    if (first && !fields.empty() && fields[0] == "doc_id") {
      first = false;
      continue;
    }
    first = false;
    const std::string where = path.string() + ":" + std::to_string(lineno) + ": ";
    if (fields.size() != 4) throw ConfigError(where + "expected doc_id,writer_id,path,role");
    ManifestEntry e{fields[0], fields[1], fs::path(fields[2]), parse_role(fields[3])};
    if (e.doc_id.empty()) throw ConfigError(where + "empty document id");
    if (e.writer_id.empty()) throw ConfigError(where + "empty writer id");
    if (!ids.insert(e.doc_id).second) throw ConfigError(where + "duplicate document id " + e.doc_id);
    if (check_paths && !fs::exists(manifest.resolve(e))) {
      throw IoError(where + "image not found: " + manifest.resolve(e).string());
    }
    manifest.entries.push_back(std::move(e));
  }
  return manifest;
}

void save_manifest(const fs::path& path, const CorpusManifest& manifest) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write manifest " + path.string());
  out << "doc_id,writer_id,path,role\n";
  for (const auto& e : manifest.entries) {
    out << e.doc_id << ',' << e.writer_id << ',' << e.path.generic_string() << ',' << to_string(e.role) << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

CorpusManifest scan_flat_directory(const fs::path& dir, Role role) {
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  static const std::set<std::string> image_ext{".png", ".pgm", ".ppm", ".pnm"};
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (image_ext.count(ext) && entry.path().stem().string().find('_') != std::string::npos) {
      files.push_back(entry.path().filename());
    }
  }
  std::sort(files.begin(), files.end());

  CorpusManifest manifest{dir, {}};
  for (const auto& f : files) {
    const std::string stem = f.stem().string();
    const std::string writer = stem.substr(0, stem.find('_'));
    if (writer.empty()) continue;
    manifest.entries.push_back({stem, writer, f, role});
  }
  return manifest;
}

}  // namespace sigwriter
