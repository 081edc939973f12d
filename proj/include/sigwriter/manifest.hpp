#pragma once

// Corpus manifests: CSV lines of doc_id,writer_id,path,role.

#include <filesystem>
#include <string>
#include <vector>

namespace sigwriter {

enum class Role { train, gallery, template_, query };

std::string to_string(Role r);
/// Throws ConfigError.
Role parse_role(const std::string& s);

struct ManifestEntry {
  std::string doc_id;
  std::string writer_id;
  std::filesystem::path path;  ///< relative paths resolve against the manifest root
  Role role = Role::gallery;
};

struct CorpusManifest {
  std::filesystem::path root;
  std::vector<ManifestEntry> entries;

  std::filesystem::path resolve(const ManifestEntry& e) const { return e.path.is_absolute() ? e.path : root / e.path; }
  std::vector<ManifestEntry> with_role(Role r) const;
  bool has_role(Role r) const;
};

/// Environment variable naming the directory that relative manifest and
/// corpus arguments are resolved against.
inline constexpr const char* kDataRootEnv = "SIGWRITER_DATA_ROOT";

/// Value of SIGWRITER_DATA_ROOT, or the current directory.
std::filesystem::path default_data_root();

/// Parses a manifest; its directory becomes the root. Blank lines and lines
/// starting with '#' are skipped, as is a leading header line. Throws
/// IoError if the file is unreadable, ConfigError on malformed lines,
/// duplicate ids, empty writer ids, or (with check_paths) missing images.
CorpusManifest load_manifest(const std::filesystem::path& path, bool check_paths = true);

void save_manifest(const std::filesystem::path& path, const CorpusManifest& manifest);

/// Builds a manifest from files named <writer>_<doc>.<ext> in one directory,
/// sorted by file name. Files without an underscore or an image extension
/// are ignored.
CorpusManifest scan_flat_directory(const std::filesystem::path& dir, Role role = Role::gallery);

}  // namespace sigwriter
