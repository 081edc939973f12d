#pragma once

// Binary persistence for codebooks and per-document feature matrices.
// All numbers are little-endian; floating-point values are IEEE-754 binary64.

#include <sigwriter/codebook.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace sigwriter {

inline constexpr std::uint32_t kCodebookFormatVersion = 1;
inline constexpr std::uint32_t kFeatureMatrixFormatVersion = 1;

/// FNV-1a 64 over the serialized codebook. Any change to parameters,
/// bounds, or centroids changes the fingerprint.
std::uint64_t codebook_fingerprint(const Codebook& cb);

void save_codebook(const std::filesystem::path& path, const Codebook& cb);
/// Throws IoError on unreadable, truncated, or foreign files.
Codebook load_codebook(const std::filesystem::path& path);

struct StoredFeatureMatrix {
  std::string doc_id;
  std::string writer_id;
  std::string source;  ///< image the matrix was computed from, may be empty
  std::uint64_t fingerprint = 0;
  FeatureMatrix matrix;
};

void save_feature_matrix(const std::filesystem::path& path, const StoredFeatureMatrix& stored);

/// Throws IoError on malformed files and DimensionMismatch when
/// `expected_fingerprint` is given and differs from the stored one.
StoredFeatureMatrix load_feature_matrix(const std::filesystem::path& path,
                                        std::optional<std::uint64_t> expected_fingerprint = std::nullopt);

}  // namespace sigwriter
