#include <sigwriter/storage.hpp>

#include <sigwriter/errors.hpp>
#include <sigwriter/lyndon.hpp>

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string_view>
#include <vector>

namespace sigwriter {

namespace {

constexpr std::string_view kCodebookMagic{"SIGWCBK\0", 8};
constexpr std::string_view kMatrixMagic{"SIGWFMX\0", 8};

class Writer {
 public:
  void bytes(std::string_view s) { buf_.insert(buf_.end(), s.begin(), s.end()); }
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    bytes(s);
  }
  const std::vector<char>& data() const { return buf_; }

 private:
  std::vector<char> buf_;
};

class Reader {
 public:
  Reader(std::vector<char> buf, std::string what) : buf_(std::move(buf)), what_(std::move(what)) {}

  std::string_view bytes(std::size_t n) {
    need(n);
    std::string_view out(buf_.data() + pos_, n);
    pos_ += n;
    return out;
  }
  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(buf_[pos_++]);
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{u8()} << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{u8()} << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() { return std::string(bytes(u32())); }
  bool at_end() const { return pos_ == buf_.size(); }

 private:
  void need(std::size_t n) const {
    if (buf_.size() - pos_ < n) throw IoError(what_ + ": truncated file");
  }

  std::vector<char> buf_;
  std::string what_;
  std::size_t pos_ = 0;
};

std::vector<char> read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_all(const std::filesystem::path& path, const std::vector<char>& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

Writer serialize(const Codebook& cb) {
  Writer w;
  w.bytes(kCodebookMagic);
  w.u32(kCodebookFormatVersion);
  w.u32(static_cast<std::uint32_t>(cb.size()));
  w.u32(static_cast<std::uint32_t>(cb.dimension()));
  w.u32(static_cast<std::uint32_t>(cb.params.m));
  w.u32(static_cast<std::uint32_t>(cb.params.w));
  w.f64(cb.params.epsilon);
  w.u8(static_cast<std::uint8_t>(cb.params.orientation));
  w.u8(cb.params.include_holes ? 1 : 0);
  w.u8(cb.params.invert ? 1 : 0);
  w.u32(static_cast<std::uint32_t>(cb.params.min_perimeter));
  w.str(cb.basis_convention);
  w.u64(cb.params.seed);
  w.f64(cb.inertia);
  for (Eigen::Index d = 0; d < cb.dimension(); ++d) w.f64(cb.bounds.lower(d));
  for (Eigen::Index d = 0; d < cb.dimension(); ++d) w.f64(cb.bounds.upper(d));
  for (Eigen::Index r = 0; r < cb.size(); ++r)
    for (Eigen::Index d = 0; d < cb.dimension(); ++d) w.f64(cb.centroids(r, d));
  return w;
}

}  // namespace

std::uint64_t codebook_fingerprint(const Codebook& cb) {
  const Writer bytes = serialize(cb);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes.data()) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

void save_codebook(const std::filesystem::path& path, const Codebook& cb) {
  if (cb.bounds.dimension() != cb.dimension()) throw std::invalid_argument("codebook bounds do not match centroids");
  write_all(path, serialize(cb).data());
}

Codebook load_codebook(const std::filesystem::path& path) {
  Reader r(read_all(path), path.string());
  if (r.bytes(kCodebookMagic.size()) != kCodebookMagic) throw IoError(path.string() + ": not a codebook file");
  if (const auto v = r.u32(); v != kCodebookFormatVersion) {
    throw IoError(path.string() + ": unsupported codebook format version " + std::to_string(v));
  }
  Codebook cb;
  const Eigen::Index M = r.u32();
  const Eigen::Index D = r.u32();
  cb.params.m = static_cast<int>(r.u32());
  cb.params.w = static_cast<int>(r.u32());
  cb.params.epsilon = r.f64();
  const auto orientation = r.u8();
  if (orientation > 1) throw IoError(path.string() + ": bad pair orientation");
  cb.params.orientation = static_cast<PairOrientation>(orientation);
  cb.params.include_holes = r.u8() != 0;
  cb.params.invert = r.u8() != 0;
  cb.params.min_perimeter = static_cast<int>(r.u32());
  cb.basis_convention = r.str();
  cb.params.seed = r.u64();
  cb.inertia = r.f64();
  if (M < 2 || cb.params.m < 1 || cb.params.m > kMaxDepth || D != logsig_dimension(cb.params.m)) {
    throw IoError(path.string() + ": inconsistent codebook header");
  }
  cb.bounds.lower.resize(D);
  cb.bounds.upper.resize(D);
  for (Eigen::Index d = 0; d < D; ++d) cb.bounds.lower(d) = r.f64();
  for (Eigen::Index d = 0; d < D; ++d) cb.bounds.upper(d) = r.f64();
  cb.centroids.resize(M, D);
  for (Eigen::Index i = 0; i < M; ++i)
    for (Eigen::Index d = 0; d < D; ++d) cb.centroids(i, d) = r.f64();
  if (!r.at_end()) throw IoError(path.string() + ": trailing bytes after codebook");
  if (!cb.centroids.allFinite()) throw IoError(path.string() + ": non-finite centroid");
  return cb;
}

void save_feature_matrix(const std::filesystem::path& path, const StoredFeatureMatrix& stored) {
  const auto& values = stored.matrix.values;
  if (values.rows() != values.cols()) throw std::invalid_argument("feature matrix must be square");
  Writer w;
  w.bytes(kMatrixMagic);
  w.u32(kFeatureMatrixFormatVersion);
  w.u64(stored.fingerprint);
  w.u32(static_cast<std::uint32_t>(values.rows()));
  w.u64(stored.matrix.pair_count);
  w.str(stored.doc_id);
  w.str(stored.writer_id);
  w.str(stored.source);
  for (Eigen::Index i = 0; i < values.rows(); ++i)
    for (Eigen::Index j = 0; j < values.cols(); ++j) w.f64(values(i, j));
  write_all(path, w.data());
}

StoredFeatureMatrix load_feature_matrix(const std::filesystem::path& path,
                                        std::optional<std::uint64_t> expected_fingerprint) {
  Reader r(read_all(path), path.string());
  if (r.bytes(kMatrixMagic.size()) != kMatrixMagic) throw IoError(path.string() + ": not a feature matrix file");
  if (const auto v = r.u32(); v != kFeatureMatrixFormatVersion) {
    throw IoError(path.string() + ": unsupported feature matrix format version " + std::to_string(v));
  }
  StoredFeatureMatrix s;
  s.fingerprint = r.u64();
  if (expected_fingerprint && *expected_fingerprint != s.fingerprint) {
    std::ostringstream msg;
    msg << path.string() << ": feature matrix was computed under codebook " << std::hex << s.fingerprint
        << ", active codebook is " << *expected_fingerprint;
    throw DimensionMismatch(msg.str());
  }
  const Eigen::Index M = r.u32();
  s.matrix.pair_count = r.u64();
  s.doc_id = r.str();
  s.writer_id = r.str();
  s.source = r.str();
  s.matrix.values.resize(M, M);
  for (Eigen::Index i = 0; i < M; ++i)
    for (Eigen::Index j = 0; j < M; ++j) s.matrix.values(i, j) = r.f64();
  if (!r.at_end()) throw IoError(path.string() + ": trailing bytes after feature matrix");
  return s;
}

}  // namespace sigwriter
