#include <sigwriter/image_io.hpp>

#include <sigwriter/errors.hpp>

#include <png.h>

#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

namespace sigwriter {

namespace {

std::vector<unsigned char> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open image: " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

GrayImage decode_png(const std::vector<unsigned char>& bytes, const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw IoError("invalid PNG " + path.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_GRAY;  // libpng converts color by luminance
  GrayImage img(image.height, image.width);
  if (!png_image_finish_read(&image, nullptr, img.data(), static_cast<png_int_32>(image.width), nullptr)) {
    png_image_free(&image);
    throw IoError("failed to decode PNG " + path.string() + ": " + image.message);
  }
  return img;
}

// Netpbm header tokenizer: skips whitespace and '#' comments.
class PnmReader {
 public:
  PnmReader(const std::vector<unsigned char>& bytes, const std::filesystem::path& path)
      : bytes_(bytes), path_(path) {}

  long next_int() {
    skip_space();
    long value = 0;
    bool any = false;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_++] - '0');
      any = true;
    }
    if (!any) fail("expected integer");
    return value;
  }

  void skip_single_space() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) fail("malformed header");
    ++pos_;
  }

  std::size_t pos() const { return pos_; }
  [[noreturn]] void fail(const std::string& what) const {
    throw IoError("invalid PNM " + path_.string() + ": " + what);
  }

 private:
  void skip_space() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<unsigned char>& bytes_;
  const std::filesystem::path& path_;
  std::size_t pos_ = 2;
};

GrayImage decode_pnm(const std::vector<unsigned char>& bytes, const std::filesystem::path& path) {
  const char kind = static_cast<char>(bytes[1]);
  const bool binary = kind == '5' || kind == '6';
  const int channels = (kind == '3' || kind == '6') ? 3 : 1;
  PnmReader reader(bytes, path);
  const long width = reader.next_int();
  const long height = reader.next_int();
  const long maxval = reader.next_int();
  if (width < 1 || height < 1 || maxval < 1 || maxval > 65535) reader.fail("bad dimensions or maxval");
  const int sample_bytes = maxval > 255 ? 2 : 1;

  GrayImage img(height, width);
  const std::size_t count = static_cast<std::size_t>(width) * height;
  std::size_t pos = 0;
  if (binary) {
    reader.skip_single_space();
    pos = reader.pos();
    if (bytes.size() < pos + count * channels * sample_bytes) reader.fail("truncated pixel data");
  }
  auto sample = [&]() -> long {
    if (!binary) return reader.next_int();
    long v = bytes[pos++];
    if (sample_bytes == 2) v = (v << 8) | bytes[pos++];
    return v;
  };
  for (std::size_t i = 0; i < count; ++i) {
    double lum = 0.0;
    if (channels == 1) {
      lum = static_cast<double>(sample());
    } else {
      const double r = sample(), g = sample(), b = sample();
      lum = 0.299 * r + 0.587 * g + 0.114 * b;
    }
    img(static_cast<Eigen::Index>(i)) = static_cast<std::uint8_t>(std::lround(lum * 255.0 / maxval));
  }
  return img;
}

}  // namespace

GrayImage read_image(const std::filesystem::path& path) {
  const auto bytes = slurp(path);
  if (bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0) return decode_png(bytes, path);
  if (bytes.size() >= 2 && bytes[0] == 'P' && std::strchr("2356", bytes[1]) != nullptr && bytes[1] != '\0') {
    return decode_pnm(bytes, path);
  }
  throw IoError("unsupported image format: " + path.string());
}

void write_pgm(const std::filesystem::path& path, const GrayImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write image: " + path.string());
  out << "P5\n" << img.cols() << ' ' << img.rows() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.data()), img.size());
  if (!out) throw IoError("write failed: " + path.string());
}

void write_png(const std::filesystem::path& path, const GrayImage& img) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.cols());
  image.height = static_cast<png_uint_32>(img.rows());
  image.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&image, path.string().c_str(), 0, img.data(), static_cast<png_int_32>(img.cols()),
                               nullptr)) {
    throw IoError("cannot write PNG " + path.string() + ": " + image.message);
  }
}

}  // namespace sigwriter
