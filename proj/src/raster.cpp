#include "darkfield/raster.hpp"

#include <png.h>

#include <array>
#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

#include "darkfield/errors.hpp"

namespace darkfield {

namespace {

constexpr std::array<unsigned char, 8> kPngSignature = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

class PgmHeaderReader {
 public:
  PgmHeaderReader(const std::vector<unsigned char>& bytes, const std::string& name)
      : bytes_(bytes), name_(name) {}

  std::size_t next_number() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) fail("malformed PGM header");
    std::size_t value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + static_cast<std::size_t>(bytes_[pos_++] - '0');
      if (value > (1u << 30)) fail("PGM header value out of range");
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t data_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) fail("malformed PGM header");
    return pos_ + 1;
  }

  [[noreturn]] void fail(const std::string& what) const { throw RasterError(name_ + ": " + what); }

 private:
  void skip_space_and_comments() {
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
  const std::string& name_;
  std::size_t pos_ = 2;
};

Raster decode_pgm(const std::vector<unsigned char>& bytes, const std::string& name) {
  PgmHeaderReader header(bytes, name);
  Raster r;
  r.width = header.next_number();
  r.height = header.next_number();
  const std::size_t maxval = header.next_number();
  if (r.width == 0 || r.height == 0) header.fail("zero-sized PGM");
  if (maxval == 0 || maxval > 65535) header.fail("PGM maxval must be in [1, 65535]");
  r.maxval = static_cast<std::uint32_t>(maxval);

  const std::size_t offset = header.data_offset();
  const std::size_t sample_bytes = maxval < 256 ? 1 : 2;
  const std::size_t count = r.width * r.height;
  if (bytes.size() < offset + count * sample_bytes) header.fail("truncated PGM data");

  r.pixels.resize(count);
  const unsigned char* p = bytes.data() + offset;
  for (std::size_t i = 0; i < count; ++i) {
    r.pixels[i] = sample_bytes == 1
                      ? p[i]
                      : static_cast<std::uint16_t>((p[2 * i] << 8) | p[2 * i + 1]);
    if (r.pixels[i] > maxval) header.fail("PGM sample exceeds maxval");
  }
  return r;
}

Raster decode_png(const std::vector<unsigned char>& bytes, const std::string& name) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw RasterError(name + ": " + image.message);
  }
  const bool wide = (image.format & PNG_FORMAT_FLAG_LINEAR) != 0;
  image.format = wide ? PNG_FORMAT_LINEAR_Y : PNG_FORMAT_GRAY;

  Raster r;
  r.width = image.width;
  r.height = image.height;
  r.maxval = wide ? 65535 : 255;
  r.pixels.resize(r.width * r.height);

  bool ok;
  if (wide) {
    ok = png_image_finish_read(&image, nullptr, r.pixels.data(), 0, nullptr);
  } else {
    std::vector<png_byte> narrow(r.pixels.size());
    ok = png_image_finish_read(&image, nullptr, narrow.data(), 0, nullptr);
    std::copy(narrow.begin(), narrow.end(), r.pixels.begin());
  }
  if (!ok) {
    std::string msg = image.message;
    png_image_free(&image);
    throw RasterError(name + ": " + msg);
  }
  return r;
}

}  // namespace

Raster read_raster(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RasterError("cannot open raster " + path.string());
  std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in), {}};

  const std::string name = path.string();
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') return decode_pgm(bytes, name);
  if (bytes.size() >= kPngSignature.size() &&
      std::equal(kPngSignature.begin(), kPngSignature.end(), bytes.begin())) {
    return decode_png(bytes, name);
  }
  throw RasterError(name + ": unrecognized raster format (expected binary PGM or PNG)");
}

void write_pgm16(const std::filesystem::path& path, std::size_t width, std::size_t height,
                 const std::vector<std::uint16_t>& pixels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "P5\n" << width << ' ' << height << "\n65535\n";
  std::vector<char> payload(pixels.size() * 2);
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    payload[2 * i] = static_cast<char>(pixels[i] >> 8);
    payload[2 * i + 1] = static_cast<char>(pixels[i] & 0xFF);
  }
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace darkfield
