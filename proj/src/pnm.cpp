#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "scriptid/error.hpp"
#include "scriptid/raster.hpp"

namespace scriptid {

namespace {

using Kind = FormatError::Kind;

bool is_space(char ch) {
  return ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '\v' || ch == '\f';
}

// Cursor over the byte stream honoring the netpbm whitespace/comment rules.
class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  // Header integers must be present; anything else is a header error.
  long header_int(const char* what) {
    skip_space_and_comments();
    long value = 0;
    if (!read_digits(value)) {
      throw FormatError(Kind::MalformedHeader, std::string("missing or invalid ") + what);
    }
    return value;
  }

  // Payload integers: running out is truncation, junk is a payload error.
  long payload_int() {
    skip_space_and_comments();
    if (at_end()) throw FormatError(Kind::TruncatedPayload, "pixel data ends early");
    long value = 0;
    if (!read_digits(value)) throw FormatError(Kind::BadPayload, "non-numeric pixel value");
    return value;
  }

  // P1 allows cells without separating whitespace.
  bool payload_bit() {
    skip_space_and_comments();
    if (at_end()) throw FormatError(Kind::TruncatedPayload, "bitmap data ends early");
    const char ch = bytes_[pos_++];
    if (ch == '0') return false;
    if (ch == '1') return true;
    throw FormatError(Kind::BadPayload, "bitmap cell is neither 0 nor 1");
  }

  // Exactly one whitespace byte separates a raw header from its payload.
  void end_raw_header() {
    if (at_end() || !is_space(bytes_[pos_])) {
      throw FormatError(Kind::MalformedHeader, "header not terminated by whitespace");
    }
    ++pos_;
  }

  std::string_view rest() const { return bytes_.substr(pos_); }
  bool at_end() const { return pos_ >= bytes_.size(); }

 private:
  bool read_digits(long& value) {
    const std::size_t start = pos_;
    value = 0;
    while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > std::numeric_limits<int>::max()) return false;
      ++pos_;
    }
    return pos_ > start;
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

std::uint8_t scale_to_byte(long value, long maxval) {
  if (maxval == 255) return static_cast<std::uint8_t>(value);
  return static_cast<std::uint8_t>(std::lround(static_cast<double>(value) * 255.0 / maxval));
}

}  // namespace

Image decode_pnm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') {
    throw FormatError(Kind::MalformedHeader, "missing portable-map magic number");
  }
  const char magic = bytes[1];
  if (magic != '1' && magic != '2' && magic != '4' && magic != '5') {
    throw FormatError(Kind::MalformedHeader, std::string("unsupported magic P") + magic);
  }
  Reader in(bytes.substr(2));
  if (!in.at_end() && !is_space(in.rest().front()) && in.rest().front() != '#') {
    throw FormatError(Kind::MalformedHeader, "magic number not followed by whitespace");
  }
  const long width = in.header_int("width");
  const long height = in.header_int("height");
  if (width <= 0 || height <= 0) {
    throw FormatError(Kind::MalformedHeader, "dimensions must be positive");
  }
  const auto w = static_cast<int>(width);
  const auto h = static_cast<int>(height);

  if (magic == '1') {
    BinaryRaster img(w, h);
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) img.set(r, c, in.payload_bit());
    }
    return img;
  }
  if (magic == '4') {
    in.end_raw_header();
    const std::size_t row_bytes = (static_cast<std::size_t>(w) + 7) / 8;
    const std::string_view data = in.rest();
    if (data.size() < row_bytes * h) {
      throw FormatError(Kind::TruncatedPayload, "raw bitmap data ends early");
    }
    BinaryRaster img(w, h);
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) {
        const auto byte = static_cast<unsigned char>(data[r * row_bytes + c / 8]);
        img.set(r, c, (byte >> (7 - c % 8)) & 1U);
      }
    }
    return img;
  }

  const long maxval = in.header_int("maxval");
  if (maxval <= 0 || maxval > 65535) {
    throw FormatError(Kind::MalformedHeader, "maxval must be in 1..65535");
  }
  GrayRaster img(w, h);
  if (magic == '2') {
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) {
        const long v = in.payload_int();
        if (v > maxval) throw FormatError(Kind::BadPayload, "pixel value exceeds maxval");
        img.set(r, c, scale_to_byte(v, maxval));
      }
    }
    return img;
  }

  in.end_raw_header();
  const std::size_t sample_bytes = maxval < 256 ? 1 : 2;
  const std::string_view data = in.rest();
  if (data.size() < sample_bytes * w * h) {
    throw FormatError(Kind::TruncatedPayload, "raw graymap data ends early");
  }
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const std::size_t at = sample_bytes * (static_cast<std::size_t>(r) * w + c);
      long v = static_cast<unsigned char>(data[at]);
      if (sample_bytes == 2) v = (v << 8) | static_cast<unsigned char>(data[at + 1]);
      if (v > maxval) throw FormatError(Kind::BadPayload, "pixel value exceeds maxval");
      img.set(r, c, scale_to_byte(v, maxval));
    }
  }
  return img;
}

Image load(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
  if (file.bad()) throw IoError("read failed for " + path.string());
  return decode_pnm(bytes);
}

BinaryRaster load_binary(const std::filesystem::path& path, int threshold) {
  Image img = load(path);
  if (auto* gray = std::get_if<GrayRaster>(&img)) return binarize(*gray, threshold);
  return std::get<BinaryRaster>(std::move(img));
}

std::string encode_pnm(const BinaryRaster& img, PnmFormat format) {
  std::ostringstream out;
  const int w = img.width();
  const int h = img.height();
  if (format == PnmFormat::PlainBitmap) {
    out << "P1\n" << w << ' ' << h << '\n';
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) {
        // netpbm recommends lines of at most 70 characters.
        out << (img.ink(r, c) ? '1' : '0') << ((c + 1) % 35 == 0 || c + 1 == w ? '\n' : ' ');
      }
    }
    return out.str();
  }
  if (format != PnmFormat::RawBitmap) {
    throw std::invalid_argument("binary rasters encode as P1 or P4 only");
  }
  out << "P4\n" << w << ' ' << h << '\n';
  const std::size_t row_bytes = (static_cast<std::size_t>(w) + 7) / 8;
  std::string row(row_bytes, '\0');
  for (int r = 0; r < h; ++r) {
    std::fill(row.begin(), row.end(), '\0');
    for (int c = 0; c < w; ++c) {
      if (img.ink(r, c)) row[c / 8] = static_cast<char>(row[c / 8] | (0x80 >> (c % 8)));
    }
    out << row;
  }
  return out.str();
}

std::string encode_pnm(const GrayRaster& img, PnmFormat format) {
  std::ostringstream out;
  const int w = img.width();
  const int h = img.height();
  if (format == PnmFormat::PlainGraymap) {
    out << "P2\n" << w << ' ' << h << "\n255\n";
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) {
        out << static_cast<int>(img.at(r, c)) << ((c + 1) % 16 == 0 || c + 1 == w ? '\n' : ' ');
      }
    }
    return out.str();
  }
  if (format != PnmFormat::RawGraymap) {
    throw std::invalid_argument("gray rasters encode as P2 or P5 only");
  }
  out << "P5\n" << w << ' ' << h << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.cells().data()),
            static_cast<std::streamsize>(img.cells().size()));
  return out.str();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  file << bytes;
  if (!file) throw IoError("write failed for " + path.string());
}

}  // namespace

void save(const BinaryRaster& img, const std::filesystem::path& path, PnmFormat format) {
  write_file(path, encode_pnm(img, format));
}

void save(const GrayRaster& img, const std::filesystem::path& path, PnmFormat format) {
  write_file(path, encode_pnm(img, format));
}

}  // namespace scriptid
