#include "salsa/pgm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace salsa {

namespace {

// Next whitespace-delimited header token, skipping '#' comments.
std::string next_token(std::istream& in) {
  std::string token;
  char c = 0;
  while (in.get(c)) {
    if (c == '#') {
      std::string ignored;
      std::getline(in, ignored);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(c);
  }
  return token;
}

long parse_positive(const std::string& token, const std::filesystem::path& path) {
  try {
    std::size_t used = 0;
    const long v = std::stol(token, &used);
    if (used == token.size() && v > 0) return v;
  } catch (const std::exception&) {
  }
  throw std::runtime_error("read_pgm: malformed header in " + path.string());
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

Image read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_pgm: cannot open " + path.string());
  if (next_token(in) != "P5") throw std::runtime_error("read_pgm: not a binary PGM: " + path.string());
  const long width = parse_positive(next_token(in), path);
  const long height = parse_positive(next_token(in), path);
  const long maxval = parse_positive(next_token(in), path);
  if (maxval > 65535) throw std::runtime_error("read_pgm: maxval out of range in " + path.string());

  const bool wide = maxval > 255;
  const std::size_t count = static_cast<std::size_t>(width) * height;
  std::vector<unsigned char> bytes(count * (wide ? 2 : 1));
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (static_cast<std::size_t>(in.gcount()) != bytes.size()) {
    throw std::runtime_error("read_pgm: truncated pixel data in " + path.string());
  }

  Image image(height, width);
  for (std::size_t i = 0; i < count; ++i) {
    const unsigned v = wide ? (unsigned{bytes[2 * i]} << 8) | bytes[2 * i + 1] : bytes[i];
    image.data()[static_cast<Index>(i)] = static_cast<double>(v);
  }
  return image;
}

void write_pgm8(const std::filesystem::path& path, const Image& image) {
  auto out = open_out(path);
  out << "P5\n" << image.width() << ' ' << image.height() << "\n255\n";
  std::vector<unsigned char> bytes(static_cast<std::size_t>(image.size()));
  for (Index i = 0; i < image.size(); ++i) {
    bytes[static_cast<std::size_t>(i)] =
        static_cast<unsigned char>(std::clamp(std::lround(image.data()[i]), 0L, 255L));
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::filesystem::path range_sidecar_path(const std::filesystem::path& pgm_path) {
  return pgm_path.string() + ".range";
}

PgmRange write_pgm16(const std::filesystem::path& path, const Image& image) {
  if (!all_finite(image)) throw std::invalid_argument("write_pgm16: image has non-finite entries");
  const PgmRange range{image.data().minCoeff(), image.data().maxCoeff()};
  const double span = range.max - range.min;

  auto out = open_out(path);
  out << "P5\n" << image.width() << ' ' << image.height() << "\n65535\n";
  std::vector<unsigned char> bytes(static_cast<std::size_t>(image.size()) * 2);
  for (Index i = 0; i < image.size(); ++i) {
    const double t = span > 0 ? (image.data()[i] - range.min) / span : 0.0;
    const auto q = static_cast<std::uint16_t>(std::clamp(std::lround(t * 65535.0), 0L, 65535L));
    bytes[2 * static_cast<std::size_t>(i)] = static_cast<unsigned char>(q >> 8);
    bytes[2 * static_cast<std::size_t>(i) + 1] = static_cast<unsigned char>(q & 0xff);
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));

  auto meta = open_out(range_sidecar_path(path));
  meta << std::setprecision(std::numeric_limits<double>::max_digits10) << range.min << '\n' << range.max << '\n';
  return range;
}

Image read_pgm16_scaled(const std::filesystem::path& path) {
  Image raw = read_pgm(path);
  std::ifstream meta(range_sidecar_path(path));
  PgmRange range;
  if (!(meta >> range.min >> range.max)) {
    throw std::runtime_error("read_pgm16_scaled: missing or malformed range sidecar for " + path.string());
  }
  raw.data() = range.min + raw.data().array() * ((range.max - range.min) / 65535.0);
  return raw;
}

void write_f64(const std::filesystem::path& path, const Image& image) {
  static_assert(std::endian::native == std::endian::little, "f64 dumps assume a little-endian host");
  auto out = open_out(path);
  out.write(reinterpret_cast<const char*>(image.data().data()),
            static_cast<std::streamsize>(image.size() * sizeof(double)));
}

Image read_f64(const std::filesystem::path& path, Index height, Index width) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_f64: cannot open " + path.string());
  Image image(height, width);
  in.read(reinterpret_cast<char*>(image.data().data()), static_cast<std::streamsize>(image.size() * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(image.size() * sizeof(double))) {
    throw std::runtime_error("read_f64: size mismatch in " + path.string());
  }
  return image;
}

}  // namespace salsa
