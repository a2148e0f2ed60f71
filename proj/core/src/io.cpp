#include "lact/io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace lact {

namespace {

constexpr char kMagic[4] = {'L', 'A', 'C', 'T'};
constexpr std::uint8_t kVersion = 1;

#pragma pack(push, 1)
struct Header {
  char magic[4];
  std::uint8_t version;
  std::uint8_t kind;
  std::uint16_t reserved;
  std::uint32_t dim0;  // width / n_det
  std::uint32_t dim1;  // height / n_angles
  double spacing;
};
#pragma pack(pop)
static_assert(sizeof(Header) == 24);

// All writers stage into a sibling temp file and rename, so readers never
// observe partial output.
class AtomicFile {
public:
  explicit AtomicFile(const std::string& path)
      : final_(path), tmp_(path + ".tmp"), out_(tmp_, std::ios::binary | std::ios::trunc) {
    if (!out_) throw IoFailure("cannot open " + tmp_ + " for writing");
  }

  std::ofstream& stream() { return out_; }

  void commit() {
    out_.flush();
    if (!out_) throw IoFailure("write failed for " + tmp_);
    out_.close();
    std::error_code ec;
    std::filesystem::rename(tmp_, final_, ec);
    if (ec) throw IoFailure("rename to " + final_ + " failed: " + ec.message());
    committed_ = true;
  }

  ~AtomicFile() {
    if (!committed_) {
      std::error_code ec;
      std::filesystem::remove(tmp_, ec);
    }
  }

private:
  std::string final_, tmp_;
  std::ofstream out_;
  bool committed_ = false;
};

void write_payload(const std::string& path, LactKind kind, std::uint32_t dim0,
                   std::uint32_t dim1, double spacing, const std::vector<float>& payload) {
  Header h{};
  std::memcpy(h.magic, kMagic, 4);
  h.version = kVersion;
  h.kind = static_cast<std::uint8_t>(kind);
  h.reserved = 0;
  h.dim0 = dim0;
  h.dim1 = dim1;
  h.spacing = spacing;

  AtomicFile file(path);
  file.stream().write(reinterpret_cast<const char*>(&h), sizeof(h));
  file.stream().write(reinterpret_cast<const char*>(payload.data()),
                      static_cast<std::streamsize>(payload.size() * sizeof(float)));
  file.commit();
}

Header read_header(std::ifstream& in, const std::string& path) {
  Header h{};
  in.read(reinterpret_cast<char*>(&h), sizeof(h));
  if (in.gcount() != sizeof(h)) throw TruncatedPayload("header truncated in " + path);
  if (std::memcmp(h.magic, kMagic, 4) != 0) throw BadMagic("not a LACT1 file: " + path);
  if (h.version != kVersion)
    throw UnsupportedVersion("version " + std::to_string(h.version) + " in " + path);
  if (h.kind > 3) throw KindMismatch("unknown payload kind in " + path);
  if (h.dim0 == 0 || h.dim1 == 0) throw TruncatedPayload("empty dims in " + path);
  return h;
}

std::vector<float> read_payload(std::ifstream& in, const std::string& path,
                                std::size_t count) {
  std::vector<float> payload(count);
  in.read(reinterpret_cast<char*>(payload.data()),
          static_cast<std::streamsize>(count * sizeof(float)));
  if (in.gcount() != static_cast<std::streamsize>(count * sizeof(float)))
    throw TruncatedPayload("payload truncated in " + path);
  return payload;
}

Header open_and_check(std::ifstream& in, const std::string& path, LactKind expected) {
  if (!in) throw IoFailure("cannot open " + path);
  const Header h = read_header(in, path);
  if (h.kind != static_cast<std::uint8_t>(expected))
    throw KindMismatch("expected kind " + std::to_string(static_cast<int>(expected)) +
                       ", found " + std::to_string(h.kind) + " in " + path);
  return h;
}

}  // namespace

LactKind peek_lact_kind(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path);
  return static_cast<LactKind>(read_header(in, path).kind);
}

void write_lact(const std::string& path, const Image& img) {
  std::vector<float> payload(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) payload[i] = static_cast<float>(img.data[i]);
  write_payload(path, LactKind::Image, img.width, img.height, img.pixel_size, payload);
}

void write_lact(const std::string& path, const Sinogram& sino) {
  std::vector<float> payload(sino.size());
  for (std::size_t i = 0; i < sino.size(); ++i) payload[i] = static_cast<float>(sino.data[i]);
  write_payload(path, LactKind::Sinogram, sino.n_det, sino.n_angles, sino.det_spacing,
                payload);
}

void write_lact(const std::string& path, const VectorField& field) {
  std::vector<float> payload(2 * field.size());
  for (std::size_t i = 0; i < field.size(); ++i) payload[i] = static_cast<float>(field.dx[i]);
  for (std::size_t i = 0; i < field.size(); ++i)
    payload[field.size() + i] = static_cast<float>(field.dy[i]);
  write_payload(path, LactKind::VectorField, field.width, field.height, 1.0, payload);
}

void write_lact(const std::string& path, const ComplexGrid& grid) {
  std::vector<float> payload(2 * grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    payload[2 * i] = static_cast<float>(grid.data[i].real());
    payload[2 * i + 1] = static_cast<float>(grid.data[i].imag());
  }
  write_payload(path, LactKind::ComplexGrid, grid.width, grid.height, 1.0, payload);
}

Image read_lact_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  const Header h = open_and_check(in, path, LactKind::Image);
  Image img(static_cast<int>(h.dim0), static_cast<int>(h.dim1), h.spacing);
  const auto payload = read_payload(in, path, img.size());
  for (std::size_t i = 0; i < img.size(); ++i) img.data[i] = payload[i];
  return img;
}

Sinogram read_lact_sinogram(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  const Header h = open_and_check(in, path, LactKind::Sinogram);
  Sinogram sino(static_cast<int>(h.dim1), static_cast<int>(h.dim0), h.spacing);
  const auto payload = read_payload(in, path, sino.size());
  for (std::size_t i = 0; i < sino.size(); ++i) sino.data[i] = payload[i];
  return sino;
}

VectorField read_lact_vector_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  const Header h = open_and_check(in, path, LactKind::VectorField);
  VectorField f(static_cast<int>(h.dim0), static_cast<int>(h.dim1));
  const auto payload = read_payload(in, path, 2 * f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    f.dx[i] = payload[i];
    f.dy[i] = payload[f.size() + i];
  }
  return f;
}

ComplexGrid read_lact_complex_grid(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  const Header h = open_and_check(in, path, LactKind::ComplexGrid);
  ComplexGrid g(static_cast<int>(h.dim0), static_cast<int>(h.dim1));
  const auto payload = read_payload(in, path, 2 * g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    g.data[i] = {static_cast<double>(payload[2 * i]), static_cast<double>(payload[2 * i + 1])};
  return g;
}

void write_png(const std::string& path, const Image& img, double window_lo,
               double window_hi) {
  if (img.width < 1 || img.height < 1) throw IoFailure("cannot render an empty image");
  if (!(window_hi > window_lo)) throw InvalidConfig("io", "display window must be increasing");

  std::vector<png_byte> bytes(img.size());
  const double scale = 255.0 / (window_hi - window_lo);
  for (std::size_t i = 0; i < img.size(); ++i) {
    double v = (img.data[i] - window_lo) * scale;
    v = std::clamp(v, 0.0, 255.0);
    bytes[i] = static_cast<png_byte>(std::lround(v));
  }

  const std::string tmp = path + ".tmp";
  FILE* fp = std::fopen(tmp.c_str(), "wb");
  if (!fp) throw IoFailure("cannot open " + tmp + " for writing");

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    std::fclose(fp);
    std::filesystem::remove(tmp);
    throw IoFailure("png encoding failed for " + path);
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, img.width, img.height, 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int row = 0; row < img.height; ++row)
    png_write_row(png, bytes.data() + static_cast<std::size_t>(row) * img.width);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);

  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoFailure("rename to " + path + " failed: " + ec.message());
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ostringstream body;
  for (std::size_t i = 0; i < header.size(); ++i)
    body << header[i] << (i + 1 < header.size() ? "," : "");
  body << "\n";
  body.precision(17);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      body << row[i] << (i + 1 < row.size() ? "," : "");
    body << "\n";
  }
  write_text_atomic(path, body.str());
}

void write_text_atomic(const std::string& path, const std::string& content) {
  AtomicFile file(path);
  file.stream() << content;
  file.commit();
}

}  // namespace lact
