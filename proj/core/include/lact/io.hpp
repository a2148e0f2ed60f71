#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lact/types.hpp"

namespace lact {

/// LACT1 container: magic "LACT", u8 version (1), u8 kind, u16 reserved (0),
/// u32 dim0 (width / n_det), u32 dim1 (height / n_angles), f64 spacing, then
/// float32 little-endian payload, row-major. Vector fields store the
/// horizontal plane followed by the vertical plane; complex grids store
/// interleaved (re, im) pairs.
enum class LactKind : std::uint8_t {
  Image = 0,
  Sinogram = 1,
  VectorField = 2,
  ComplexGrid = 3,
};

LactKind peek_lact_kind(const std::string& path);

void write_lact(const std::string& path, const Image& img);
void write_lact(const std::string& path, const Sinogram& sino);
void write_lact(const std::string& path, const VectorField& field);
void write_lact(const std::string& path, const ComplexGrid& grid);

Image read_lact_image(const std::string& path);
Sinogram read_lact_sinogram(const std::string& path);
VectorField read_lact_vector_field(const std::string& path);
ComplexGrid read_lact_complex_grid(const std::string& path);

/// 8-bit grayscale PNG with a linear display window [lo, hi] (values clamped).
void write_png(const std::string& path, const Image& img, double window_lo,
               double window_hi);

/// CSV with one header row; writes are atomic like all writers here
/// (temp file + rename).
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace lact
