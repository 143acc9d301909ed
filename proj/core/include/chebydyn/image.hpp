#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "chebydyn/render.hpp"

namespace chebydyn {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct Palette {
  std::map<std::uint8_t, Rgb> colors;
  // Darken every pixel by its iteration count; tags in `shaded_tags` are
  // shaded either way.
  bool shade_iterations = false;
  std::vector<std::uint8_t> shaded_tags;
  std::uint32_t shade_scale = 64;
};

// Distinct colours for the grid's legend: roots-only white, strange kinds
// warm, undecided dark grey with iteration shading.
Palette default_palette(const ClassificationGrid& grid);

// Row-major RGB triples. Throws UnmappedTag when a cell tag has no colour.
std::vector<std::uint8_t> to_rgb(const ClassificationGrid& grid, const Palette& palette);

// Binary P6 with header "P6\n<w> <h>\n255\n".
std::vector<std::uint8_t> encode_ppm(const ClassificationGrid& grid, const Palette& palette);

// 8-bit RGB PNG, no timestamps or text chunks, so bytes are reproducible.
std::vector<std::uint8_t> encode_png(const ClassificationGrid& grid, const Palette& palette);

}  // namespace chebydyn
