#include "chebydyn/image.hpp"

#include <algorithm>
#include <csetjmp>
#include <string>

#include <png.h>

#include "chebydyn/errors.hpp"

namespace chebydyn {

namespace {

Rgb shade(Rgb c, std::uint32_t iterations, std::uint32_t scale) {
  // Brightness falls from 1 to 1/4 as iterations grow past `scale`.
  const double t = 1.0 - 0.75 * std::min(1.0, static_cast<double>(iterations) / std::max(1u, scale));
  const auto f = [t](std::uint8_t v) { return static_cast<std::uint8_t>(v * t + 0.5); };
  return {f(c.r), f(c.g), f(c.b)};
}

}  // namespace

Palette default_palette(const ClassificationGrid& grid) {
  Palette p;
  if (grid.spec.kind == PlaneKind::parameter) {
    p.colors = {{param_tag::roots_only, {255, 255, 255}},
                {param_tag::strange_fixed, {220, 60, 40}},
                {param_tag::strange_cycle, {240, 170, 30}},
                {param_tag::undecided, {70, 70, 90}}};
    p.shaded_tags = {param_tag::undecided};
    return p;
  }
  static constexpr Rgb cycle_colors[] = {{40, 160, 80},  {150, 60, 200}, {230, 120, 30},
                                         {30, 170, 190}, {200, 50, 120}, {120, 140, 30}};
  std::size_t next = 0;
  for (const auto& [tag, label] : grid.legend) {
    if (label == "0") {
      p.colors[tag] = {245, 245, 245};
    } else if (label == "inf") {
      p.colors[tag] = {40, 70, 160};
    } else if (tag == dyn_tag::undecided) {
      p.colors[tag] = {70, 70, 70};
      p.shaded_tags.push_back(tag);
    } else if (tag == dyn_tag::other_cycle) {
      p.colors[tag] = {255, 220, 0};
    } else {
      p.colors[tag] = cycle_colors[next++ % std::size(cycle_colors)];
    }
  }
  return p;
}

std::vector<std::uint8_t> to_rgb(const ClassificationGrid& grid, const Palette& palette) {
  std::vector<std::uint8_t> out;
  out.reserve(grid.cells.size() * 3);
  for (const Cell& c : grid.cells) {
    const auto it = palette.colors.find(c.tag);
    if (it == palette.colors.end()) throw UnmappedTag("no colour for tag " + std::to_string(c.tag));
    Rgb rgb = it->second;
    const bool shaded = palette.shade_iterations ||
                        std::find(palette.shaded_tags.begin(), palette.shaded_tags.end(), c.tag) !=
                            palette.shaded_tags.end();
    if (shaded) rgb = shade(rgb, c.iterations, palette.shade_scale);
    out.insert(out.end(), {rgb.r, rgb.g, rgb.b});
  }
  return out;
}

std::vector<std::uint8_t> encode_ppm(const ClassificationGrid& grid, const Palette& palette) {
  const std::vector<std::uint8_t> rgb = to_rgb(grid, palette);
  const std::string header = "P6\n" + std::to_string(grid.spec.width_px) + " " +
                             std::to_string(grid.spec.height_px) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), rgb.begin(), rgb.end());
  return out;
}

namespace {

void append_png(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

}  // namespace

std::vector<std::uint8_t> encode_png(const ClassificationGrid& grid, const Palette& palette) {
  const std::vector<std::uint8_t> rgb = to_rgb(grid, palette);
  const auto w = static_cast<png_uint_32>(grid.spec.width_px);
  const auto h = static_cast<png_uint_32>(grid.spec.height_px);

  std::vector<std::uint8_t> out;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) throw std::runtime_error("encode_png: png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    throw std::runtime_error("encode_png: png_create_info_struct failed");
  }
  std::vector<png_bytep> rows(h);
  for (png_uint_32 j = 0; j < h; ++j) {
    rows[j] = const_cast<png_bytep>(rgb.data() + static_cast<std::size_t>(j) * w * 3);
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("encode_png: libpng error");
  }
  png_set_write_fn(png, &out, append_png, nullptr);
  png_set_IHDR(png, info, w, h, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_set_compression_level(png, 6);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

}  // namespace chebydyn
