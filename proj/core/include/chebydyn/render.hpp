#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "chebydyn/fixed_critical.hpp"
#include "chebydyn/orbit.hpp"
#include "chebydyn/sphere.hpp"

namespace chebydyn {

enum class PlaneKind { parameter, dynamical };

// Viewport plus raster size. Pixel (i, j) samples its centre; row 0 is at
// the maximum imaginary part.
struct PlaneSpec {
  Complex center{};
  double half_width = 1.0;
  double half_height = 1.0;
  int width_px = 1;
  int height_px = 1;
  PlaneKind kind = PlaneKind::parameter;
  Complex alpha{};  // dynamical planes only
  IterationConfig iteration{};

  void validate() const;

  // Sub-pixel offsets (du, dv) in pixel units, (0, 0) being the centre.
  Complex pixel_to_point(int i, int j, double du = 0.0, double dv = 0.0) const;
};

// [-0.5, 4.5] x [-2, 2]: head, body, both antennas and the necklace.
PlaneSpec default_parameter_plane(int width_px = 600, int height_px = 480);
// [-3, 3]^2 around the origin.
PlaneSpec default_dynamical_plane(Complex alpha, int width_px = 400, int height_px = 400);

struct Cell {
  std::uint8_t tag = 0;
  std::uint32_t iterations = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

// Parameter-plane tags.
namespace param_tag {
inline constexpr std::uint8_t roots_only = 0;
inline constexpr std::uint8_t strange_fixed = 1;
inline constexpr std::uint8_t strange_cycle = 2;
inline constexpr std::uint8_t undecided = 3;
}  // namespace param_tag

// Dynamical-plane tags: attractor indices 0..n-1, plus these two.
namespace dyn_tag {
inline constexpr std::uint8_t other_cycle = 254;
inline constexpr std::uint8_t undecided = 255;
}  // namespace dyn_tag

struct ClassificationGrid {
  PlaneSpec spec;
  std::vector<Cell> cells;  // row-major, width_px * height_px
  std::map<std::uint8_t, std::string> legend;

  const Cell& at(int i, int j) const { return cells[static_cast<std::size_t>(j) * spec.width_px + i]; }
  // Pixel count per legend label (labels with zero pixels included).
  std::map<std::string, std::size_t> stats() const;
};

struct RenderOptions {
  unsigned threads = 0;  // 0: hardware concurrency
  bool supersample = false;  // 2x2 samples per pixel, majority tag
};

// Worker count after applying the CHEBYDYN_THREADS cap, if set.
unsigned resolve_threads(unsigned requested);

// Per pixel: the fate of the pixel's point against find_attractors(alpha).
ClassificationGrid render_dynamical_plane(const PlaneSpec& spec, const RenderOptions& opts = {});

// Per pixel alpha: both free critical orbits. roots-only when both reach 0 or
// infinity, strange when either reaches a strange fixed point or a cycle,
// undecided otherwise. Iterations are the larger of the two orbit counts.
ClassificationGrid render_parameter_plane(const PlaneSpec& spec, const RenderOptions& opts = {});

// Parameter-plane classification of a single alpha (one pixel's work).
Cell classify_parameter(Complex alpha, const IterationConfig& cfg);

bool is_strange_tag(std::uint8_t tag) noexcept;

// {spec, legend, cells: run-length encoded tags and iterations, stats}.
std::string grid_to_json(const ClassificationGrid& grid, bool include_cells = true);
ClassificationGrid grid_from_json(std::string_view json);

struct TrackSample {
  SpherePoint location;
  double multiplier_modulus = 0.0;
  Stability stability = Stability::repelling;
};

struct AlphaWindow {
  double lo = 0.0;
  double hi = 0.0;
};

struct BifurcationData {
  std::vector<double> alphas;
  std::vector<TrackSample> zero, one, s1, s2;
  std::vector<SpherePoint> c1, c2;
  // Maximal runs of attracting / superattracting samples. Endpoints sit
  // halfway between the last sample outside and the first inside.
  std::vector<AlphaWindow> one_windows;
  std::vector<AlphaWindow> s_windows;
};

BifurcationData bifurcation_scan(double alpha_min, double alpha_max, double step);

std::string bifurcation_to_csv(const BifurcationData& data);

}  // namespace chebydyn
