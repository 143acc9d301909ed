#pragma once

#include <string>
#include <string_view>

#include "chebydyn/orbit.hpp"
#include "chebydyn/sphere.hpp"

namespace chebydyn::tools {

inline constexpr long long kMaxPixels = 16LL * 1024 * 1024;
inline constexpr int kMaxIterLimit = 100000;

// "3", "3+0i", "2.5-0.1i", "-i", "1e-3+2e-1i". Throws std::invalid_argument.
Complex parse_complex(std::string_view text);

// Strict full-string number parsing; throws std::invalid_argument.
double parse_double(std::string_view text);
long long parse_int(std::string_view text);

// Default config with the given max_iter; the cycle transient shrinks to
// max_iter / 2 when max_iter <= 200.
IterationConfig iteration_for(int max_iter);

// {alpha, fixed_points, critical_points, critical_degenerate, cat_verdict, cycles}
std::string classify_json(Complex alpha, const IterationConfig& cfg);

// Default viewports, landmarks (head and body disks, antennas) and limits.
std::string meta_json();

}  // namespace chebydyn::tools
