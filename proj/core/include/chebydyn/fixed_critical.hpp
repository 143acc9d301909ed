#pragma once

#include <string_view>
#include <vector>

#include "chebydyn/rational_map.hpp"
#include "chebydyn/sphere.hpp"

namespace chebydyn {

enum class Stability { superattracting, attracting, parabolic, repelling };

inline constexpr double kSuperattractingTol = 1e-10;
inline constexpr double kParabolicTol = 1e-9;
// Discriminant magnitude below which two fixed or critical points merge.
inline constexpr double kMergeTol = 1e-12;
// Residual bound for accepting a point as fixed.
inline constexpr double kFixedResidualTol = 1e-9;

// m < 1e-10 superattracting; m < 1 - 1e-9 attracting; |m - 1| <= 1e-9
// parabolic; otherwise repelling.
Stability classify_multiplier(double modulus) noexcept;

std::string_view to_string(Stability s) noexcept;

enum class FixedPointLabel { zero, infinity, one, s1, s2 };

std::string_view to_string(FixedPointLabel l) noexcept;

struct FixedPointInfo {
  SpherePoint location;
  ChartPoint chart;  // normalized chart form; s1/s2 share one chart value
  Complex multiplier;
  int multiplicity = 1;
  Stability stability = Stability::repelling;
  FixedPointLabel label = FixedPointLabel::zero;
};

struct CriticalSet {
  // Always 0 and infinity first, then c1 and c2 when alpha != 1.
  std::vector<SpherePoint> points;
  // The free critical points c1, c2 in chart form (|c1| <= |c2|, c1 c2 = 1).
  // Empty in the alpha == 1 limit, where c1 -> 0 and c2 -> infinity.
  std::vector<ChartPoint> free_points;
  // Set for the alpha == 1 limit and whenever c1 and c2 merge.
  bool degenerate = false;
};

// z = 1 and the roots s1, s2 of z^2 + (3 - 2 alpha) z + 1 = 0, with merging:
// alpha = 1/2 gives z = -1 with multiplicity 2, alpha = 5/2 gives z = 1 with
// multiplicity 3.
std::vector<FixedPointInfo> strange_fixed_points(Complex alpha);

// 0, infinity and c1,2 = (3 - 4a + 2a^2 +- sqrt(-6a + 19a^2 - 16a^3 + 4a^4)) / (3(a - 1)).
CriticalSet critical_points(Complex alpha);

// Multiplier of a fixed point of the conjugated operator. Cross-checks the
// closed forms |(4a - 8)/(2a - 3)| at z = 1 and |6 - 2a| at s1, s2 and throws
// std::logic_error on disagreement. Throws NotAFixedPoint when the point is
// not fixed to 1e-9 (in its chart). At an unreduced common root of
// numerator and denominator the common factor is cancelled first.
Complex multiplier_at(Complex alpha, const SpherePoint& point);

// Full classification of 0, infinity, 1, s1, s2.
std::vector<FixedPointInfo> stability_report(Complex alpha);

}  // namespace chebydyn
