#pragma once

#include <array>
#include <string>
#include <vector>

#include "chebydyn/orbit.hpp"
#include "chebydyn/sphere.hpp"

namespace chebydyn {

// Head disk |alpha - 13/6| < 1/3 (z = 1 attracting) and body disk
// |alpha - 3| < 1/2 (s1, s2 attracting).
inline constexpr double kHeadCenter = 13.0 / 6.0;
inline constexpr double kHeadRadius = 1.0 / 3.0;
inline constexpr double kBodyCenter = 3.0;
inline constexpr double kBodyRadius = 0.5;

enum class Verdict { roots_only, strange, undecided };
enum class StrangeKind { fixed_point, cycle };

std::string_view to_string(Verdict v) noexcept;

// Critical-orbit proxy for cat-set membership. A verdict of strange always
// has at least one critical orbit with a decided fate outside {0, inf}.
struct CatVerdict {
  Complex alpha;
  Verdict verdict = Verdict::undecided;
  StrangeKind strange_kind = StrangeKind::fixed_point;  // meaningful when strange
  int period = 0;                                      // cycle period when strange/cycle
  std::array<OrbitFate, 2> evidence;

  std::string describe() const;  // "roots_only", "strange(fixed-point)", "strange(cycle 2)", ...
};

CatVerdict cat_membership(Complex alpha, const IterationConfig& cfg);

enum class BoundaryRegion { head, body };

struct BoundaryPoint {
  Complex alpha;
  Complex multiplier;  // O_p'(1) on the head, O_p'(s1) on the body
};

// head: alpha = 13/6 + e^{i theta} / 3; body: alpha = 3 + e^{i theta} / 2.
BoundaryPoint boundary_point(BoundaryRegion region, double theta);

struct AntennaReport {
  double alpha = 0.0;
  double critical_modulus = 0.0;  // |c1|
  double pole_modulus = 0.0;      // |1 / (2 (alpha - 1))|
  std::array<OrbitFate, 2> fates;

  double critical_deviation() const noexcept { return std::abs(critical_modulus - 1.0); }
};

// Real alpha on the left antenna [0, 1/2) or on (3/2, 2); throws
// OutOfAntennaRange otherwise.
AntennaReport antenna_check(double alpha, const IterationConfig& cfg);

struct VerificationRow {
  std::string name;
  std::string expected;
  std::string observed;
  double residual = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::vector<VerificationRow> rows;

  std::size_t failures() const noexcept;
  bool all_passed() const noexcept { return failures() == 0; }
};

// Evaluates the closed-form special cases of the family; failures are rows
// with pass == false, never exceptions.
VerificationReport verify_special_cases();

// [{case, expected, observed, residual, pass}, ...]
std::string report_to_json(const VerificationReport& report);

}  // namespace chebydyn
