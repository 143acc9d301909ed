#pragma once

#include <complex>
#include <iosfwd>

namespace chebydyn {

using Complex = std::complex<double>;

// A point of the extended complex plane. Infinity is an explicit tag and is
// never encoded as a large or non-finite float.
class SpherePoint {
 public:
  SpherePoint() = default;
  SpherePoint(Complex z);  // NOLINT: implicit, finite points read naturally

  static SpherePoint infinity() noexcept;

  bool is_infinity() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }

  // Throws std::logic_error when called on infinity.
  Complex value() const;

  friend bool operator==(const SpherePoint& a, const SpherePoint& b) noexcept {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.z_ == b.z_);
  }

 private:
  Complex z_{};
  bool infinite_ = false;
};

std::ostream& operator<<(std::ostream& os, const SpherePoint& p);

// A sphere point expressed in one of the two standard charts: the identity
// chart (inverted == false, point = value) or the reciprocal chart
// (inverted == true, point = 1 / value). Normalized chart points keep
// |value| <= 1, so infinity is {0, true} and no component ever overflows.
struct ChartPoint {
  Complex value{};
  bool inverted = false;

  ChartPoint flipped() const noexcept { return {value, !inverted}; }
};

ChartPoint to_chart(const SpherePoint& p);
SpherePoint from_chart(const ChartPoint& c);

// Distance from p to ref measured in ref's chart. When p lies on the other
// side, it is transported into ref's chart first (infinite if p is the
// chart's point at infinity).
double chart_distance(const ChartPoint& p, const ChartPoint& ref);

// Chordal distance on the Riemann sphere, halved so it agrees with |z - w|
// to first order near the origin.
double sphere_distance(const SpherePoint& a, const SpherePoint& b);

}  // namespace chebydyn
