#include "chebydyn/sphere.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace chebydyn {

SpherePoint::SpherePoint(Complex z) : z_(z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::invalid_argument("SpherePoint: non-finite component; use SpherePoint::infinity()");
  }
}

SpherePoint SpherePoint::infinity() noexcept {
  SpherePoint p;
  p.infinite_ = true;
  return p;
}

Complex SpherePoint::value() const {
  if (infinite_) throw std::logic_error("SpherePoint::value() called on infinity");
  return z_;
}

std::ostream& operator<<(std::ostream& os, const SpherePoint& p) {
  if (p.is_infinity()) return os << "inf";
  const Complex z = p.value();
  return os << z.real() << (std::signbit(z.imag()) ? "-" : "+") << std::abs(z.imag()) << "i";
}

ChartPoint to_chart(const SpherePoint& p) {
  if (p.is_infinity()) return {Complex{0.0, 0.0}, true};
  const Complex z = p.value();
  if (std::abs(z) <= 1.0) return {z, false};
  return {1.0 / z, true};
}

SpherePoint from_chart(const ChartPoint& c) {
  if (!c.inverted) return SpherePoint(c.value);
  if (c.value == Complex{0.0, 0.0}) return SpherePoint::infinity();
  const Complex z = 1.0 / c.value;
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return SpherePoint::infinity();
  return SpherePoint(z);
}

double chart_distance(const ChartPoint& p, const ChartPoint& ref) {
  if (p.inverted == ref.inverted) return std::abs(p.value - ref.value);
  if (p.value == Complex{0.0, 0.0}) return std::numeric_limits<double>::infinity();
  return std::abs(1.0 / p.value - ref.value);
}

double sphere_distance(const SpherePoint& a, const SpherePoint& b) {
  // Work in normalized chart values so nothing overflows:
  //   both finite:  |z - w| / sqrt((1+|z|^2)(1+|w|^2))
  //   z = 1/u:      |1 - u w| / sqrt((1+|u|^2)(1+|w|^2))
  //   both 1/u,1/v: |v - u| / sqrt((1+|u|^2)(1+|v|^2))
  const ChartPoint ca = to_chart(a);
  const ChartPoint cb = to_chart(b);
  const double na = 1.0 + std::norm(ca.value);
  const double nb = 1.0 + std::norm(cb.value);
  double num = 0.0;
  if (ca.inverted == cb.inverted) {
    num = std::abs(ca.value - cb.value);
  } else {
    num = std::abs(1.0 - ca.value * cb.value);
  }
  return num / std::sqrt(na * nb);
}

}  // namespace chebydyn
