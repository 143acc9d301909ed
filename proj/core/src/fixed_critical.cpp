#include "chebydyn/fixed_critical.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "chebydyn/errors.hpp"

namespace chebydyn {

Stability classify_multiplier(double modulus) noexcept {
  if (modulus < kSuperattractingTol) return Stability::superattracting;
  if (std::abs(modulus - 1.0) <= kParabolicTol) return Stability::parabolic;
  if (modulus < 1.0) return Stability::attracting;
  return Stability::repelling;
}

std::string_view to_string(Stability s) noexcept {
  switch (s) {
    case Stability::superattracting: return "superattracting";
    case Stability::attracting: return "attracting";
    case Stability::parabolic: return "parabolic";
    case Stability::repelling: return "repelling";
  }
  return "?";
}

std::string_view to_string(FixedPointLabel l) noexcept {
  switch (l) {
    case FixedPointLabel::zero: return "0";
    case FixedPointLabel::infinity: return "inf";
    case FixedPointLabel::one: return "1";
    case FixedPointLabel::s1: return "s1";
    case FixedPointLabel::s2: return "s2";
  }
  return "?";
}

namespace {

// Given one root of a palindromic quadratic (roots r and 1/r), the chart
// value w with |w| <= 1 so that the roots are {w, 1/w}.
Complex reciprocal_chart_value(Complex root) {
  return std::abs(root) <= 1.0 ? root : 1.0 / root;
}

// Root of z^2 + b z + 1 = 0 picked without cancellation.
Complex stable_palindromic_root(Complex b) {
  const Complex sq = std::sqrt(b * b - 4.0);
  const Complex plus = b + sq;
  const Complex minus = b - sq;
  const Complex q = std::abs(plus) >= std::abs(minus) ? plus : minus;
  return -0.5 * q;
}

struct MultiplierResult {
  Complex value;
  bool removable = false;
};

// Evaluates image and multiplier of a candidate fixed point, cancelling an
// unreduced common root at the point when necessary.
MultiplierResult chart_multiplier(const RationalMap& map, const ChartPoint& p,
                                  bool require_fixed) {
  ChartPoint image;
  const RationalMap* local = &map;
  std::optional<RationalMap> reduced;
  try {
    image = eval_chart(map, p);
  } catch (const IndeterminateValue&) {
    if (p.inverted) throw;
    reduced.emplace(cancel_common_root(map, p.value));
    local = &*reduced;
    image = eval_chart(*reduced, p);
  }
  if (require_fixed && chart_distance(image, p) >= kFixedResidualTol) {
    throw NotAFixedPoint("multiplier_at: point is not fixed");
  }
  return {chart_derivative(*local, p, p.inverted), reduced.has_value()};
}

void check_closed_form(double observed, double expected, const char* what) {
  if (std::abs(observed - expected) > 1e-9 * std::max(1.0, expected)) {
    throw std::logic_error(std::string("multiplier_at: closed form mismatch at ") + what);
  }
}

FixedPointInfo make_info(const ChartPoint& chart, Complex multiplier, int multiplicity,
                         FixedPointLabel label) {
  FixedPointInfo info;
  info.chart = chart;
  info.location = from_chart(chart);
  info.multiplier = multiplier;
  info.multiplicity = multiplicity;
  info.stability = classify_multiplier(std::abs(multiplier));
  info.label = label;
  return info;
}

}  // namespace

Complex multiplier_at(Complex alpha, const SpherePoint& point) {
  const RationalMap map = build_operator(alpha);
  const ChartPoint cp = to_chart(point);
  const MultiplierResult m = chart_multiplier(map, cp, true);
  if (m.removable || point.is_infinity()) return m.value;

  const Complex z = point.value();
  const double modulus = std::abs(m.value);
  if (std::abs(z - 1.0) < kFixedResidualTol && std::abs(alpha - 1.5) > kMergeTol) {
    check_closed_form(modulus, std::abs((4.0 * alpha - 8.0) / (2.0 * alpha - 3.0)), "z = 1");
  }
  // s1 and s2 are roots of the palindromic w^2 + (3 - 2a) w + 1 in either chart.
  const Complex w = cp.value;
  if (std::abs(w * w + (3.0 - 2.0 * alpha) * w + 1.0) < kFixedResidualTol) {
    check_closed_form(modulus, std::abs(6.0 - 2.0 * alpha), "s_i");
  }
  return m.value;
}

std::vector<FixedPointInfo> strange_fixed_points(Complex alpha) {
  const RationalMap map = build_operator(alpha);
  const ChartPoint one_chart{Complex{1.0, 0.0}, false};

  Complex one_multiplier;
  if (std::abs(alpha - 1.5) <= kMergeTol) {
    // z = 1 is a common root of N and D here; only the derivative of the
    // reduced map is reported.
    one_multiplier = chart_multiplier(map, one_chart, false).value;
  } else {
    one_multiplier = multiplier_at(alpha, SpherePoint(Complex{1.0, 0.0}));
  }

  const Complex discriminant = (2.0 * alpha - 1.0) * (2.0 * alpha - 5.0);
  std::vector<FixedPointInfo> out;
  if (std::abs(discriminant) < kMergeTol) {
    const Complex s = alpha - 1.5;
    if (std::abs(s - 1.0) < 0.5) {
      out.push_back(make_info(one_chart, one_multiplier, 3, FixedPointLabel::one));
      return out;
    }
    out.push_back(make_info(one_chart, one_multiplier, 1, FixedPointLabel::one));
    const ChartPoint sc{s, false};
    out.push_back(make_info(sc, chart_multiplier(map, sc, true).value, 2, FixedPointLabel::s1));
    return out;
  }

  out.push_back(make_info(one_chart, one_multiplier, 1, FixedPointLabel::one));
  const Complex w = reciprocal_chart_value(stable_palindromic_root(3.0 - 2.0 * alpha));
  const ChartPoint s1{w, false};
  const ChartPoint s2{w, true};
  out.push_back(make_info(s1, multiplier_at(alpha, from_chart(s1)), 1, FixedPointLabel::s1));
  out.push_back(make_info(s2, multiplier_at(alpha, from_chart(s2)), 1, FixedPointLabel::s2));
  return out;
}

CriticalSet critical_points(Complex alpha) {
  CriticalSet set;
  set.points = {SpherePoint(Complex{}), SpherePoint::infinity()};
  const Complex a = 3.0 * (alpha - 1.0);
  if (std::abs(alpha - 1.0) < kMergeTol) {
    set.degenerate = true;
    return set;
  }
  // c solves a z^2 - 2 b z + a = 0; disc = b^2 - a^2 equals the quartic
  // -6a + 19a^2 - 16a^3 + 4a^4 in alpha.
  const Complex b = 3.0 - 4.0 * alpha + 2.0 * alpha * alpha;
  const Complex disc = (b - a) * (b + a);
  Complex w;
  if (std::abs(disc) < kMergeTol) {
    set.degenerate = true;
    w = reciprocal_chart_value(b / a);
  } else {
    const Complex sq = std::sqrt(disc);
    const Complex q = std::abs(b + sq) >= std::abs(b - sq) ? b + sq : b - sq;
    // Roots are q / a and a / q; keep the one inside the closed unit disk.
    w = std::abs(q) >= std::abs(a) ? a / q : q / a;
  }
  set.free_points = {ChartPoint{w, false}, ChartPoint{w, true}};
  set.points.push_back(from_chart(set.free_points[0]));
  set.points.push_back(from_chart(set.free_points[1]));
  return set;
}

std::vector<FixedPointInfo> stability_report(Complex alpha) {
  const RationalMap map = build_operator(alpha);
  std::vector<FixedPointInfo> out;
  const ChartPoint zero{Complex{}, false};
  const ChartPoint inf{Complex{}, true};
  out.push_back(make_info(zero, chart_derivative(map, zero, false), 1, FixedPointLabel::zero));
  out.push_back(make_info(inf, chart_derivative(map, inf, true), 1, FixedPointLabel::infinity));
  for (auto& info : strange_fixed_points(alpha)) out.push_back(std::move(info));
  return out;
}

}  // namespace chebydyn
