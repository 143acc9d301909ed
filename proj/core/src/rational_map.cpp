#include "chebydyn/rational_map.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "chebydyn/errors.hpp"

namespace chebydyn {

namespace {

Coefficients padded_reverse(const Coefficients& c, std::size_t length) {
  Coefficients out(length, Complex{});
  for (std::size_t k = 0; k < c.size(); ++k) out[length - 1 - k] = c[k];
  return out;
}

bool all_zero(const Coefficients& c) {
  return std::all_of(c.begin(), c.end(), [](Complex v) { return v == Complex{}; });
}

bool tiny(Complex v) { return std::abs(v) < kDegeneracyTol; }

using WideComplex = std::complex<long double>;

WideComplex wide_poly(const Coefficients& coeffs, WideComplex z) noexcept {
  WideComplex acc{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + WideComplex(*it);
  return acc;
}

Complex narrow(WideComplex v) noexcept {
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

}  // namespace

RationalMap::RationalMap(Coefficients numerator, Coefficients denominator, Complex alpha)
    : num_(std::move(numerator)), den_(std::move(denominator)), alpha_(alpha) {
  if (num_.empty() || den_.empty()) {
    throw std::invalid_argument("RationalMap: empty coefficient list");
  }
  if (all_zero(num_) && all_zero(den_)) {
    throw std::invalid_argument("RationalMap: numerator and denominator both zero");
  }
  const std::size_t length = std::max(num_.size(), den_.size());
  rev_num_ = padded_reverse(num_, length);
  rev_den_ = padded_reverse(den_, length);
}

bool RationalMap::preserves_unit_circle() const noexcept {
  // rev_den_[k] is D_{n-k}; compare against the padded numerator.
  const std::size_t length = rev_num_.size();
  for (std::size_t k = 0; k < length; ++k) {
    const Complex nk = k < num_.size() ? num_[k] : Complex{};
    if (nk != std::conj(rev_den_[k])) return false;
  }
  return true;
}

Complex eval_poly(std::span<const Complex> coeffs, Complex z) noexcept {
  Complex acc{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex eval_poly_derivative(std::span<const Complex> coeffs, Complex z) noexcept {
  Complex acc{};
  for (std::size_t k = coeffs.size(); k-- > 1;) {
    acc = acc * z + static_cast<double>(k) * coeffs[k];
  }
  return acc;
}

RationalMap build_operator(Complex alpha) {
  const Complex k = 2.0 * (alpha - 1.0);
  return RationalMap({0.0, 0.0, 0.0, -k, 1.0}, {1.0, -k, 0.0, 0.0, 0.0}, alpha);
}

RationalMap build_general_operator(Complex alpha, PolynomialSpec poly) {
  const Complex c = poly.c;
  if (c == Complex{}) throw DegenerateQuadratic("build_general_operator: c must be nonzero");
  Coefficients num{c * c * (1.0 - 2.0 * alpha), 0.0, 6.0 * c, 0.0, 2.0 * alpha - 3.0};
  Coefficients den{0.0, 4.0 * alpha * c, 0.0, 4.0 * (alpha - 2.0), 0.0};
  return RationalMap(std::move(num), std::move(den), alpha);
}

ChartPoint eval_chart(const RationalMap& map, const ChartPoint& z) {
  const Coefficients& top = z.inverted ? map.reversed_numerator() : map.numerator();
  const Coefficients& bottom = z.inverted ? map.reversed_denominator() : map.denominator();
  const Complex p = eval_poly(top, z.value);
  const Complex q = eval_poly(bottom, z.value);
  if (tiny(p) && tiny(q)) {
    throw IndeterminateValue("eval_map: numerator and denominator vanish together");
  }
  if (std::abs(p) <= std::abs(q)) return {p / q, false};
  return {q / p, true};
}

// Same as eval_chart but accumulated in long double, rounded once.
SpherePoint eval_map(const RationalMap& map, const SpherePoint& z) {
  const bool inverted = z.is_infinity() || std::abs(z.value()) > 1.0;
  const Coefficients& top = inverted ? map.reversed_numerator() : map.numerator();
  const Coefficients& bottom = inverted ? map.reversed_denominator() : map.denominator();
  const WideComplex w = z.is_infinity() ? WideComplex{}
                        : inverted      ? 1.0L / WideComplex(z.value())
                                        : WideComplex(z.value());
  const WideComplex p = wide_poly(top, w);
  const WideComplex q = wide_poly(bottom, w);
  if (tiny(narrow(p)) && tiny(narrow(q))) {
    throw IndeterminateValue("eval_map: numerator and denominator vanish together");
  }
  if (std::abs(p) <= std::abs(q)) return SpherePoint(narrow(p / q));
  const WideComplex inv = q / p;
  if (inv == WideComplex{}) return SpherePoint::infinity();
  const Complex v = narrow(1.0L / inv);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return SpherePoint::infinity();
  return SpherePoint(v);
}

Complex chart_derivative(const RationalMap& map, const ChartPoint& from, bool to_inverted) {
  const Coefficients& top = from.inverted ? map.reversed_numerator() : map.numerator();
  const Coefficients& bottom = from.inverted ? map.reversed_denominator() : map.denominator();
  Complex p = eval_poly(top, from.value);
  Complex q = eval_poly(bottom, from.value);
  Complex dp = eval_poly_derivative(top, from.value);
  Complex dq = eval_poly_derivative(bottom, from.value);
  if (to_inverted) {
    std::swap(p, q);
    std::swap(dp, dq);
  }
  if (tiny(q)) throw PoleDerivative("derivative requested at a pole");
  return (dp * q - p * dq) / (q * q);
}

Complex eval_derivative(const RationalMap& map, const SpherePoint& z) {
  if (z.is_infinity()) {
    const ChartPoint at_inf{Complex{}, true};
    const ChartPoint image = eval_chart(map, at_inf);
    const bool fixed = image.inverted && image.value == Complex{};
    return chart_derivative(map, at_inf, fixed);
  }
  return chart_derivative(map, ChartPoint{z.value(), false}, false);
}

Complex iterate_derivative(const RationalMap& map, const ChartPoint& start, int steps,
                           bool end_inverted) {
  ChartPoint cur = start;
  Complex d{1.0, 0.0};
  for (int k = 0; k < steps; ++k) {
    const ChartPoint next = eval_chart(map, cur);
    const bool target = (k == steps - 1) ? end_inverted : next.inverted;
    d *= chart_derivative(map, cur, target);
    cur = next;
  }
  return d;
}

SpherePoint conjugacy(PolynomialSpec poly, const SpherePoint& z, ConjugacyDirection direction) {
  if (poly.c == Complex{}) throw DegenerateQuadratic("conjugacy: c must be nonzero");
  // Long double keeps the pole of (z - r) / (z + r) well resolved.
  const WideComplex r = WideComplex{0.0L, 1.0L} * std::sqrt(WideComplex(poly.c));
  if (direction == ConjugacyDirection::forward) {
    if (z.is_infinity()) return SpherePoint(Complex{1.0, 0.0});
    const WideComplex v = z.value();
    const WideComplex den = v + r;
    if (tiny(narrow(den))) return SpherePoint::infinity();
    return SpherePoint(narrow((v - r) / den));
  }
  if (z.is_infinity()) return SpherePoint(narrow(-r));
  const WideComplex u = z.value();
  const WideComplex den = 1.0L - u;
  if (tiny(narrow(den))) return SpherePoint::infinity();
  return SpherePoint(narrow(r * (1.0L + u) / den));
}

Complex halley_step(Complex alpha, std::span<const Complex> poly_coeffs, Complex z) {
  if (poly_coeffs.empty() || poly_coeffs.size() > 9) {
    throw std::invalid_argument("halley_step: polynomial degree must be between 0 and 8");
  }
  const Complex f = eval_poly(poly_coeffs, z);
  Coefficients d1;
  for (std::size_t k = 1; k < poly_coeffs.size(); ++k) {
    d1.push_back(static_cast<double>(k) * poly_coeffs[k]);
  }
  const Complex fp = eval_poly(d1, z);
  const Complex fpp = eval_poly_derivative(d1, z);
  if (tiny(fp)) throw DerivativeVanishes("halley_step: f'(z) vanishes");
  const Complex lf = f * fpp / (fp * fp);
  const Complex denom = 1.0 - alpha * lf;
  if (tiny(denom)) throw HalleyDenominatorVanishes("halley_step: 1 - alpha L_f(z) vanishes");
  return z - (1.0 + 0.5 * lf / denom) * f / fp;
}

namespace {

Coefficients divide_by_linear(const Coefficients& a, Complex root) {
  if (a.size() < 2) throw std::invalid_argument("cancel_common_root: constant polynomial");
  const std::size_t n = a.size() - 1;
  Coefficients b(n, Complex{});
  b[n - 1] = a[n];
  for (std::size_t k = n - 1; k >= 1; --k) b[k - 1] = a[k] + root * b[k];
  return b;
}

}  // namespace

RationalMap cancel_common_root(const RationalMap& map, Complex root) {
  return RationalMap(divide_by_linear(map.numerator(), root),
                     divide_by_linear(map.denominator(), root), map.alpha());
}

Coefficients trim(const Coefficients& c, double tol) {
  Coefficients out = c;
  while (out.size() > 1 && std::abs(out.back()) <= tol) out.pop_back();
  return out;
}

}  // namespace chebydyn
