#pragma once

#include <span>
#include <vector>

#include "chebydyn/sphere.hpp"

namespace chebydyn {

// Polynomial coefficients in ascending powers: c[0] + c[1] z + c[2] z^2 + ...
using Coefficients = std::vector<Complex>;

// Exact-degeneracy tolerance: values below this are treated as zero.
inline constexpr double kDegeneracyTol = 1e-14;

// The quadratic p(z) = z^2 + c. Only c != 0 is accepted where it matters.
struct PolynomialSpec {
  Complex c{1.0, 0.0};
};

// A rational self-map of the Riemann sphere N(z) / D(z) stored in
// coefficient form, exactly as constructed (no cancellation, no scaling).
// The alpha that produced the map travels with it for reporting.
class RationalMap {
 public:
  // Throws std::invalid_argument if both polynomials are identically zero
  // or either coefficient list is empty.
  RationalMap(Coefficients numerator, Coefficients denominator, Complex alpha = {});

  const Coefficients& numerator() const noexcept { return num_; }
  const Coefficients& denominator() const noexcept { return den_; }
  Complex alpha() const noexcept { return alpha_; }

  // Formal degree used for the reciprocal chart: max(len(N), len(D)) - 1.
  int formal_degree() const noexcept { return static_cast<int>(rev_num_.size()) - 1; }

  // Coefficients of w^n N(1/w) and w^n D(1/w) for n = formal_degree().
  const Coefficients& reversed_numerator() const noexcept { return rev_num_; }
  const Coefficients& reversed_denominator() const noexcept { return rev_den_; }

  // True when the coefficients satisfy N_k = conj(D_{n-k}). Such maps are
  // Blaschke-type: they send the unit circle onto itself.
  bool preserves_unit_circle() const noexcept;

 private:
  Coefficients num_;
  Coefficients den_;
  Coefficients rev_num_;
  Coefficients rev_den_;
  Complex alpha_;
};

Complex eval_poly(std::span<const Complex> coeffs, Complex z) noexcept;
Complex eval_poly_derivative(std::span<const Complex> coeffs, Complex z) noexcept;

// z -> z^3 (z - 2(alpha-1)) / (1 - 2(alpha-1) z), stored as
// [0,0,0,-2(alpha-1),1] over [1,-2(alpha-1),0,0,0].
RationalMap build_operator(Complex alpha);

// The family applied to z^2 + c before conjugation:
// (z^4(2 alpha - 3) + 6 c z^2 + c^2 (1 - 2 alpha)) / (4 z (z^2 (alpha - 2) + alpha c)).
// Throws DegenerateQuadratic when c == 0.
RationalMap build_general_operator(Complex alpha, PolynomialSpec poly);

// Sphere-safe evaluation. Poles map to infinity; infinity is handled in the
// reciprocal chart. Accumulates in long double and rounds once, so it can
// differ from eval_chart in the last bit. Throws IndeterminateValue at an
// unreduced common root.
SpherePoint eval_map(const RationalMap& map, const SpherePoint& z);

// Same evaluation on chart points. The input may be unnormalized (any
// |value|); the result is always normalized (|value| <= 1).
ChartPoint eval_chart(const RationalMap& map, const ChartPoint& z);

// Derivative of the map. At a finite point this is the quotient rule on the
// stored coefficients; at infinity it is the derivative in the chart
// w = 1/z (of w -> 1/R(1/w) when infinity is fixed, of w -> R(1/w)
// otherwise). Throws PoleDerivative at a pole.
Complex eval_derivative(const RationalMap& map, const SpherePoint& z);

// Derivative of the map read in local charts: from the chart of `from`
// (whose value may be unnormalized) into the identity chart
// (to_inverted == false) or the reciprocal chart (to_inverted == true).
Complex chart_derivative(const RationalMap& map, const ChartPoint& from, bool to_inverted);

// Derivative of the p-th iterate starting at `start`, with the final image
// read in the chart selected by end_inverted. Chain rule through the
// normalized charts of the intermediate points.
Complex iterate_derivative(const RationalMap& map, const ChartPoint& start, int steps,
                           bool end_inverted);

enum class ConjugacyDirection { forward, inverse };

// h(z) = (z - r) / (z + r) with r = i * sqrt(c), principal square root.
// forward applies h, inverse applies h^-1(u) = r (1 + u) / (1 - u).
// Computed in long double.
SpherePoint conjugacy(PolynomialSpec poly, const SpherePoint& z, ConjugacyDirection direction);

// One step of the Chebyshev-Halley family on an arbitrary polynomial
// (ascending coefficients, degree <= 8):
//   z - (1 + L / (2 (1 - alpha L))) f / f',   L = f f'' / f'^2.
Complex halley_step(Complex alpha, std::span<const Complex> poly_coeffs, Complex z);

// Divide numerator and denominator by (z - root). The remainders are
// discarded; callers use this only at a verified common root.
RationalMap cancel_common_root(const RationalMap& map, Complex root);

// Drop trailing coefficients with modulus <= tol (keeps at least one).
Coefficients trim(const Coefficients& c, double tol = 0.0);

}  // namespace chebydyn
