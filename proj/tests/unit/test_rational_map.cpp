#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "chebydyn/errors.hpp"
#include "chebydyn/rational_map.hpp"
#include "oracles.hpp"

using namespace chebydyn;

namespace {

Complex finite(const SpherePoint& p) {
  EXPECT_TRUE(p.is_finite());
  return p.is_finite() ? p.value() : Complex{};
}

}  // namespace

TEST(BuildOperator, StoresCoefficientsAsConstructed) {
  const RationalMap m = build_operator(Complex{3.0, 0.0});
  EXPECT_EQ(m.numerator(), (Coefficients{0, 0, 0, -4, 1}));
  EXPECT_EQ(m.denominator(), (Coefficients{1, -4, 0, 0, 0}));
  EXPECT_EQ(m.alpha(), Complex(3.0, 0.0));

  const RationalMap chebyshev = build_operator(0.0);
  EXPECT_EQ(chebyshev.numerator(), (Coefficients{0, 0, 0, 2, 1}));
  EXPECT_EQ(chebyshev.denominator(), (Coefficients{1, 2, 0, 0, 0}));
}

TEST(BuildOperator, SuperHalleyIsZToTheFourth) {
  const RationalMap m = build_operator(1.0);
  EXPECT_EQ(trim(m.numerator()), (Coefficients{0, 0, 0, 0, 1}));
  EXPECT_EQ(trim(m.denominator()), (Coefficients{1}));
}

TEST(RationalMap, RejectsEmptyOrZero) {
  EXPECT_THROW(RationalMap({}, {1}), std::invalid_argument);
  EXPECT_THROW(RationalMap({0, 0}, {0}), std::invalid_argument);
}

TEST(EvalMap, FixedPointsAndPreimage) {
  for (double a : {-2.0, 0.0, 0.7, 2.0, 3.3}) {
    const RationalMap m = build_operator(a);
    EXPECT_EQ(finite(eval_map(m, Complex{})), Complex{});
    EXPECT_NEAR(std::abs(finite(eval_map(m, Complex{1.0, 0.0})) - 1.0), 0.0, 1e-15);
    EXPECT_TRUE(eval_map(m, SpherePoint::infinity()).is_infinity());
  }
  EXPECT_NEAR(std::abs(finite(eval_map(build_operator(0.0), Complex{-1.0, 0.0})) - 1.0), 0.0, 1e-15);
}

TEST(EvalMap, PoleGoesToInfinity) {
  // Exactly representable poles: 1/4 at alpha = 3, (1 - i)/2 at alpha = 3/2 + i/2.
  EXPECT_TRUE(eval_map(build_operator(3.0), Complex{0.25, 0.0}).is_infinity());
  EXPECT_TRUE(eval_map(build_operator(Complex{1.5, 0.5}), Complex{0.5, -0.5}).is_infinity());
  // Near a pole the image is large but finite.
  const SpherePoint near = eval_map(build_operator(3.0), Complex{0.25 + 1e-9, 0.0});
  ASSERT_TRUE(near.is_finite());
  EXPECT_GT(std::abs(near.value()), 1e6);
}

TEST(EvalMap, IndeterminateAtUnreducedCommonRoot) {
  // alpha = 1/2: z^3 (z + 1) / (1 + z) at z = -1.
  EXPECT_THROW(eval_map(build_operator(0.5), Complex{-1.0, 0.0}), IndeterminateValue);
  EXPECT_THROW(eval_map(build_operator(1.5), Complex{1.0, 0.0}), IndeterminateValue);
}

TEST(EvalMap, OutsideUnitDiskRoundsOnce) {
  // z^4 at integers is exact; a double round trip through 1/z would not be.
  const RationalMap m = build_operator(1.0);
  for (double x : {3.0, -7.0, 11.0, 13.0}) {
    EXPECT_EQ(eval_map(m, Complex{x, 0.0}).value(), Complex(x * x * x * x, 0.0));
  }
}

TEST(EvalMap, MatchesDirectFormula) {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 500; ++n) {
    const Complex a = oracle::random_in_disk(rng, 4.0);
    const Complex z = oracle::random_in_disk(rng, 3.0);
    const Complex pole = 1.0 / (2.0 * (a - 1.0));
    if (std::abs(z - pole) < 1e-3) continue;
    const Complex expect = oracle::op(a, z);
    EXPECT_LT(std::abs(finite(eval_map(build_operator(a), z)) - expect), 1e-12 * std::max(1.0, std::abs(expect)));
  }
}

TEST(Invariants, ReciprocalSymmetry) {
  std::mt19937_64 rng(2);
  for (int n = 0; n < 1000; ++n) {
    const Complex a = oracle::random_in_disk(rng, 10.0);
    const Complex z = oracle::random_in_disk(rng, 4.0);
    const RationalMap m = build_operator(a);
    const SpherePoint w = eval_map(m, z);
    const SpherePoint w_inv = eval_map(m, 1.0 / z);
    if (w.is_infinity() || w_inv.is_infinity()) continue;
    EXPECT_LT(std::abs(w.value() * w_inv.value() - 1.0), 1e-10) << "alpha=" << a << " z=" << z;
  }
}

TEST(Invariants, RealAlphaCommutesWithConjugation) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int n = 0; n < 200; ++n) {
    const RationalMap m = build_operator(u(rng));
    const Complex z = oracle::random_in_disk(rng, 3.0);
    const SpherePoint w = eval_map(m, z), wc = eval_map(m, std::conj(z));
    ASSERT_EQ(w.is_infinity(), wc.is_infinity());
    if (w.is_finite()) EXPECT_EQ(std::conj(w.value()), wc.value());
  }
}

TEST(EvalDerivative, SpecValues) {
  EXPECT_EQ(std::abs(eval_derivative(build_operator(2.0), Complex{1.0, 0.0})), 0.0);
  for (double a : {-1.0, 0.0, 2.0, 3.7}) {
    EXPECT_EQ(eval_derivative(build_operator(a), Complex{}), Complex{});
    EXPECT_EQ(eval_derivative(build_operator(a), SpherePoint::infinity()), Complex{});
  }
  // |(4a - 8) / (2a - 3)| at a = 0.
  const Complex d = eval_derivative(build_operator(0.0), Complex{1.0, 0.0});
  EXPECT_NEAR(std::abs(d), 8.0 / 3.0, 1e-14);
  const auto f = [](oracle::C z) { return oracle::op(0.0, z); };
  EXPECT_LT(std::abs(d - oracle::derivative_fd(f, 1.0, 1e-6)), 1e-8);
}

TEST(EvalDerivative, ThrowsAtPole) {
  const Complex alpha{3.0, 0.0};
  EXPECT_THROW(eval_derivative(build_operator(alpha), Complex{0.25, 0.0}), PoleDerivative);
}

TEST(EvalDerivative, MatchesFiniteDifferences) {
  std::mt19937_64 rng(4);
  int checked = 0;
  while (checked < 1000) {
    const Complex a = oracle::random_in_disk(rng, 4.0);
    const Complex z = oracle::random_in_disk(rng, 3.0);
    const Complex pole = 1.0 / (2.0 * (a - 1.0));
    if (std::abs(z - pole) <= 0.05) continue;
    const double h = 1e-6 * std::max(1.0, std::abs(z));
    const Complex fd = oracle::derivative_fd([&](oracle::C x) { return oracle::op(a, x); }, z, h);
    const Complex d = eval_derivative(build_operator(a), z);
    EXPECT_LT(std::abs(d - fd), 1e-6 * std::max(1.0, std::abs(d))) << "alpha=" << a << " z=" << z;
    ++checked;
  }
}

TEST(ChartDerivative, ReciprocalChartAgreesWithConjugatedMap) {
  // In the reciprocal chart the map is w -> 1 / O(1 / w) = O(w).
  const RationalMap m = build_operator(Complex{2.3, 0.6});
  const Complex w{0.2, -0.3};
  EXPECT_LT(std::abs(chart_derivative(m, {w, true}, true) - eval_derivative(m, w)), 1e-12);
}

TEST(IterateDerivative, IsProductAlongOrbit) {
  const RationalMap m = build_operator(Complex{1.8, 0.1});
  const Complex z0{0.4, 0.3};
  const Complex z1 = eval_map(m, z0).value();
  const Complex expect = eval_derivative(m, z0) * eval_derivative(m, z1);
  const Complex got = iterate_derivative(m, {z0, false}, 2, std::abs(eval_map(m, z1).value()) > 1.0);
  const Complex z2 = eval_map(m, z1).value();
  // Read in the chart the result lands in.
  const Complex scale = std::abs(z2) > 1.0 ? -1.0 / (z2 * z2) : 1.0;
  EXPECT_LT(std::abs(got - expect * scale), 1e-10 * std::abs(expect * scale));
}

TEST(GeneralOperator, Coefficients) {
  const RationalMap g = build_general_operator(0.0, {1.0});
  EXPECT_EQ(g.numerator(), (Coefficients{1, 0, 6, 0, -3}));
  EXPECT_EQ(g.denominator(), (Coefficients{0, 0, 0, -8, 0}));
  // (3z^4 - 6z^2 - 1) / (8 z^3) is the same map.
  const Complex z{0.7, 0.2};
  const Complex expect = (3.0 * std::pow(z, 4) - 6.0 * z * z - 1.0) / (8.0 * std::pow(z, 3));
  EXPECT_LT(std::abs(eval_map(g, z).value() - expect), 1e-14);
  EXPECT_LT(std::abs(eval_map(g, Complex{0.0, 1.0}).value() - Complex{0.0, 1.0}), 1e-15);
}

TEST(GeneralOperator, RejectsDoubleRoot) {
  EXPECT_THROW(build_general_operator(1.0, {0.0}), DegenerateQuadratic);
  EXPECT_THROW(conjugacy({0.0}, Complex{1.0, 0.0}, ConjugacyDirection::forward), DegenerateQuadratic);
}

TEST(Conjugacy, Landmarks) {
  const PolynomialSpec p{Complex{2.0, -1.0}};
  const Complex r = Complex{0.0, 1.0} * std::sqrt(p.c);
  EXPECT_LT(std::abs(conjugacy(p, r, ConjugacyDirection::forward).value()), 1e-15);
  EXPECT_TRUE(conjugacy(p, -r, ConjugacyDirection::forward).is_infinity());
  EXPECT_EQ(conjugacy(p, SpherePoint::infinity(), ConjugacyDirection::forward).value(), Complex(1.0, 0.0));
  EXPECT_TRUE(conjugacy(p, Complex{1.0, 0.0}, ConjugacyDirection::inverse).is_infinity());
  EXPECT_LT(std::abs(conjugacy(p, SpherePoint::infinity(), ConjugacyDirection::inverse).value() + r), 1e-15);
}

TEST(Conjugacy, RoundTrip) {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 500; ++n) {
    const PolynomialSpec p{oracle::random_in_disk(rng, 4.0)};
    if (std::abs(p.c) < 0.1) continue;
    const Complex z = oracle::random_in_disk(rng, 4.0);
    const SpherePoint u = conjugacy(p, z, ConjugacyDirection::forward);
    if (u.is_infinity()) continue;
    const SpherePoint back = conjugacy(p, u, ConjugacyDirection::inverse);
    EXPECT_LT(std::abs(back.value() - z), 1e-12 * std::max(1.0, std::abs(z)));
    EXPECT_LT(std::abs(u.value() - oracle::mobius(p.c, z)), 1e-14 * std::max(1.0, std::abs(u.value())));
  }
}

TEST(Conjugacy, GeneralOperatorIsConjugatedToFamily) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> mod(0.1, 4.0), arg(-M_PI, M_PI);
  int checked = 0;
  while (checked < 1000) {
    const Complex a = oracle::random_in_disk(rng, 4.0);
    const PolynomialSpec p{std::polar(mod(rng), arg(rng))};
    const Complex z = oracle::random_in_disk(rng, 4.0);
    const SpherePoint lhs = conjugacy(p, eval_map(build_general_operator(a, p), z), ConjugacyDirection::forward);
    const SpherePoint rhs = eval_map(build_operator(a), conjugacy(p, z, ConjugacyDirection::forward));
    ++checked;
    if (lhs.is_infinity() || rhs.is_infinity()) {
      EXPECT_LT(sphere_distance(lhs, rhs), 1e-8);
      continue;
    }
    EXPECT_LT(std::abs(lhs.value() - rhs.value()), 1e-8 * std::max(1.0, std::abs(rhs.value())))
        << "alpha=" << a << " c=" << p.c << " z=" << z;
  }
}

TEST(HalleyStep, SpecExamples) {
  const Coefficients f{1, 0, 1};  // z^2 + 1
  EXPECT_NEAR(std::abs(halley_step(0.0, f, Complex{1.0, 0.0}) - Complex{-0.5, 0.0}), 0.0, 1e-15);
  EXPECT_EQ(halley_step(Complex{0.3, 2.0}, f, Complex{0.0, 1.0}), Complex(0.0, 1.0));
  std::mt19937_64 rng(7);
  for (int n = 0; n < 100; ++n) {
    const Complex z = oracle::random_in_disk(rng, 3.0);
    if (std::abs(z) < 1e-3) continue;
    const Complex step = halley_step(0.5, f, z);
    EXPECT_LT(std::abs(step - eval_map(build_general_operator(0.5, {1.0}), z).value()), 1e-12 * std::max(1.0, std::abs(step)));
    EXPECT_LT(std::abs(step - oracle::halley_quadratic(0.5, 1.0, z)), 1e-12 * std::max(1.0, std::abs(step)));
  }
}

TEST(HalleyStep, Errors) {
  const Coefficients f{1, 0, 1};
  EXPECT_THROW(halley_step(0.0, f, Complex{}), DerivativeVanishes);
  // L_f(z) = (z^2 + 1) * 2 / (4 z^2) = 1 / alpha at z^2 = alpha / (2 - alpha) ... pick alpha = 1, z^2 = 1.
  EXPECT_THROW(halley_step(1.0, f, Complex{1.0, 0.0}), HalleyDenominatorVanishes);
  EXPECT_THROW(halley_step(0.0, Coefficients(10, 1.0), Complex{1.0, 0.0}), std::invalid_argument);
  // Degree 8 is accepted.
  EXPECT_NO_THROW(halley_step(0.0, Coefficients(9, 1.0), Complex{0.5, 0.1}));
}

TEST(Reductions, CommonFactorCancellation) {
  const RationalMap half = cancel_common_root(build_operator(0.5), -1.0);
  EXPECT_EQ(trim(half.numerator()), (Coefficients{0, 0, 0, 1}));
  EXPECT_EQ(trim(half.denominator()), (Coefficients{1}));
  const RationalMap three_halves = cancel_common_root(build_operator(1.5), 1.0);
  EXPECT_EQ(trim(three_halves.numerator()), (Coefficients{0, 0, 0, 1}));
  EXPECT_EQ(trim(three_halves.denominator()), (Coefficients{-1}));
}

TEST(NewtonLimit, SupGapShrinks) {
  double previous = 1e300;
  for (double a : {1e3, 1e6}) {
    const RationalMap m = build_operator(a);
    double sup = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const Complex z = std::polar(1.0, 2.0 * M_PI * k / 1000);
      sup = std::max(sup, std::abs(eval_map(m, z).value() - z * z));
    }
    EXPECT_LT(sup, previous);
    EXPECT_LE(sup, 2.0 / (2.0 * (a - 1.0) - 1.0));
    previous = sup;
  }
}

TEST(RationalMap, UnitCirclePreservation) {
  EXPECT_TRUE(build_operator(0.25).preserves_unit_circle());
  EXPECT_TRUE(build_operator(3.0).preserves_unit_circle());
  EXPECT_FALSE(build_operator(Complex{1.0, 0.3}).preserves_unit_circle());
}
