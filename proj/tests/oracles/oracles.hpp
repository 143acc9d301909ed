#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library: plain complex arithmetic on the closed forms, a generic
// polynomial root finder and finite differences.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using C = std::complex<double>;

// z^3 (z - k) / (1 - k z), k = 2 (alpha - 1), written out directly.
inline C op(C alpha, C z) {
  const C k = 2.0 * (alpha - 1.0);
  return z * z * z * (z - k) / (1.0 - k * z);
}

// The family on z^2 + c before conjugation.
inline C general(C alpha, C c, C z) {
  const C z2 = z * z;
  return (z2 * z2 * (2.0 * alpha - 3.0) + 6.0 * c * z2 + c * c * (1.0 - 2.0 * alpha)) /
         (4.0 * z * (z2 * (alpha - 2.0) + alpha * c));
}

inline C mobius(C c, C z) {
  const C r = C(0, 1) * std::sqrt(c);
  return (z - r) / (z + r);
}

// One Chebyshev-Halley step on z^2 + c from the textbook formula.
inline C halley_quadratic(C alpha, C c, C z) {
  const C f = z * z + c, df = 2.0 * z, d2f = 2.0;
  const C L = f * d2f / (df * df);
  return z - (1.0 + 0.5 * L / (1.0 - alpha * L)) * f / df;
}

// Central difference with step h along the real axis; exact for holomorphic f
// up to O(h^2).
inline C derivative_fd(const std::function<C(C)>& f, C z, double h) {
  return (f(z + h) - f(z - h)) / (2.0 * h);
}

// Durand-Kerner on ascending coefficients; returns deg roots.
inline std::vector<C> roots(std::vector<C> coeffs) {
  while (coeffs.size() > 1 && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
  const std::size_t n = coeffs.size() - 1;
  const C lead = coeffs.back();
  for (auto& c : coeffs) c /= lead;
  std::vector<C> z(n);
  for (std::size_t k = 0; k < n; ++k) z[k] = std::pow(C(0.4, 0.9), static_cast<double>(k));
  const auto p = [&](C x) {
    C acc = 0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
  };
  for (int it = 0; it < 2000; ++it) {
    double delta = 0;
    for (std::size_t i = 0; i < n; ++i) {
      C denom = 1;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) denom *= z[i] - z[j];
      }
      const C step = p(z[i]) / denom;
      z[i] -= step;
      delta = std::max(delta, std::abs(step));
    }
    if (delta < 1e-16) break;
  }
  return z;
}

inline std::vector<C> sorted_by_modulus(std::vector<C> v) {
  std::sort(v.begin(), v.end(), [](C a, C b) {
    return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : std::arg(a) < std::arg(b);
  });
  return v;
}

// Naive critical-orbit scan: iterate c1 in the plain plane for `iters`
// steps and report a 2-cycle when O^2(z) returns to z, O(z) does not, and
// the product of derivatives (by finite differences) has modulus < 1.
struct TwoCycleHit {
  double alpha;
  double multiplier_modulus;
};

inline std::optional<TwoCycleHit> two_cycle_at(double alpha, int iters = 4000) {
  const C a(alpha, 0);
  // c1 from the closed form with the smaller modulus.
  const C b = 3.0 - 4.0 * a + 2.0 * a * a;
  const C disc = std::sqrt(-6.0 * a + 19.0 * a * a - 16.0 * a * a * a + 4.0 * a * a * a * a);
  C c = (b - disc) / (3.0 * (a - 1.0));
  if (std::abs(c) > 1.0) c = (b + disc) / (3.0 * (a - 1.0));
  C z = c;
  for (int k = 0; k < iters; ++k) {
    z = op(a, z);
    if (!std::isfinite(z.real()) || std::abs(z) > 1e6) return std::nullopt;
  }
  const C z1 = op(a, z), z2 = op(a, z1);
  if (std::abs(z2 - z) > 1e-9 || std::abs(z1 - z) < 1e-6) return std::nullopt;
  const auto f = [&](C x) { return op(a, x); };
  const C m = derivative_fd(f, z, 1e-6) * derivative_fd(f, z1, 1e-6);
  if (std::abs(m) >= 1.0) return std::nullopt;
  return TwoCycleHit{alpha, std::abs(m)};
}

inline std::vector<TwoCycleHit> two_cycle_scan(double lo, double hi, double step) {
  std::vector<TwoCycleHit> hits;
  for (double a = lo + step; a < hi; a += step) {
    if (auto h = two_cycle_at(a)) hits.push_back(*h);
  }
  return hits;
}

inline C random_in_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    const C z(u(rng), u(rng));
    if (std::norm(z) <= 1.0) return radius * z;
  }
}

}  // namespace oracle
