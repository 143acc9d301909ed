#include "chebydyn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include <nlohmann/json.hpp>

#include "chebydyn/errors.hpp"
#include "chebydyn/fixed_critical.hpp"

namespace chebydyn {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::roots_only: return "roots_only";
    case Verdict::strange: return "strange";
    case Verdict::undecided: return "undecided";
  }
  return "?";
}

std::string CatVerdict::describe() const {
  if (verdict != Verdict::strange) return std::string(to_string(verdict));
  if (strange_kind == StrangeKind::fixed_point) return "strange(fixed-point)";
  return "strange(cycle " + std::to_string(period) + ")";
}

CatVerdict cat_membership(Complex alpha, const IterationConfig& cfg) {
  CriticalOrbits orbits = run_critical_orbits(alpha, cfg);
  CatVerdict v;
  v.alpha = alpha;
  bool fixed = false;
  int cycle_period = 0;
  int roots = 0;
  for (const OrbitFate& f : orbits.fates) {
    if (f.kind == FateKind::converged) {
      if (f.label == "0" || f.label == "inf") {
        ++roots;
      } else {
        fixed = true;
      }
    } else if (f.kind == FateKind::cycle) {
      if (f.cycle->period == 1) {
        fixed = true;
      } else if (cycle_period == 0) {
        cycle_period = f.cycle->period;
      }
    }
  }
  if (cycle_period != 0) {
    v.verdict = Verdict::strange;
    v.strange_kind = StrangeKind::cycle;
    v.period = cycle_period;
  } else if (fixed) {
    v.verdict = Verdict::strange;
    v.strange_kind = StrangeKind::fixed_point;
  } else if (roots == 2) {
    v.verdict = Verdict::roots_only;
  }
  v.evidence = std::move(orbits.fates);
  return v;
}

BoundaryPoint boundary_point(BoundaryRegion region, double theta) {
  const Complex e = std::polar(1.0, theta);
  BoundaryPoint out;
  if (region == BoundaryRegion::head) {
    out.alpha = kHeadCenter + kHeadRadius * e;
    out.multiplier = eval_derivative(build_operator(out.alpha), SpherePoint(Complex{1.0, 0.0}));
    return out;
  }
  out.alpha = kBodyCenter + kBodyRadius * e;
  // At theta = pi the s_i merge into z = 1, which carries their multiplier.
  const auto fixed = strange_fixed_points(out.alpha);
  const auto it = std::find_if(fixed.begin(), fixed.end(),
                               [](const FixedPointInfo& f) { return f.label == FixedPointLabel::s1; });
  out.multiplier = (it != fixed.end() ? *it : fixed.front()).multiplier;
  return out;
}

AntennaReport antenna_check(double alpha, const IterationConfig& cfg) {
  const bool left = alpha >= 0.0 && alpha < 0.5;
  const bool right = alpha > 1.5 && alpha < 2.0;
  if (!left && !right) {
    throw OutOfAntennaRange("alpha " + std::to_string(alpha) + " is outside [0, 1/2) and (3/2, 2)");
  }
  AntennaReport r;
  r.alpha = alpha;
  const CriticalSet crit = critical_points(Complex{alpha, 0.0});
  r.critical_modulus = std::abs(crit.points[2].value());
  r.pole_modulus = 1.0 / std::abs(2.0 * (alpha - 1.0));
  r.fates = run_critical_orbits(Complex{alpha, 0.0}, cfg).fates;
  return r;
}

std::size_t VerificationReport::failures() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const VerificationRow& r) { return !r.pass; }));
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string fmt(Complex z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.15g%+.15gi", z.real(), z.imag());
  return buf;
}

std::string fmt(const SpherePoint& p) { return p.is_infinity() ? "inf" : fmt(p.value()); }

std::string fmt(const Coefficients& c) {
  std::string s = "[";
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k != 0) s += ", ";
    s += fmt(c[k]);
  }
  return s + "]";
}

double coefficient_gap(const Coefficients& a, const Coefficients& b) {
  double gap = 0.0;
  for (std::size_t k = 0; k < std::max(a.size(), b.size()); ++k) {
    const Complex x = k < a.size() ? a[k] : Complex{};
    const Complex y = k < b.size() ? b[k] : Complex{};
    gap = std::max(gap, std::abs(x - y));
  }
  return gap;
}

// Scale so the denominator's constant term is 1 and drop trailing zeros.
std::pair<Coefficients, Coefficients> normalized(const RationalMap& m) {
  const Complex d0 = m.denominator().front();
  Coefficients n = trim(m.numerator()), d = trim(m.denominator());
  for (auto& c : n) c /= d0;
  for (auto& c : d) c /= d0;
  return {n, d};
}

struct TableBuilder {
  VerificationReport report;

  void add(std::string name, std::string expected, std::string observed, double residual, double tol) {
    report.rows.push_back({std::move(name), std::move(expected), std::move(observed), residual,
                           std::isfinite(residual) && residual <= tol});
  }

  void map_row(std::string name, const RationalMap& reduced, Coefficients num, Coefficients den, double tol) {
    const auto [n, d] = normalized(reduced);
    const RationalMap expected(num, den);
    const auto [en, ed] = normalized(expected);
    const double residual = std::max(coefficient_gap(n, en), coefficient_gap(d, ed));
    add(std::move(name), fmt(en) + " / " + fmt(ed), fmt(n) + " / " + fmt(d), residual, tol);
  }

  // Runs `body`, turning any exception into a failing row.
  template <class F>
  void guarded(const std::string& name, F body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(name, "no exception", e.what(), std::numeric_limits<double>::infinity(), 0.0);
    }
  }
};

double newton_gap(double alpha) {
  const RationalMap m = build_operator(Complex{alpha, 0.0});
  double sup = 0.0;
  for (int k = 0; k < 720; ++k) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / 720);
    sup = std::max(sup, std::abs(eval_map(m, z).value() - z * z));
  }
  return sup;
}

}  // namespace

VerificationReport verify_special_cases() {
  TableBuilder t;
  const Complex one{1.0, 0.0};

  t.guarded("alpha=1 reduces to z^4", [&] {
    t.map_row("alpha=1 reduces to z^4", build_operator(1.0), {0, 0, 0, 0, 1}, {1}, 1e-12);
  });
  t.guarded("alpha=1/2 reduces to z^3", [&] {
    t.map_row("alpha=1/2 reduces to z^3", cancel_common_root(build_operator(0.5), -1.0), {0, 0, 0, 1}, {1},
              1e-12);
  });
  t.guarded("alpha=3/2 reduces to -z^3", [&] {
    t.map_row("alpha=3/2 reduces to -z^3", cancel_common_root(build_operator(1.5), 1.0), {0, 0, 0, -1}, {1},
              1e-12);
  });

  struct Displayed {
    const char* name;
    double alpha;
    Coefficients num, den;
  };
  const Displayed displayed[] = {
      {"alpha=11/6 operator z^3(3z-5)/(3-5z)", 11.0 / 6.0, {0, 0, 0, -5, 3}, {3, -5}},
      {"alpha=5/2 operator z^3(z-3)/(1-3z)", 2.5, {0, 0, 0, -3, 1}, {1, -3}},
      {"alpha=3 operator z^3(z-4)/(1-4z)", 3.0, {0, 0, 0, -4, 1}, {1, -4}},
      {"alpha=7/2 operator z^3(z-5)/(1-5z)", 3.5, {0, 0, 0, -5, 1}, {1, -5}},
  };
  for (const auto& d : displayed) {
    t.guarded(d.name, [&] { t.map_row(d.name, build_operator(d.alpha), d.num, d.den, 1e-12); });
  }

  t.guarded("alpha=0 critical points c1=c2=-1", [&] {
    const CriticalSet c = critical_points(0.0);
    const double r = std::max(std::abs(c.points[2].value() + 1.0), std::abs(c.points[3].value() + 1.0));
    t.add("alpha=0 critical points c1=c2=-1", "-1, -1", fmt(c.points[2]) + ", " + fmt(c.points[3]), r, 1e-10);
  });
  t.guarded("alpha=0 O(-1)=1", [&] {
    const SpherePoint img = eval_map(build_operator(0.0), Complex{-1.0, 0.0});
    t.add("alpha=0 O(-1)=1", "1", fmt(img), std::abs(img.value() - one), 1e-12);
  });
  t.guarded("alpha=2 z=1 superattracting", [&] {
    const Complex m = multiplier_at(2.0, one);
    t.add("alpha=2 z=1 superattracting", "0", fmt(m), std::abs(m), kSuperattractingTol);
  });
  t.guarded("alpha=5/2 critical points (2/9)(11/2-+sqrt(10))", [&] {
    const CriticalSet c = critical_points(2.5);
    const double e1 = 2.0 / 9.0 * (5.5 - std::sqrt(10.0));
    const double e2 = 2.0 / 9.0 * (5.5 + std::sqrt(10.0));
    const double r = std::max(std::abs(c.points[2].value() - e1), std::abs(c.points[3].value() - e2));
    t.add("alpha=5/2 critical points (2/9)(11/2-+sqrt(10))", fmt(e1) + ", " + fmt(e2),
          fmt(c.points[2]) + ", " + fmt(c.points[3]), r, 1e-10);
  });
  t.guarded("alpha=5/2 z=1 multiplicity 3", [&] {
    const auto f = strange_fixed_points(2.5);
    const bool ok = f.size() == 1 && f[0].label == FixedPointLabel::one && f[0].multiplicity == 3;
    t.add("alpha=5/2 z=1 multiplicity 3", "1 (x3)",
          fmt(f.front().location) + " (x" + std::to_string(f.front().multiplicity) + "), " +
              std::to_string(f.size()) + " point(s)",
          ok ? 0.0 : 1.0, 0.0);
  });
  t.guarded("alpha=1/2 z=-1 multiplicity 2", [&] {
    const auto f = strange_fixed_points(0.5);
    const auto it = std::find_if(f.begin(), f.end(), [](const FixedPointInfo& p) {
      return p.label == FixedPointLabel::s1;
    });
    const bool ok = it != f.end() && it->multiplicity == 2 && f.size() == 2;
    const double r = it == f.end() ? 1.0 : std::abs(it->location.value() + 1.0);
    t.add("alpha=1/2 z=-1 multiplicity 2", "-1 (x2)",
          it == f.end() ? "missing" : fmt(it->location) + " (x" + std::to_string(it->multiplicity) + ")",
          ok ? r : std::max(r, 1.0), 1e-12);
  });
  t.guarded("alpha=3 s_i=c_i superattracting", [&] {
    const auto f = strange_fixed_points(3.0);
    const CriticalSet c = critical_points(3.0);
    double r = 0.0;
    std::string obs;
    for (const auto& p : f) {
      if (p.label == FixedPointLabel::s1) r = std::max(r, std::abs(p.location.value() - c.points[2].value()));
      if (p.label == FixedPointLabel::s2) r = std::max(r, std::abs(p.location.value() - c.points[3].value()));
      if (p.label != FixedPointLabel::one) r = std::max(r, std::abs(p.multiplier));
    }
    obs = "c1=" + fmt(c.points[2]) + ", c2=" + fmt(c.points[3]);
    t.add("alpha=3 s_i=c_i superattracting", "s1=(3-sqrt5)/2, s2=(3+sqrt5)/2, multiplier 0", obs, r, 1e-10);
  });
  t.guarded("head theta=pi: alpha=11/6, O'(1)=-1", [&] {
    const BoundaryPoint b = boundary_point(BoundaryRegion::head, std::numbers::pi);
    const double r = std::max(std::abs(b.alpha - Complex{11.0 / 6.0, 0.0}), std::abs(b.multiplier + 1.0));
    t.add("head theta=pi: alpha=11/6, O'(1)=-1", "alpha=11/6, -1", fmt(b.alpha) + ", " + fmt(b.multiplier), r,
          1e-10);
  });
  t.guarded("Newton limit alpha=1e6: O -> z^2", [&] {
    const double g3 = newton_gap(1e3);
    const double g6 = newton_gap(1e6);
    const double bound = 2.0 / (2.0 * (1e6 - 1.0) - 1.0);
    // Pass when the sup-gap is within the analytic bound and shrinks with alpha.
    const double r = g6 < g3 ? g6 : std::numeric_limits<double>::infinity();
    t.add("Newton limit alpha=1e6: O -> z^2", "sup |O - z^2| <= " + fmt(bound) + " on |z|=1",
          fmt(g6) + " (alpha=1e3: " + fmt(g3) + ")", r, bound);
  });
  return t.report;
}

std::string report_to_json(const VerificationReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"case", r.name},
                    {"expected", r.expected},
                    {"observed", r.observed},
                    {"residual", std::isfinite(r.residual) ? nlohmann::json(r.residual) : nlohmann::json()},
                    {"pass", r.pass}});
  }
  return rows.dump(2);
}

}  // namespace chebydyn
