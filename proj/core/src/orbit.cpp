#include "chebydyn/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "chebydyn/errors.hpp"

namespace chebydyn {

void IterationConfig::validate() const {
  if (max_iter < 1) throw std::invalid_argument("IterationConfig: max_iter must be >= 1");
  if (transient < 0 || max_iter <= transient) {
    throw std::invalid_argument("IterationConfig: need max_iter > transient >= 0");
  }
  if (max_period < 1) throw std::invalid_argument("IterationConfig: max_period must be >= 1");
  if (confirm_steps < 1) throw std::invalid_argument("IterationConfig: confirm_steps must be >= 1");
  if (!(eps_converge > 0.0)) throw std::invalid_argument("IterationConfig: eps_converge must be > 0");
}

namespace {

constexpr int kCaptureSamples = 32;

// Unit directions closed under conjugation bit-for-bit, so capture radii of
// conjugate attractors agree exactly.
const std::array<Complex, kCaptureSamples>& sample_directions() {
  static const std::array<Complex, kCaptureSamples> dirs = [] {
    std::array<Complex, kCaptureSamples> d{};
    for (int k = 0; k <= kCaptureSamples / 2; ++k) {
      const double t = 2.0 * std::numbers::pi * k / kCaptureSamples;
      d[k] = {std::cos(t), std::sin(t)};
    }
    d[0] = {1.0, 0.0};
    d[kCaptureSamples / 2] = {-1.0, 0.0};
    for (int k = kCaptureSamples / 2 + 1; k < kCaptureSamples; ++k) {
      d[k] = std::conj(d[kCaptureSamples - k]);
    }
    return d;
  }();
  return dirs;
}

ChartPoint normalized(ChartPoint p) {
  if (std::abs(p.value) > 1.0) return {1.0 / p.value, !p.inverted};
  return p;
}

bool within(const ChartPoint& p, const ChartPoint& ref, double radius) {
  if (p.inverted == ref.inverted) return std::norm(p.value - ref.value) < radius * radius;
  return chart_distance(p, ref) < radius;
}

}  // namespace

AttractorSet::AttractorSet(RationalMap map, IterationConfig cfg)
    : map_(std::move(map)), cfg_(cfg) {
  cfg_.validate();
  add("0", {ChartPoint{Complex{}, false}}, chart_derivative(map_, {Complex{}, false}, false),
      AttractorProvenance::known_fixed);
  add("inf", {ChartPoint{Complex{}, true}}, chart_derivative(map_, {Complex{}, true}, true),
      AttractorProvenance::known_fixed);
}

double AttractorSet::capture_radius_for(const std::vector<ChartPoint>& points, std::size_t k,
                                        double multiplier_modulus) const {
  const double eps = cfg_.eps_converge;
  if (multiplier_modulus >= 1.0 - kParabolicTol) return eps;
  const double bound = 0.5 * (1.0 + multiplier_modulus);
  const ChartPoint& centre = points[k];

  double r = 0.25;
  for (const auto& e : entries_) {
    for (const auto& q : e.points) r = std::min(r, 0.5 * chart_distance(q, centre));
  }
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (j != k) r = std::min(r, 0.5 * chart_distance(points[j], centre));
  }

  const int period = static_cast<int>(points.size());
  const auto contracts_on = [&](double radius) {
    for (const Complex& d : sample_directions()) {
      const ChartPoint sample{centre.value + radius * d, centre.inverted};
      try {
        if (std::abs(iterate_derivative(map_, sample, period, centre.inverted)) > bound) {
          return false;
        }
      } catch (const DynamicsError&) {
        return false;
      }
    }
    return true;
  };
  for (; r > eps; r *= 0.5) {
    if (contracts_on(r) && contracts_on(0.5 * r)) return r;
  }
  return eps;
}

std::size_t AttractorSet::add(std::string label, std::vector<ChartPoint> points,
                              Complex multiplier, AttractorProvenance provenance) {
  if (points.empty()) throw std::invalid_argument("AttractorSet::add: no points");
  for (auto& p : points) p = normalized(p);
  const double merge = 2.0 * cfg_.eps_converge;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    for (const auto& q : entries_[i].points) {
      for (const auto& p : points) {
        if (chart_distance(p, q) <= merge) return i;
      }
    }
  }
  Attractor a;
  a.label = std::move(label);
  a.multiplier = multiplier;
  a.provenance = provenance;
  const double modulus = std::abs(multiplier);
  for (std::size_t k = 0; k < points.size(); ++k) {
    a.capture_radius.push_back(capture_radius_for(points, k, modulus));
  }
  a.points = std::move(points);
  entries_.push_back(std::move(a));
  return entries_.size() - 1;
}

std::size_t AttractorSet::locate(const ChartPoint& z, std::size_t* point_index) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const Attractor& a = entries_[i];
    for (std::size_t k = 0; k < a.points.size(); ++k) {
      if (within(z, a.points[k], a.capture_radius[k])) {
        if (point_index != nullptr) *point_index = k;
        return i;
      }
    }
  }
  return npos;
}

std::size_t AttractorSet::find(const std::string& label) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].label == label) return i;
  }
  return npos;
}

namespace {

std::optional<CycleRecord> detect_cycle(const RationalMap& map, const ChartPoint& z,
                                        const std::vector<ChartPoint>& history, int n,
                                        const IterationConfig& cfg) {
  const int ring = static_cast<int>(history.size());
  const int max_lag = std::min(cfg.max_period, n);
  for (int p = 1; p <= max_lag; ++p) {
    const ChartPoint& prev = history[(n - p) % ring];
    if (!within(z, prev, cfg.eps_converge)) continue;
    // p is the smallest lag that returns; test it and stop either way.
    Complex multiplier;
    try {
      multiplier = iterate_derivative(map, z, p, z.inverted);
    } catch (const DynamicsError&) {
      return std::nullopt;
    }
    if (std::abs(multiplier) >= 1.0) return std::nullopt;
    CycleRecord rec;
    rec.period = p;
    rec.multiplier = multiplier;
    ChartPoint cur = z;
    for (int k = 0; k < p; ++k) {
      rec.chart_points.push_back(cur);
      rec.points.push_back(from_chart(cur));
      cur = eval_chart(map, cur);
    }
    return rec;
  }
  return std::nullopt;
}

}  // namespace

OrbitFate iterate_orbit(const RationalMap& map, const ChartPoint& z0,
                        const AttractorSet& attractors, const IterationConfig& cfg) {
  cfg.validate();
  ChartPoint z = normalized(z0);
  const bool on_circle = map.preserves_unit_circle() &&
                         std::abs(std::abs(z.value) - 1.0) < kInvariantCircleTol;
  if (on_circle) z.value /= std::abs(z.value);

  std::vector<ChartPoint> history(static_cast<std::size_t>(cfg.max_period) + 1);
  const int ring = static_cast<int>(history.size());
  int streak = 0;
  std::size_t streak_entry = AttractorSet::npos;

  OrbitFate fate;
  for (int n = 0;; ++n) {
    std::size_t point_index = 0;
    const std::size_t entry = attractors.locate(z, &point_index);
    if (entry != AttractorSet::npos) {
      streak = (entry == streak_entry) ? streak + 1 : 1;
      streak_entry = entry;
    } else {
      streak = 0;
      streak_entry = AttractorSet::npos;
    }
    if (streak >= cfg.confirm_steps) {
      const Attractor& a = attractors[entry];
      fate.kind = FateKind::converged;
      fate.iterations = n;
      fate.attractor = entry;
      fate.label = a.label;
      fate.location = from_chart(a.points[point_index]);
      return fate;
    }
    if (n >= cfg.max_iter) {
      fate.iterations = n;
      return fate;
    }
    history[n % ring] = z;
    if (n >= cfg.transient) {
      if (auto cycle = detect_cycle(map, z, history, n, cfg)) {
        fate.kind = FateKind::cycle;
        fate.iterations = n;
        fate.label = "cycle" + std::to_string(cycle->period);
        fate.location = cycle->points.front();
        fate.cycle = std::move(cycle);
        return fate;
      }
    }
    try {
      z = eval_chart(map, z);
    } catch (const IndeterminateValue&) {
      fate.iterations = n;
      return fate;
    }
    if (on_circle) z.value /= std::abs(z.value);
  }
}

OrbitFate iterate_orbit(const RationalMap& map, const SpherePoint& z0,
                        const AttractorSet& attractors, const IterationConfig& cfg) {
  return iterate_orbit(map, to_chart(z0), attractors, cfg);
}

CriticalOrbits run_critical_orbits(Complex alpha, const IterationConfig& cfg) {
  RationalMap map = build_operator(alpha);
  CriticalOrbits out{AttractorSet(map, cfg), stability_report(alpha), critical_points(alpha), {}};
  for (const auto& fp : out.fixed_points) {
    if (fp.label == FixedPointLabel::zero || fp.label == FixedPointLabel::infinity) continue;
    if (fp.stability == Stability::repelling) continue;
    out.attractors.add(std::string(to_string(fp.label)), {fp.chart}, fp.multiplier,
                       AttractorProvenance::known_fixed);
  }
  // In the alpha -> 1 limit c1 -> 0 and c2 -> infinity.
  const std::array<ChartPoint, 2> seeds =
      out.critical.free_points.empty()
          ? std::array<ChartPoint, 2>{ChartPoint{Complex{}, false}, ChartPoint{Complex{}, true}}
          : std::array<ChartPoint, 2>{out.critical.free_points[0], out.critical.free_points[1]};
  for (std::size_t i = 0; i < 2; ++i) {
    out.fates[i] = iterate_orbit(map, seeds[i], out.attractors, cfg);
  }
  return out;
}

AttractorSet find_attractors(Complex alpha, const IterationConfig& cfg) {
  CriticalOrbits orbits = run_critical_orbits(alpha, cfg);
  AttractorSet set = orbits.attractors;
  for (const auto& fate : orbits.fates) {
    if (fate.kind != FateKind::cycle) continue;
    const CycleRecord& c = *fate.cycle;
    std::string label = c.period == 1 ? "fixed" : "cycle" + std::to_string(c.period);
    if (set.find(label) != AttractorSet::npos) label += "#2";
    set.add(std::move(label), c.chart_points, c.multiplier, AttractorProvenance::critical_orbit);
  }
  return set;
}

std::vector<CycleRecord> find_cycles(Complex alpha, const IterationConfig& cfg) {
  const CriticalOrbits orbits = run_critical_orbits(alpha, cfg);
  std::vector<CycleRecord> out;
  for (const auto& fate : orbits.fates) {
    if (fate.kind != FateKind::cycle || fate.cycle->period < 2) continue;
    const CycleRecord& c = *fate.cycle;
    const bool seen = std::any_of(out.begin(), out.end(), [&](const CycleRecord& r) {
      return std::any_of(r.chart_points.begin(), r.chart_points.end(), [&](const ChartPoint& q) {
        return chart_distance(c.chart_points.front(), q) <= 10.0 * cfg.eps_converge;
      });
    });
    if (!seen) out.push_back(c);
  }
  return out;
}

}  // namespace chebydyn
