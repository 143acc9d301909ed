#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chebydyn/fixed_critical.hpp"
#include "chebydyn/rational_map.hpp"
#include "chebydyn/sphere.hpp"

namespace chebydyn {

struct IterationConfig {
  int max_iter = 500;
  double eps_converge = 1e-8;
  int confirm_steps = 2;
  int max_period = 32;
  int transient = 200;

  // Throws std::invalid_argument unless max_iter > transient >= 0,
  // max_period >= 1, confirm_steps >= 1 and eps_converge > 0.
  void validate() const;
};

// Orbits started within this distance of the unit circle of a
// circle-preserving map are kept on the circle.
inline constexpr double kInvariantCircleTol = 1e-10;

enum class AttractorProvenance { known_fixed, critical_orbit };

struct Attractor {
  std::string label;
  std::vector<ChartPoint> points;  // one per cycle element, normalized charts
  // Radius (in each point's chart) of a disk on which the period-th iterate
  // is a strict contraction toward the point; never below eps_converge.
  std::vector<double> capture_radius;
  Complex multiplier;
  AttractorProvenance provenance = AttractorProvenance::known_fixed;

  int period() const noexcept { return static_cast<int>(points.size()); }
};

class AttractorSet {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  // Seeds 0 ("0") and infinity ("inf").
  AttractorSet(RationalMap map, IterationConfig cfg);

  // Adds an attracting (or parabolic) fixed point or cycle. Entries closer
  // than 2 * eps_converge to an existing entry are merged; the existing
  // index is returned in that case.
  std::size_t add(std::string label, std::vector<ChartPoint> points, Complex multiplier,
                  AttractorProvenance provenance);

  const std::vector<Attractor>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const Attractor& operator[](std::size_t i) const { return entries_[i]; }
  const RationalMap& map() const noexcept { return map_; }
  const IterationConfig& config() const noexcept { return cfg_; }

  // Index of the entry with a point whose capture disk contains z; the
  // matching cycle element goes to *point_index when non-null.
  std::size_t locate(const ChartPoint& z, std::size_t* point_index = nullptr) const;

  // Index of the entry with the given label, or npos.
  std::size_t find(const std::string& label) const;

 private:
  double capture_radius_for(const std::vector<ChartPoint>& points, std::size_t k,
                            double multiplier_modulus) const;

  RationalMap map_;
  IterationConfig cfg_;
  std::vector<Attractor> entries_;
};

struct CycleRecord {
  int period = 0;
  std::vector<ChartPoint> chart_points;
  std::vector<SpherePoint> points;
  Complex multiplier;  // product of derivatives along the cycle
};

enum class FateKind { converged, cycle, undecided };

struct OrbitFate {
  FateKind kind = FateKind::undecided;
  int iterations = 0;
  std::size_t attractor = AttractorSet::npos;  // converged only
  std::string label = "undecided";
  SpherePoint location;  // attractor point reached, or first cycle point
  std::optional<CycleRecord> cycle;

  bool decided() const noexcept { return kind != FateKind::undecided; }
};

// Iterates the map in normalized charts. Converged once the orbit sits in the
// capture disk of one attractor for confirm_steps consecutive iterates; after
// the transient, a return within eps_converge at lag p (p = 1..max_period,
// smallest first) with |multiplier| < 1 yields a cycle fate; undecided at
// max_iter or on an indeterminate value.
OrbitFate iterate_orbit(const RationalMap& map, const ChartPoint& z0,
                        const AttractorSet& attractors, const IterationConfig& cfg);
OrbitFate iterate_orbit(const RationalMap& map, const SpherePoint& z0,
                        const AttractorSet& attractors, const IterationConfig& cfg);

// Attractor set seeded with 0, infinity and the non-repelling strange fixed
// points, plus the fates of both free critical orbits against it.
struct CriticalOrbits {
  AttractorSet attractors;
  std::vector<FixedPointInfo> fixed_points;
  CriticalSet critical;
  std::array<OrbitFate, 2> fates;
};

CriticalOrbits run_critical_orbits(Complex alpha, const IterationConfig& cfg);

AttractorSet find_attractors(Complex alpha, const IterationConfig& cfg);

// Attracting cycles of period >= 2 reached by the free critical orbits.
std::vector<CycleRecord> find_cycles(Complex alpha, const IterationConfig& cfg);

}  // namespace chebydyn
