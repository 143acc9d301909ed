#include "chebydyn/render.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "chebydyn/analysis.hpp"

namespace chebydyn {

void PlaneSpec::validate() const {
  if (width_px < 1 || height_px < 1) throw std::invalid_argument("PlaneSpec: pixel dimensions must be >= 1");
  if (!(half_width > 0.0) || !(half_height > 0.0)) {
    throw std::invalid_argument("PlaneSpec: half extents must be > 0");
  }
  if (!std::isfinite(center.real()) || !std::isfinite(center.imag()) ||
      !std::isfinite(half_width) || !std::isfinite(half_height)) {
    throw std::invalid_argument("PlaneSpec: non-finite viewport");
  }
  iteration.validate();
}

Complex PlaneSpec::pixel_to_point(int i, int j, double du, double dv) const {
  // Integer numerators keep rows j and height-1-j exact mirrors of each other.
  const double x = (2.0 * (i + du) + 1.0 - width_px) * half_width / width_px;
  const double y = (height_px - 1.0 - 2.0 * (j + dv)) * half_height / height_px;
  return {center.real() + x, center.imag() + y};
}

PlaneSpec default_parameter_plane(int width_px, int height_px) {
  PlaneSpec spec;
  spec.center = {2.0, 0.0};
  spec.half_width = 2.5;
  spec.half_height = 2.0;
  spec.width_px = width_px;
  spec.height_px = height_px;
  spec.kind = PlaneKind::parameter;
  return spec;
}

PlaneSpec default_dynamical_plane(Complex alpha, int width_px, int height_px) {
  PlaneSpec spec;
  spec.center = {0.0, 0.0};
  spec.half_width = 3.0;
  spec.half_height = 3.0;
  spec.width_px = width_px;
  spec.height_px = height_px;
  spec.kind = PlaneKind::dynamical;
  spec.alpha = alpha;
  return spec;
}

std::map<std::string, std::size_t> ClassificationGrid::stats() const {
  std::map<std::uint8_t, std::size_t> by_tag;
  for (const Cell& c : cells) ++by_tag[c.tag];
  std::map<std::string, std::size_t> out;
  for (const auto& [tag, label] : legend) {
    const auto it = by_tag.find(tag);
    out[label] += it == by_tag.end() ? 0 : it->second;
  }
  return out;
}

unsigned resolve_threads(unsigned requested) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("CHEBYDYN_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(cap, &end, 10);
    if (end != cap && v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return std::max(1u, n);
}

bool is_strange_tag(std::uint8_t tag) noexcept {
  return tag == param_tag::strange_fixed || tag == param_tag::strange_cycle;
}

namespace {

// Fills every cell by calling `classify(point)`; rows are handed out to
// workers through an atomic counter, so the output does not depend on the
// schedule.
template <class Classify>
std::vector<Cell> rasterize(const PlaneSpec& spec, const RenderOptions& opts, Classify classify) {
  std::vector<Cell> cells(static_cast<std::size_t>(spec.width_px) * spec.height_px);
  std::atomic<int> next_row{0};
  const auto worker = [&] {
    for (int j = next_row++; j < spec.height_px; j = next_row++) {
      for (int i = 0; i < spec.width_px; ++i) {
        Cell& out = cells[static_cast<std::size_t>(j) * spec.width_px + i];
        if (!opts.supersample) {
          out = classify(spec.pixel_to_point(i, j));
          continue;
        }
        static constexpr std::array<double, 2> offsets{-0.25, 0.25};
        std::array<Cell, 4> sub{};
        int s = 0;
        for (double dv : offsets) {
          for (double du : offsets) sub[s++] = classify(spec.pixel_to_point(i, j, du, dv));
        }
        std::map<std::uint8_t, int> votes;
        std::uint64_t iters = 0;
        for (const Cell& c : sub) {
          ++votes[c.tag];
          iters += c.iterations;
        }
        // Ties go to the smallest tag.
        const auto best = std::max_element(votes.begin(), votes.end(), [](const auto& a, const auto& b) {
          return a.second < b.second;
        });
        out.tag = best->first;
        out.iterations = static_cast<std::uint32_t>(iters / sub.size());
      }
    }
  };
  const unsigned n = std::min<unsigned>(resolve_threads(opts.threads), spec.height_px);
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  return cells;
}

}  // namespace

Cell classify_parameter(Complex alpha, const IterationConfig& cfg) {
  const CatVerdict v = cat_membership(alpha, cfg);
  Cell cell;
  cell.iterations = static_cast<std::uint32_t>(
      std::max(v.evidence[0].iterations, v.evidence[1].iterations));
  switch (v.verdict) {
    case Verdict::roots_only: cell.tag = param_tag::roots_only; break;
    case Verdict::undecided: cell.tag = param_tag::undecided; break;
    case Verdict::strange:
      cell.tag = v.strange_kind == StrangeKind::cycle ? param_tag::strange_cycle
                                                      : param_tag::strange_fixed;
      break;
  }
  return cell;
}

ClassificationGrid render_parameter_plane(const PlaneSpec& spec, const RenderOptions& opts) {
  spec.validate();
  if (spec.kind != PlaneKind::parameter) {
    throw std::invalid_argument("render_parameter_plane: spec.kind must be parameter");
  }
  ClassificationGrid grid;
  grid.spec = spec;
  grid.legend = {{param_tag::roots_only, "roots-only"},
                 {param_tag::strange_fixed, "strange-fixed-point"},
                 {param_tag::strange_cycle, "strange-cycle"},
                 {param_tag::undecided, "undecided"}};
  grid.cells = rasterize(spec, opts, [&](Complex alpha) { return classify_parameter(alpha, spec.iteration); });
  return grid;
}

ClassificationGrid render_dynamical_plane(const PlaneSpec& spec, const RenderOptions& opts) {
  spec.validate();
  if (spec.kind != PlaneKind::dynamical) {
    throw std::invalid_argument("render_dynamical_plane: spec.kind must be dynamical");
  }
  const AttractorSet attractors = find_attractors(spec.alpha, spec.iteration);
  if (attractors.size() >= dyn_tag::other_cycle) {
    throw std::runtime_error("render_dynamical_plane: too many attractors for 8-bit tags");
  }
  ClassificationGrid grid;
  grid.spec = spec;
  for (std::size_t k = 0; k < attractors.size(); ++k) {
    grid.legend[static_cast<std::uint8_t>(k)] = attractors[k].label;
  }
  grid.legend[dyn_tag::other_cycle] = "cycle";
  grid.legend[dyn_tag::undecided] = "undecided";

  const RationalMap& map = attractors.map();
  grid.cells = rasterize(spec, opts, [&](Complex z) {
    const OrbitFate fate = iterate_orbit(map, SpherePoint(z), attractors, spec.iteration);
    Cell cell;
    cell.iterations = static_cast<std::uint32_t>(fate.iterations);
    switch (fate.kind) {
      case FateKind::converged: cell.tag = static_cast<std::uint8_t>(fate.attractor); break;
      case FateKind::cycle: cell.tag = dyn_tag::other_cycle; break;
      case FateKind::undecided: cell.tag = dyn_tag::undecided; break;
    }
    return cell;
  });
  return grid;
}

namespace {

using nlohmann::json;

json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from(const json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

template <class T, class Get>
json run_length(const std::vector<Cell>& cells, Get get) {
  json runs = json::array();
  std::size_t k = 0;
  while (k < cells.size()) {
    const T v = get(cells[k]);
    std::size_t n = 1;
    while (k + n < cells.size() && get(cells[k + n]) == v) ++n;
    runs.push_back(json::array({v, n}));
    k += n;
  }
  return runs;
}

}  // namespace

std::string grid_to_json(const ClassificationGrid& grid, bool include_cells) {
  const PlaneSpec& s = grid.spec;
  json doc;
  doc["spec"] = {
      {"center", complex_json(s.center)},
      {"half_width", s.half_width},
      {"half_height", s.half_height},
      {"width_px", s.width_px},
      {"height_px", s.height_px},
      {"kind", s.kind == PlaneKind::parameter ? "parameter" : "dynamical"},
      {"alpha", complex_json(s.alpha)},
      {"iteration",
       {{"max_iter", s.iteration.max_iter},
        {"eps_converge", s.iteration.eps_converge},
        {"confirm_steps", s.iteration.confirm_steps},
        {"max_period", s.iteration.max_period},
        {"transient", s.iteration.transient}}},
  };
  json legend = json::object();
  for (const auto& [tag, label] : grid.legend) legend[std::to_string(tag)] = label;
  doc["legend"] = legend;
  if (include_cells) {
    doc["cells"] = {
        {"encoding", "rle"},
        {"tags", run_length<int>(grid.cells, [](const Cell& c) { return static_cast<int>(c.tag); })},
        {"iterations", run_length<std::uint32_t>(grid.cells, [](const Cell& c) { return c.iterations; })},
    };
  }
  json stats = json::object();
  for (const auto& [label, count] : grid.stats()) stats[label] = count;
  doc["stats"] = stats;
  return doc.dump();
}

ClassificationGrid grid_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    ClassificationGrid grid;
    const json& s = doc.at("spec");
    PlaneSpec& spec = grid.spec;
    spec.center = complex_from(s.at("center"));
    spec.half_width = s.at("half_width").get<double>();
    spec.half_height = s.at("half_height").get<double>();
    spec.width_px = s.at("width_px").get<int>();
    spec.height_px = s.at("height_px").get<int>();
    const std::string kind = s.at("kind").get<std::string>();
    if (kind != "parameter" && kind != "dynamical") throw std::invalid_argument("unknown plane kind");
    spec.kind = kind == "parameter" ? PlaneKind::parameter : PlaneKind::dynamical;
    spec.alpha = complex_from(s.at("alpha"));
    const json& it = s.at("iteration");
    spec.iteration.max_iter = it.at("max_iter").get<int>();
    spec.iteration.eps_converge = it.at("eps_converge").get<double>();
    spec.iteration.confirm_steps = it.at("confirm_steps").get<int>();
    spec.iteration.max_period = it.at("max_period").get<int>();
    spec.iteration.transient = it.at("transient").get<int>();
    spec.validate();

    for (const auto& [key, label] : doc.at("legend").items()) {
      const int tag = std::stoi(key);
      if (tag < 0 || tag > 255) throw std::invalid_argument("legend tag out of range");
      grid.legend[static_cast<std::uint8_t>(tag)] = label.get<std::string>();
    }

    const std::size_t n = static_cast<std::size_t>(spec.width_px) * spec.height_px;
    grid.cells.resize(n);
    const json& cells = doc.at("cells");
    const auto expand = [&](const json& runs, auto assign) {
      std::size_t k = 0;
      for (const auto& run : runs) {
        const auto count = run.at(1).get<std::size_t>();
        if (k + count > n) throw std::invalid_argument("run-length data exceeds grid size");
        for (std::size_t m = 0; m < count; ++m) assign(grid.cells[k + m], run.at(0));
        k += count;
      }
      if (k != n) throw std::invalid_argument("run-length data does not cover the grid");
    };
    expand(cells.at("tags"), [&](Cell& c, const json& v) {
      const int tag = v.get<int>();
      if (!grid.legend.contains(static_cast<std::uint8_t>(tag)) || tag < 0 || tag > 255) {
        throw std::invalid_argument("cell tag missing from legend");
      }
      c.tag = static_cast<std::uint8_t>(tag);
    });
    expand(cells.at("iterations"), [](Cell& c, const json& v) { c.iterations = v.get<std::uint32_t>(); });
    return grid;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("grid_from_json: ") + e.what());
  }
}

BifurcationData bifurcation_scan(double alpha_min, double alpha_max, double step) {
  if (!(alpha_min < alpha_max) || !(step > 0.0)) {
    throw std::invalid_argument("bifurcation_scan: need alpha_min < alpha_max and step > 0");
  }
  BifurcationData data;
  const auto count = static_cast<std::size_t>(std::floor((alpha_max - alpha_min) / step + 1e-9)) + 1;
  for (std::size_t k = 0; k < count; ++k) {
    const double a = alpha_min + static_cast<double>(k) * step;
    data.alphas.push_back(a);
    const auto report = stability_report(Complex{a, 0.0});
    const auto sample = [](const FixedPointInfo& f) {
      return TrackSample{f.location, std::abs(f.multiplier), f.stability};
    };
    const FixedPointInfo* one = nullptr;
    const FixedPointInfo* s1 = nullptr;
    const FixedPointInfo* s2 = nullptr;
    for (const auto& f : report) {
      switch (f.label) {
        case FixedPointLabel::zero: data.zero.push_back(sample(f)); break;
        case FixedPointLabel::one: one = &f; break;
        case FixedPointLabel::s1: s1 = &f; break;
        case FixedPointLabel::s2: s2 = &f; break;
        case FixedPointLabel::infinity: break;
      }
    }
    // Merged cases: s1 = s2 (alpha = 1/2) or s1 = s2 = 1 (alpha = 5/2).
    if (s1 == nullptr) s1 = one;
    if (s2 == nullptr) s2 = s1;
    data.one.push_back(sample(*one));
    data.s1.push_back(sample(*s1));
    data.s2.push_back(sample(*s2));

    const CriticalSet crit = critical_points(Complex{a, 0.0});
    if (crit.free_points.empty()) {
      data.c1.emplace_back(Complex{});
      data.c2.push_back(SpherePoint::infinity());
    } else {
      data.c1.push_back(crit.points[2]);
      data.c2.push_back(crit.points[3]);
    }
  }

  const auto windows = [&](const std::vector<TrackSample>& track) {
    std::vector<AlphaWindow> out;
    const auto attracting = [&](std::size_t k) {
      return track[k].stability == Stability::attracting ||
             track[k].stability == Stability::superattracting;
    };
    std::size_t k = 0;
    while (k < track.size()) {
      if (!attracting(k)) {
        ++k;
        continue;
      }
      std::size_t end = k;
      while (end + 1 < track.size() && attracting(end + 1)) ++end;
      const double lo = k == 0 ? data.alphas[k] : 0.5 * (data.alphas[k - 1] + data.alphas[k]);
      const double hi = end + 1 == track.size() ? data.alphas[end]
                                                 : 0.5 * (data.alphas[end] + data.alphas[end + 1]);
      out.push_back({lo, hi});
      k = end + 1;
    }
    return out;
  };
  data.one_windows = windows(data.one);
  data.s_windows = windows(data.s1);
  return data;
}

std::string bifurcation_to_csv(const BifurcationData& data) {
  std::string out =
      "alpha,one_mult,one_stability,s1_re,s1_im,s1_mult,s1_stability,s2_re,s2_im,s2_mult,"
      "s2_stability,c1_re,c1_im,c2_re,c2_im\n";
  char buf[64];
  const auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
  };
  const auto point = [&](const SpherePoint& p) {
    if (p.is_infinity()) {
      out += "inf,inf";
      return;
    }
    num(p.value().real());
    out += ',';
    num(p.value().imag());
  };
  for (std::size_t k = 0; k < data.alphas.size(); ++k) {
    num(data.alphas[k]);
    out += ',';
    num(data.one[k].multiplier_modulus);
    out += ',';
    out += to_string(data.one[k].stability);
    for (const auto* track : {&data.s1, &data.s2}) {
      out += ',';
      point((*track)[k].location);
      out += ',';
      num((*track)[k].multiplier_modulus);
      out += ',';
      out += to_string((*track)[k].stability);
    }
    out += ',';
    point(data.c1[k]);
    out += ',';
    point(data.c2[k]);
    out += '\n';
  }
  return out;
}

}  // namespace chebydyn
