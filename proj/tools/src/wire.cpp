#include "chebydyn/tools/wire.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "chebydyn/analysis.hpp"
#include "chebydyn/fixed_critical.hpp"
#include "chebydyn/render.hpp"

namespace chebydyn::tools {

using nlohmann::json;

double parse_double(std::string_view text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  // from_chars rejects a leading '+', which users type.
  const char* begin = (!text.empty() && text.front() == '+') ? text.data() + 1 : text.data();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw std::invalid_argument("not a finite number: '" + std::string(text) + "'");
  }
  return v;
}

long long parse_int(std::string_view text) {
  long long v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return v;
}

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ') s += ch;
  }
  if (s.empty()) throw std::invalid_argument("empty complex number");
  if (s.back() != 'i') return {parse_double(s), 0.0};

  s.pop_back();
  // Split at the last sign that is not a leading sign or part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re = split == std::string::npos ? "" : s.substr(0, split);
  std::string im = split == std::string::npos ? s : s.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : parse_double(re), parse_double(im)};
}

IterationConfig iteration_for(int max_iter) {
  IterationConfig cfg;
  cfg.max_iter = max_iter;
  cfg.transient = std::min(cfg.transient, max_iter / 2);
  return cfg;
}

namespace {

json point_json(const SpherePoint& p) {
  if (p.is_infinity()) return {{"infinity", true}};
  return {{"re", p.value().real()}, {"im", p.value().imag()}, {"infinity", false}};
}

json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json fate_json(const OrbitFate& f) {
  static constexpr const char* kinds[] = {"converged", "cycle", "undecided"};
  json j = {{"kind", kinds[static_cast<int>(f.kind)]}, {"label", f.label}, {"iterations", f.iterations}};
  if (f.decided()) j["location"] = point_json(f.location);
  return j;
}

}  // namespace

std::string classify_json(Complex alpha, const IterationConfig& cfg) {
  json doc;
  doc["alpha"] = complex_json(alpha);

  json fixed = json::array();
  for (const FixedPointInfo& f : stability_report(alpha)) {
    fixed.push_back({{"label", to_string(f.label)},
                     {"location", point_json(f.location)},
                     {"multiplier", complex_json(f.multiplier)},
                     {"multiplier_modulus", std::abs(f.multiplier)},
                     {"multiplicity", f.multiplicity},
                     {"stability", to_string(f.stability)}});
  }
  doc["fixed_points"] = fixed;

  const CriticalSet crit = critical_points(alpha);
  json critical = json::array();
  static constexpr const char* crit_labels[] = {"0", "inf", "c1", "c2"};
  for (std::size_t k = 0; k < crit.points.size(); ++k) {
    critical.push_back({{"label", crit_labels[k]}, {"location", point_json(crit.points[k])}});
  }
  doc["critical_points"] = critical;
  doc["critical_degenerate"] = crit.degenerate;

  const CatVerdict v = cat_membership(alpha, cfg);
  json verdict = {{"verdict", to_string(v.verdict)}, {"describe", v.describe()}};
  if (v.verdict == Verdict::strange) {
    verdict["kind"] = v.strange_kind == StrangeKind::cycle ? "cycle" : "fixed-point";
    if (v.strange_kind == StrangeKind::cycle) verdict["period"] = v.period;
  }
  verdict["evidence"] = json::array({fate_json(v.evidence[0]), fate_json(v.evidence[1])});
  doc["cat_verdict"] = verdict;

  json cycles = json::array();
  for (const CycleRecord& c : find_cycles(alpha, cfg)) {
    json pts = json::array();
    for (const auto& p : c.points) pts.push_back(point_json(p));
    cycles.push_back({{"period", c.period},
                      {"points", pts},
                      {"multiplier", complex_json(c.multiplier)},
                      {"multiplier_modulus", std::abs(c.multiplier)}});
  }
  doc["cycles"] = cycles;
  return doc.dump();
}

std::string meta_json() {
  const auto viewport = [](const PlaneSpec& s) {
    return json{{"re0", s.center.real() - s.half_width}, {"re1", s.center.real() + s.half_width},
                {"im0", s.center.imag() - s.half_height}, {"im1", s.center.imag() + s.half_height},
                {"w", s.width_px}, {"h", s.height_px}};
  };
  json doc;
  doc["default_viewports"] = {{"parameter", viewport(default_parameter_plane())},
                              {"dynamical", viewport(default_dynamical_plane({}))}};
  doc["landmarks"] = {
      {"head", {{"center", kHeadCenter}, {"radius", kHeadRadius}}},
      {"body", {{"center", kBodyCenter}, {"radius", kBodyRadius}}},
      {"antennas", json::array({json::array({0.0, 0.5}), json::array({1.5, 2.0})})},
  };
  doc["parameter_legend"] = {{"0", "roots-only"}, {"1", "strange-fixed-point"},
                             {"2", "strange-cycle"}, {"3", "undecided"}};
  doc["limits"] = {{"max_pixels", kMaxPixels}, {"max_iter", {1, kMaxIterLimit}}};
  doc["defaults"] = {{"max_iter", IterationConfig{}.max_iter}};
  return doc.dump();
}

}  // namespace chebydyn::tools
