#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <set>

#include "chebydyn/render.hpp"

using namespace chebydyn;

namespace {

PlaneSpec small_dyn(Complex alpha, double half, int px) {
  PlaneSpec s = default_dynamical_plane(alpha, px, px);
  s.half_width = s.half_height = half;
  return s;
}

}  // namespace

TEST(PlaneSpec, Validation) {
  PlaneSpec s = default_parameter_plane();
  EXPECT_NO_THROW(s.validate());
  s.width_px = 0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = default_parameter_plane();
  s.half_height = 0.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(PlaneSpec, PixelMapping) {
  PlaneSpec s;
  s.center = {1.0, 2.0};
  s.half_width = 2.0;
  s.half_height = 1.0;
  s.width_px = 4;
  s.height_px = 2;
  // Pixel centres: re in {-0.5, 0.5, 1.5, 2.5}, im in {2.5, 1.5}; row 0 on top.
  EXPECT_EQ(s.pixel_to_point(0, 0), Complex(-0.5, 2.5));
  EXPECT_EQ(s.pixel_to_point(3, 1), Complex(2.5, 1.5));
  EXPECT_EQ(s.pixel_to_point(0, 0, -0.5, -0.5), Complex(-1.0, 3.0));
}

TEST(PlaneSpec, Defaults) {
  const PlaneSpec p = default_parameter_plane();
  EXPECT_EQ(p.center.real() - p.half_width, -0.5);
  EXPECT_EQ(p.center.real() + p.half_width, 4.5);
  EXPECT_EQ(p.half_height, 2.0);
  EXPECT_EQ(p.width_px, 600);
  EXPECT_EQ(p.height_px, 480);
  const PlaneSpec d = default_dynamical_plane(3.0);
  EXPECT_EQ(d.half_width, 3.0);
  EXPECT_EQ(d.kind, PlaneKind::dynamical);
}

TEST(ClassifyParameter, Landmarks) {
  const IterationConfig cfg;
  EXPECT_EQ(classify_parameter(2.0, cfg).tag, param_tag::strange_fixed);
  EXPECT_EQ(classify_parameter(1.0, cfg).tag, param_tag::roots_only);
  EXPECT_EQ(classify_parameter(3.55, cfg).tag, param_tag::strange_cycle);
  EXPECT_EQ(classify_parameter(0.25, cfg).tag, param_tag::undecided);
  EXPECT_TRUE(is_strange_tag(param_tag::strange_cycle));
  EXPECT_FALSE(is_strange_tag(param_tag::undecided));
}

TEST(RenderDynamical, SuperHalleySplitsAtUnitCircle) {
  const ClassificationGrid g = render_dynamical_plane(small_dyn(1.0, 2.0, 64));
  ASSERT_EQ(g.cells.size(), 64u * 64u);
  for (int j = 0; j < 64; ++j) {
    for (int i = 0; i < 64; ++i) {
      const Complex z = g.spec.pixel_to_point(i, j);
      const std::string& label = g.legend.at(g.at(i, j).tag);
      if (std::abs(z) < 0.999) EXPECT_EQ(label, "0") << z;
      if (std::abs(z) > 1.001) EXPECT_EQ(label, "inf") << z;
    }
  }
}

TEST(RenderDynamical, FourBasinsAtThree) {
  const ClassificationGrid g = render_dynamical_plane(small_dyn(3.0, 2.0, 64));
  std::set<std::string> seen;
  for (const Cell& c : g.cells) seen.insert(g.legend.at(c.tag));
  for (const char* l : {"0", "inf", "s1", "s2"}) EXPECT_TRUE(seen.contains(l)) << l;
}

TEST(RenderDynamical, AntennaHasTwoBasins) {
  const ClassificationGrid g = render_dynamical_plane(small_dyn(0.25, 3.0, 81));
  std::set<std::string> converged;
  bool zero_outside = false, inf_inside = false;
  for (int j = 0; j < 81; ++j) {
    for (int i = 0; i < 81; ++i) {
      const std::string& l = g.legend.at(g.at(i, j).tag);
      if (l == "undecided") continue;
      converged.insert(l);
      const double r = std::abs(g.spec.pixel_to_point(i, j));
      zero_outside |= l == "0" && r > 1.0;
      inf_inside |= l == "inf" && r < 1.0;
    }
  }
  EXPECT_EQ(converged, (std::set<std::string>{"0", "inf"}));
  EXPECT_TRUE(zero_outside);
  EXPECT_TRUE(inf_inside);
}

TEST(RenderParameter, MirrorSymmetricAndThreadIndependent) {
  PlaneSpec s = default_parameter_plane(50, 40);
  s.iteration.max_iter = 200;
  s.iteration.transient = 100;
  const ClassificationGrid one = render_parameter_plane(s, {1, false});
  const ClassificationGrid four = render_parameter_plane(s, {4, false});
  EXPECT_EQ(one.cells, four.cells);
  for (int j = 0; j < 40; ++j) {
    for (int i = 0; i < 50; ++i) EXPECT_EQ(one.at(i, j), one.at(i, 39 - j));
  }
}

TEST(RenderParameter, SupersampleIsSymmetricToo) {
  PlaneSpec s = default_parameter_plane(24, 20);
  const ClassificationGrid g = render_parameter_plane(s, {2, true});
  for (int j = 0; j < 20; ++j) {
    for (int i = 0; i < 24; ++i) EXPECT_EQ(g.at(i, j), g.at(i, 19 - j));
  }
}

TEST(RenderParameter, MoreIterationsNeverFlipDecidedPixels) {
  PlaneSpec low = default_parameter_plane(40, 32);
  low.iteration.max_iter = 60;
  low.iteration.transient = 30;
  PlaneSpec high = low;
  high.iteration.max_iter = 400;
  high.iteration.transient = 30;
  const ClassificationGrid a = render_parameter_plane(low);
  const ClassificationGrid b = render_parameter_plane(high);
  for (std::size_t k = 0; k < a.cells.size(); ++k) {
    if (a.cells[k].tag == param_tag::undecided) continue;
    EXPECT_EQ(a.cells[k].tag, b.cells[k].tag) << k;
  }
}

TEST(ResolveThreads, EnvironmentCap) {
  ::setenv("CHEBYDYN_THREADS", "2", 1);
  EXPECT_EQ(resolve_threads(8), 2u);
  EXPECT_EQ(resolve_threads(1), 1u);
  ::setenv("CHEBYDYN_THREADS", "junk", 1);
  EXPECT_EQ(resolve_threads(3), 3u);
  ::unsetenv("CHEBYDYN_THREADS");
  EXPECT_GE(resolve_threads(0), 1u);
}

TEST(GridJson, RoundTrip) {
  const ClassificationGrid g = render_dynamical_plane(small_dyn(3.0, 2.0, 17));
  const ClassificationGrid back = grid_from_json(grid_to_json(g));
  EXPECT_EQ(back.cells, g.cells);
  EXPECT_EQ(back.legend, g.legend);
  EXPECT_EQ(back.spec.alpha, g.spec.alpha);
  EXPECT_EQ(back.spec.width_px, 17);
  EXPECT_EQ(back.stats(), g.stats());
}

TEST(GridJson, StatsCountEveryPixel) {
  const ClassificationGrid g = render_dynamical_plane(small_dyn(2.0, 2.0, 20));
  std::size_t total = 0;
  for (const auto& [label, n] : g.stats()) total += n;
  EXPECT_EQ(total, 400u);
  EXPECT_TRUE(g.stats().contains("undecided"));
}

TEST(GridJson, RejectsMalformed) {
  EXPECT_THROW(grid_from_json("{"), std::invalid_argument);
  const ClassificationGrid g = render_dynamical_plane(small_dyn(1.0, 2.0, 4));
  std::string text = grid_to_json(g);
  // Shorten the grid so the runs no longer fit.
  text.replace(text.find("\"width_px\":4"), 12, "\"width_px\":3");
  EXPECT_THROW(grid_from_json(text), std::invalid_argument);
}

TEST(Bifurcation, WindowsMatchDiskPredicates) {
  const BifurcationData d = bifurcation_scan(1.0, 4.0, 1e-3);
  ASSERT_EQ(d.alphas.size(), d.one.size());
  ASSERT_EQ(d.alphas.size(), d.c2.size());
  ASSERT_EQ(d.one_windows.size(), 1u);
  EXPECT_NEAR(d.one_windows[0].lo, 11.0 / 6.0, 2e-3);
  EXPECT_NEAR(d.one_windows[0].hi, 2.5, 2e-3);
  ASSERT_EQ(d.s_windows.size(), 1u);
  EXPECT_NEAR(d.s_windows[0].lo, 2.5, 2e-3);
  EXPECT_NEAR(d.s_windows[0].hi, 3.5, 2e-3);
}

TEST(Bifurcation, CriticalMeetsFixedAtThree) {
  const BifurcationData d = bifurcation_scan(2.0, 4.0, 0.5);
  ASSERT_EQ(d.alphas[2], 3.0);
  EXPECT_LT(std::abs(d.c1[2].value() - d.s1[2].location.value()), 1e-10);
  EXPECT_LT(std::abs(d.c2[2].value() - d.s2[2].location.value()), 1e-10);
}

TEST(Bifurcation, CsvShape) {
  const std::string csv = bifurcation_to_csv(bifurcation_scan(1.0, 2.0, 0.25));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
  EXPECT_EQ(csv.rfind("alpha,", 0), 0u);
  EXPECT_THROW(bifurcation_scan(2.0, 1.0, 0.1), std::invalid_argument);
  EXPECT_THROW(bifurcation_scan(1.0, 2.0, 0.0), std::invalid_argument);
}
