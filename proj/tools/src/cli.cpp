#include "chebydyn/tools/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "chebydyn/analysis.hpp"
#include "chebydyn/image.hpp"
#include "chebydyn/render.hpp"
#include "chebydyn/tools/service.hpp"
#include "chebydyn/tools/wire.hpp"

namespace chebydyn::tools {

namespace {

struct FlagError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PlaneFlags {
  std::string out;
  std::string grid;
  std::string format;
  double re0, re1, im0, im1;
  int width, height;
  int max_iter = IterationConfig{}.max_iter;
  unsigned threads = 0;
  bool supersample = false;
  bool shade = false;
};

void add_plane_flags(CLI::App* cmd, PlaneFlags& f, const PlaneSpec& defaults) {
  f.re0 = defaults.center.real() - defaults.half_width;
  f.re1 = defaults.center.real() + defaults.half_width;
  f.im0 = defaults.center.imag() - defaults.half_height;
  f.im1 = defaults.center.imag() + defaults.half_height;
  f.width = defaults.width_px;
  f.height = defaults.height_px;
  cmd->add_option("--out,-o", f.out, "Image file (.ppm or .png)")->required();
  cmd->add_option("--format", f.format, "ppm or png (default: from the file extension)")
      ->check(CLI::IsMember({"ppm", "png"}));
  cmd->add_option("--grid", f.grid, "Also write the full run-length encoded grid as JSON");
  cmd->add_option("--re0", f.re0, "Left edge")->capture_default_str();
  cmd->add_option("--re1", f.re1, "Right edge")->capture_default_str();
  cmd->add_option("--im0", f.im0, "Bottom edge")->capture_default_str();
  cmd->add_option("--im1", f.im1, "Top edge")->capture_default_str();
  cmd->add_option("--width,-W", f.width, "Pixels across")->check(CLI::Range(1, 1 << 15))->capture_default_str();
  cmd->add_option("--height,-H", f.height, "Pixels down")->check(CLI::Range(1, 1 << 15))->capture_default_str();
  cmd->add_option("--max-iter", f.max_iter, "Iteration cap per orbit")
      ->check(CLI::Range(1, kMaxIterLimit))
      ->capture_default_str();
  cmd->add_option("--threads", f.threads, "Render workers (0: all cores)")->capture_default_str();
  cmd->add_flag("--supersample", f.supersample, "2x2 samples per pixel, majority vote");
  cmd->add_flag("--shade", f.shade, "Shade every pixel by iteration count");
}

PlaneSpec apply(const PlaneFlags& f, PlaneSpec spec) {
  if (!(f.re0 < f.re1) || !(f.im0 < f.im1)) throw FlagError("viewport needs re0 < re1 and im0 < im1");
  if (static_cast<long long>(f.width) * f.height > kMaxPixels) throw FlagError("image too large");
  spec.center = {0.5 * (f.re0 + f.re1), 0.5 * (f.im0 + f.im1)};
  spec.half_width = 0.5 * (f.re1 - f.re0);
  spec.half_height = 0.5 * (f.im1 - f.im0);
  spec.width_px = f.width;
  spec.height_px = f.height;
  spec.iteration = iteration_for(f.max_iter);
  return spec;
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream file(path, std::ios::binary);
  file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!file) throw std::runtime_error("cannot write " + path);
}

void write_plane(const ClassificationGrid& grid, const PlaneFlags& f, std::ostream& out) {
  Palette palette = default_palette(grid);
  palette.shade_iterations = f.shade;
  std::string format = f.format;
  if (format.empty()) format = f.out.ends_with(".png") ? "png" : "ppm";
  const auto bytes = format == "png" ? encode_png(grid, palette) : encode_ppm(grid, palette);
  write_file(f.out, std::string(bytes.begin(), bytes.end()));
  const std::string sidecar = grid_to_json(grid, false);
  write_file(f.out + ".json", sidecar);
  if (!f.grid.empty()) write_file(f.grid, grid_to_json(grid, true));
  out << sidecar << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dynamics of the Chebyshev-Halley family on quadratic polynomials", "chebydyn"};
  app.require_subcommand(1, 1);

  PlaneFlags param;
  auto* param_cmd = app.add_subcommand("param-plane", "Render the parameter plane (alpha plane)");
  add_plane_flags(param_cmd, param, default_parameter_plane());

  PlaneFlags dyn;
  std::string dyn_alpha;
  auto* dyn_cmd = app.add_subcommand("dyn-plane", "Render the dynamical plane of one alpha");
  add_plane_flags(dyn_cmd, dyn, default_dynamical_plane({}));
  dyn_cmd->add_option("--alpha,-a", dyn_alpha, "Parameter, e.g. 3+0i")->required();

  std::string classify_alpha;
  int classify_iter = IterationConfig{}.max_iter;
  auto* classify_cmd = app.add_subcommand("classify", "Fixed points, critical points and verdict as JSON");
  classify_cmd->add_option("--alpha,-a", classify_alpha, "Parameter, e.g. 2.5-0.1i")->required();
  classify_cmd->add_option("--max-iter", classify_iter, "Iteration cap per orbit")
      ->check(CLI::Range(1, kMaxIterLimit));

  double bif_min = 1.0, bif_max = 4.0, bif_step = 1e-3;
  std::string bif_out;
  auto* bif_cmd = app.add_subcommand("bifurcation", "Real-alpha scan of fixed and critical points as CSV");
  bif_cmd->add_option("--min", bif_min, "First alpha")->capture_default_str();
  bif_cmd->add_option("--max", bif_max, "Last alpha")->capture_default_str();
  bif_cmd->add_option("--step", bif_step, "Spacing")->check(CLI::PositiveNumber)->capture_default_str();
  bif_cmd->add_option("--out,-o", bif_out, "CSV file (default: stdout)");

  bool verify_json = false;
  auto* verify_cmd = app.add_subcommand("verify", "Check the closed-form special cases");
  verify_cmd->add_flag("--json", verify_json, "Print the report as JSON");

  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t cache = 64;
  unsigned serve_threads = 0;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
  serve_cmd->add_option("--host", host)->capture_default_str();
  serve_cmd->add_option("--port,-p", port)->check(CLI::Range(1, 65535))->capture_default_str();
  serve_cmd->add_option("--cache", cache, "Cached responses (0 disables)")->capture_default_str();
  serve_cmd->add_option("--threads", serve_threads, "Render workers per request")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (param_cmd->parsed()) {
      const PlaneSpec spec = apply(param, default_parameter_plane());
      write_plane(render_parameter_plane(spec, {param.threads, param.supersample}), param, out);
    } else if (dyn_cmd->parsed()) {
      Complex alpha;
      try {
        alpha = parse_complex(dyn_alpha);
      } catch (const std::invalid_argument& e) {
        throw FlagError(std::string("--alpha: ") + e.what());
      }
      const PlaneSpec spec = apply(dyn, default_dynamical_plane(alpha));
      write_plane(render_dynamical_plane(spec, {dyn.threads, dyn.supersample}), dyn, out);
    } else if (classify_cmd->parsed()) {
      Complex alpha;
      try {
        alpha = parse_complex(classify_alpha);
      } catch (const std::invalid_argument& e) {
        throw FlagError(std::string("--alpha: ") + e.what());
      }
      out << classify_json(alpha, iteration_for(classify_iter)) << "\n";
    } else if (bif_cmd->parsed()) {
      if (!(bif_min < bif_max)) throw FlagError("--min must be below --max");
      const std::string csv = bifurcation_to_csv(bifurcation_scan(bif_min, bif_max, bif_step));
      if (bif_out.empty()) {
        out << csv;
      } else {
        write_file(bif_out, csv);
      }
    } else if (verify_cmd->parsed()) {
      const VerificationReport report = verify_special_cases();
      if (verify_json) {
        out << report_to_json(report) << "\n";
      } else {
        for (const auto& row : report.rows) {
          out << (row.pass ? "PASS " : "FAIL ") << row.name << "  residual=" << row.residual << "\n";
        }
        out << report.rows.size() - report.failures() << "/" << report.rows.size() << " passed\n";
      }
      return report.all_passed() ? 0 : 1;
    } else if (serve_cmd->parsed()) {
      out << "listening on http://" << host << ":" << port << std::endl;
      if (!serve_http(host, port, {cache, serve_threads})) {
        err << "cannot bind " << host << ":" << port << "\n";
        return 1;
      }
    }
  } catch (const FlagError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace chebydyn::tools
