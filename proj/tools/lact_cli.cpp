#include "lact_cli.hpp"

#include <cstdint>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lact/errors.hpp"
#include "lact/fbp.hpp"
#include "lact/geometry.hpp"
#include "lact/io.hpp"
#include "lact/measurement.hpp"
#include "lact/metrics.hpp"
#include "lact/operator_norm.hpp"
#include "lact/pdhg.hpp"
#include "lact/phantom.hpp"
#include "lact/psdm.hpp"
#include "lact/score.hpp"
#include "lact/wedge.hpp"

namespace lact::cli {

namespace {

constexpr double kPi = 3.14159265358979323846;

double rad(double deg) { return deg * kPi / 180.0; }

struct GeoOpts {
  std::string preset;
  std::string beam = "parallel";
  double angle_start = 0.0;  // degrees
  double angle_end = 120.0;  // degrees
  int views = 60;
  int n_det = 256;
  double det_spacing = 1.0;  // mm; fan: mm along the detector arc
  double fov = 128.0;
  double src_to_origin = 538.52;
  double src_to_det = 946.7;
  CLI::App* sub = nullptr;
};

void add_geometry_flags(CLI::App* sub, GeoOpts& g) {
  g.sub = sub;
  sub->add_option("--preset", g.preset,
                  "Geometry preset: desk (parallel, 256 det @ 1 mm, 128 mm fov) "
                  "or fan835 (clinical equiangular fan)")
      ->check(CLI::IsMember({"desk", "fan835"}));
  sub->add_option("--beam", g.beam, "Beam type")
      ->check(CLI::IsMember({"parallel", "fan"}));
  sub->add_option("--angle-start", g.angle_start, "First view angle, degrees");
  sub->add_option("--angle-end", g.angle_end,
                  "End of the covered arc, degrees; views are equispaced on "
                  "[start, end)");
  sub->add_option("--views", g.views, "Number of view angles");
  sub->add_option("--n-det", g.n_det, "Detector element count");
  sub->add_option("--det-spacing", g.det_spacing,
                  "Detector pitch, mm (fan: mm along the detector arc)");
  sub->add_option("--fov", g.fov, "Field-of-view radius, mm");
  sub->add_option("--src-to-origin", g.src_to_origin,
                  "Fan only: source to rotation center, mm");
  sub->add_option("--src-to-det", g.src_to_det,
                  "Fan only: source to detector arc, mm");
}

ScanGeometry make_geometry(const GeoOpts& g) {
  GeoOpts e = g;
  if (g.preset == "desk") {
    e.beam = "parallel";
    if (!g.sub->count("--n-det")) e.n_det = 256;
    if (!g.sub->count("--det-spacing")) e.det_spacing = 1.0;
    if (!g.sub->count("--fov")) e.fov = 128.0;
  } else if (g.preset == "fan835") {
    e.beam = "fan";
    if (!g.sub->count("--n-det")) e.n_det = 835;
    if (!g.sub->count("--det-spacing")) e.det_spacing = 1.095;
    if (!g.sub->count("--fov")) e.fov = 250.0;
  }
  const double a0 = rad(e.angle_start);
  const double a1 = rad(e.angle_end);
  if (e.beam == "fan")
    return build_geometry(BeamType::FanEquiangular, a0, a1, e.views, e.n_det,
                          e.det_spacing / e.src_to_det, e.src_to_origin,
                          e.src_to_det, e.fov);
  return build_geometry(BeamType::Parallel, a0, a1, e.views, e.n_det,
                        e.det_spacing, 0.0, 0.0, e.fov);
}

FbpFilter parse_filter(const std::string& name) {
  if (name == "ram-lak") return FbpFilter::RamLak;
  if (name == "shepp-logan") return FbpFilter::SheppLogan;
  return FbpFilter::Hann;
}

std::unique_ptr<ScoreFunction> make_score(const std::string& spec, const Image* reference,
                                          const NoiseSchedule& sched) {
  if (spec == "oracle") {
    if (reference == nullptr)
      throw InvalidConfig("cli", "--score oracle requires --reference");
    return std::make_unique<OracleScore>(*reference, sched);
  }
  if (spec == "zero") return std::make_unique<ZeroScore>();
  if (spec.rfind("gmm:", 0) == 0)
    return std::make_unique<GmmScore>(read_gmm_prior(spec.substr(4)), sched);
  throw InvalidConfig("cli", "unknown score '" + spec +
                                 "' (expected oracle, zero, or gmm:<file>)");
}

void maybe_png(const std::string& path, const Image& img,
               const std::vector<double>& window) {
  if (!path.empty()) write_png(path, img, window[0], window[1]);
}

void emit_metrics(const Image& img, const Image& reference, double range,
                  const std::string& metrics_path) {
  const std::string doc = metrics_json(evaluate_all(img, reference, range));
  std::cout << doc;
  if (!metrics_path.empty()) write_text_atomic(metrics_path, doc);
}

struct PhantomOpts {
  std::string kind = "shepp-logan";
  int size = 128;
  std::uint64_t seed = 0;
  double pixel_size = 1.0;
  std::string out, png;
  std::vector<double> window{0.0, 1.0};
};

void do_phantom(const PhantomOpts& o) {
  const PhantomKind kind =
      o.kind == "cardiac" ? PhantomKind::EllipseCardiac : PhantomKind::SheppLogan;
  const Image img = make_phantom(kind, o.size, o.seed, o.pixel_size);
  write_lact(o.out, img);
  maybe_png(o.png, img, o.window);
}

struct SimOpts {
  std::string phantom;
  GeoOpts geo;
  double mu_scale = 0.02;
  double i0 = 1e5;
  double sigma_e = 10.0;
  double epsilon = 0.5;
  bool no_noise = false;
  std::uint64_t seed = 0;
  std::string out;
};

void do_simulate(const SimOpts& o) {
  const Image phantom = read_lact_image(o.phantom);  // normalized units
  const ScanGeometry geom = make_geometry(o.geo);
  const UnitMap units{o.mu_scale, 0.0};
  const Image att = units.to_attenuation(phantom);
  Sinogram y;
  if (o.no_noise) {
    y = simulate_measurement(att, geom, nullptr, 0);
  } else {
    const NoiseModel nm{o.i0, o.sigma_e, o.epsilon};
    y = simulate_measurement(att, geom, &nm, o.seed);
  }
  write_lact(o.out, y);
}

struct RecOpts {
  std::string sino;
  GeoOpts geo;
  std::string method = "fbp";
  int size = 128;
  double pixel_size = 1.0;
  std::string filter = "ram-lak";
  double lambda = -1.0;
  int iters = 300;
  int steps = 1000;
  int inner = 30;
  std::uint64_t seed = 0;
  std::string score = "oracle";
  std::string reference;
  double snr = 0.16;
  double ff_lo = 0.4;
  double ff_hi = 0.8;
  bool no_ff = false;
  bool complement = false;
  bool deterministic = false;
  double sigma_min = 0.01;
  double sigma_max = 1.0;
  double mu_scale = 0.02;
  double range = 1.0;
  std::string out, png, trace, metrics;
  std::vector<double> window{0.0, 1.0};
  CLI::App* sub = nullptr;
};

void do_reconstruct(const RecOpts& o) {
  const Sinogram y = read_lact_sinogram(o.sino);
  const ScanGeometry geom = make_geometry(o.geo);
  const GridSpec grid{o.size, o.size, o.pixel_size};
  const UnitMap units{o.mu_scale, 0.0};

  Image reference;
  const bool have_ref = !o.reference.empty();
  if (have_ref) reference = read_lact_image(o.reference);

  Image x_n;
  if (o.method == "fbp") {
    Image att = fbp(y, geom, parse_filter(o.filter), grid);
    att.unit = Unit::Attenuation;
    x_n = units.to_normalized(att);
  } else if (o.method == "pdhg") {
    Image warm = fbp(y, geom, parse_filter(o.filter), grid);
    warm.unit = Unit::Attenuation;
    const double lambda =
        o.lambda >= 0.0 ? o.lambda : default_tv_lambda(y, warm);
    const OperatorNormResult norm = operator_norm(geom, grid);
    const PdhgParams params = PdhgParams::from_norm(norm.value, lambda, o.iters);
    const PdhgResult res =
        pdhg_tv(y, geom, params, &warm, OpMode::Tomography, grid);
    if (!o.trace.empty()) {
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < res.diag.objective.size(); ++i)
        rows.push_back({static_cast<double>(i + 1), res.diag.objective[i],
                        res.diag.primal_change[i], res.diag.residual[i]});
      write_csv(o.trace, {"iteration", "objective", "primal_change", "residual"},
                rows);
    }
    x_n = units.to_normalized(res.x);
  } else {  // psdm
    const NoiseSchedule sched(o.sigma_min, o.sigma_max, o.steps);
    const std::unique_ptr<ScoreFunction> score =
        make_score(o.score, have_ref ? &reference : nullptr, sched);
    PsdmConfig cfg;
    cfg.schedule = sched;
    cfg.snr = o.snr;
    cfg.ff_lo = o.ff_lo;
    cfg.ff_hi = o.ff_hi;
    cfg.fuse_enabled = !o.no_ff;
    cfg.complement_lact = o.complement;
    cfg.pdhg_iters = o.inner;
    cfg.lambda = o.lambda;
    cfg.units = units;
    if (o.sub->count("--filter")) cfg.filter = parse_filter(o.filter);
    cfg.deterministic = o.deterministic;
    cfg.seed = o.seed;
    cfg.trace_reference = have_ref ? &reference : nullptr;
    const PsdmResult res = psdm_reconstruct(y, geom, *score, cfg, grid);
    if (!o.trace.empty()) {
      std::vector<std::string> header{"step", "sigma", "residual", "fused"};
      if (have_ref) header.push_back("psnr_db");
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < res.trace.residual.size(); ++i) {
        std::vector<double> row{static_cast<double>(i), res.trace.sigma[i],
                                res.trace.residual[i],
                                static_cast<double>(res.trace.fused[i])};
        if (have_ref) row.push_back(res.trace.psnr_db[i]);
        rows.push_back(std::move(row));
      }
      write_csv(o.trace, header, rows);
    }
    x_n = units.to_normalized(res.x);
  }

  write_lact(o.out, x_n);
  maybe_png(o.png, x_n, o.window);
  if (have_ref) emit_metrics(x_n, reference, o.range, o.metrics);
}

struct EvalOpts {
  std::string image, reference, metrics;
  double range = 1.0;
};

void do_evaluate(const EvalOpts& o) {
  const Image img = read_lact_image(o.image);
  const Image reference = read_lact_image(o.reference);
  emit_metrics(img, reference, o.range, o.metrics);
}

struct MaskOpts {
  GeoOpts geo;
  int size = 128;
  std::string out, png;
};

void do_mask(const MaskOpts& o) {
  const ScanGeometry geom = make_geometry(o.geo);
  const FrequencyMask mask = build_missing_wedge_mask(geom, o.size, o.size);
  Image img(mask.width, mask.height);
  for (std::size_t i = 0; i < mask.data.size(); ++i)
    img.data[i] = static_cast<double>(mask.data[i]);
  write_lact(o.out, img);
  maybe_png(o.png, img, {0.0, 1.0});
}

struct RenderOpts {
  std::string input, out;
  std::vector<double> window{0.0, 1.0};
};

void do_render(const RenderOpts& o) {
  Image img;
  switch (peek_lact_kind(o.input)) {
    case LactKind::Image:
      img = read_lact_image(o.input);
      break;
    case LactKind::Sinogram: {
      const Sinogram s = read_lact_sinogram(o.input);
      img = Image(s.n_det, s.n_angles, s.det_spacing);
      img.data = s.data;
      break;
    }
    case LactKind::VectorField: {
      const VectorField f = read_lact_vector_field(o.input);
      img = Image(f.width, f.height);
      for (std::size_t i = 0; i < f.size(); ++i)
        img.data[i] = std::sqrt(f.dx[i] * f.dx[i] + f.dy[i] * f.dy[i]);
      break;
    }
    case LactKind::ComplexGrid: {
      const ComplexGrid g = read_lact_complex_grid(o.input);
      img = Image(g.width, g.height);
      for (std::size_t i = 0; i < g.data.size(); ++i) img.data[i] = std::abs(g.data[i]);
      break;
    }
  }
  write_png(o.out, img, o.window[0], o.window[1]);
}

void add_window_flag(CLI::App* sub, std::vector<double>& window) {
  sub->add_option("--window", window,
                  "PNG display window (low high), normalized units")
      ->expected(2);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"limited-angle CT reconstruction toolkit"};
  app.require_subcommand(1);
  // Options for a subcommand live in a section named after it, e.g.
  //   [reconstruct]
  //   method=psdm
  app.set_config("--config", "",
                 "Read options from an INI file (one [section] per "
                 "subcommand); command-line flags override file values");

  PhantomOpts ph;
  CLI::App* ph_cmd = app.add_subcommand("phantom", "Generate a phantom image");
  ph_cmd->add_option("--kind", ph.kind, "Phantom family")
      ->check(CLI::IsMember({"shepp-logan", "cardiac"}));
  ph_cmd->add_option("--size", ph.size, "Image side length, pixels");
  ph_cmd->add_option("--seed", ph.seed, "Seed (cardiac only)");
  ph_cmd->add_option("--pixel-size", ph.pixel_size, "Pixel pitch, mm");
  ph_cmd->add_option("-o,--output", ph.out, "Output image (LACT1)")->required();
  ph_cmd->add_option("--png", ph.png, "Also render a PNG");
  add_window_flag(ph_cmd, ph.window);
  ph_cmd->callback([&ph] { do_phantom(ph); });

  SimOpts sim;
  CLI::App* sim_cmd =
      app.add_subcommand("simulate", "Project a phantom and add measurement noise");
  sim_cmd->add_option("--phantom", sim.phantom, "Phantom image, normalized units")
      ->required();
  add_geometry_flags(sim_cmd, sim.geo);
  sim_cmd->add_option("--mu-scale", sim.mu_scale,
                      "Attenuation per normalized unit, 1/mm");
  sim_cmd->add_option("--i0", sim.i0, "Incident photons per ray");
  sim_cmd->add_option("--sigma-e", sim.sigma_e, "Electronic noise std, counts");
  sim_cmd->add_option("--epsilon", sim.epsilon, "Count floor before the log");
  sim_cmd->add_flag("--no-noise", sim.no_noise, "Write clean line integrals");
  sim_cmd->add_option("--seed", sim.seed, "Noise seed");
  sim_cmd->add_option("-o,--output", sim.out, "Output sinogram (LACT1)")->required();
  sim_cmd->callback([&sim] { do_simulate(sim); });

  RecOpts rec;
  CLI::App* rec_cmd = app.add_subcommand("reconstruct", "Reconstruct a sinogram");
  rec.sub = rec_cmd;
  rec_cmd->add_option("--sinogram", rec.sino, "Input sinogram (LACT1)")->required();
  add_geometry_flags(rec_cmd, rec.geo);
  rec_cmd->add_option("--method", rec.method, "Reconstruction method")
      ->check(CLI::IsMember({"fbp", "pdhg", "psdm"}));
  rec_cmd->add_option("--size", rec.size, "Output grid side length, pixels");
  rec_cmd->add_option("--pixel-size", rec.pixel_size, "Output pixel pitch, mm");
  rec_cmd->add_option("--filter", rec.filter,
                      "Ramp apodization (fbp and warm starts; psdm anchor "
                      "defaults to hann)")
      ->check(CLI::IsMember({"ram-lak", "shepp-logan", "hann"}));
  rec_cmd->add_option("--lambda", rec.lambda,
                      "TV weight; negative selects the data-driven heuristic");
  rec_cmd->add_option("--iters", rec.iters, "pdhg: iteration count");
  rec_cmd->add_option("--steps", rec.steps, "psdm: outer (schedule) steps");
  rec_cmd->add_option("--inner", rec.inner, "psdm: data-consistency iterations per step");
  rec_cmd->add_option("--seed", rec.seed, "psdm: sampling seed");
  rec_cmd->add_option("--score", rec.score, "psdm: oracle | zero | gmm:<file>");
  rec_cmd->add_option("--reference", rec.reference,
                      "Ground truth, normalized units (oracle score, trace PSNR, "
                      "metrics)");
  rec_cmd->add_option("--snr", rec.snr, "psdm: corrector signal-to-noise");
  rec_cmd->add_option("--ff-lo", rec.ff_lo, "psdm: fusion window start, fraction");
  rec_cmd->add_option("--ff-hi", rec.ff_hi, "psdm: fusion window end, fraction");
  rec_cmd->add_flag("--no-ff", rec.no_ff, "psdm: disable spectral fusion");
  rec_cmd->add_flag("--complement-lact", rec.complement,
                    "psdm: weight the measured branch by 1 - mask");
  rec_cmd->add_flag("--deterministic", rec.deterministic,
                    "psdm: zero init, no injected noise");
  rec_cmd->add_option("--sigma-min", rec.sigma_min, "psdm: schedule floor");
  rec_cmd->add_option("--sigma-max", rec.sigma_max, "psdm: schedule ceiling");
  rec_cmd->add_option("--mu-scale", rec.mu_scale,
                      "Attenuation per normalized unit, 1/mm");
  rec_cmd->add_option("--range", rec.range, "Metrics data range");
  rec_cmd->add_option("-o,--output", rec.out, "Output image (LACT1), normalized")
      ->required();
  rec_cmd->add_option("--png", rec.png, "Also render a PNG");
  rec_cmd->add_option("--trace", rec.trace, "Write a per-step CSV trace");
  rec_cmd->add_option("--metrics", rec.metrics,
                      "Write the metrics JSON here as well (needs --reference)");
  add_window_flag(rec_cmd, rec.window);
  rec_cmd->callback([&rec] { do_reconstruct(rec); });

  EvalOpts ev;
  CLI::App* ev_cmd = app.add_subcommand("evaluate", "Compare two images");
  ev_cmd->add_option("image,--image", ev.image, "Image under test (LACT1)")
      ->required();
  ev_cmd->add_option("--reference", ev.reference, "Reference image (LACT1)")
      ->required();
  ev_cmd->add_option("--range", ev.range, "Metrics data range");
  ev_cmd->add_option("--metrics", ev.metrics, "Write the JSON report here as well");
  ev_cmd->callback([&ev] { do_evaluate(ev); });

  MaskOpts mk;
  CLI::App* mk_cmd =
      app.add_subcommand("mask", "Write the missing-wedge frequency mask");
  add_geometry_flags(mk_cmd, mk.geo);
  mk_cmd->add_option("--size", mk.size, "Mask side length, bins");
  mk_cmd->add_option("-o,--output", mk.out, "Output mask (LACT1 image, 0/1)")
      ->required();
  mk_cmd->add_option("--png", mk.png, "Also render a PNG");
  mk_cmd->callback([&mk] { do_mask(mk); });

  RenderOpts rn;
  CLI::App* rn_cmd = app.add_subcommand("render", "Export any LACT1 file as PNG");
  rn_cmd->add_option("input,--input", rn.input, "LACT1 file")->required();
  rn_cmd->add_option("-o,--output", rn.out, "Output PNG")->required();
  add_window_flag(rn_cmd, rn.window);
  rn_cmd->callback([&rn] { do_render(rn); });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace lact::cli
