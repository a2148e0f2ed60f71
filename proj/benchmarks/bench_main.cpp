// Microbenchmarks for the hot paths: projections, filtered backprojection,
// the PDHG inner loop, the centered FFT pair, and one sampler sweep.

#include <benchmark/benchmark.h>

#include <numbers>

#include "lact/fbp.hpp"
#include "lact/fourier.hpp"
#include "lact/geometry.hpp"
#include "lact/pdhg.hpp"
#include "lact/phantom.hpp"
#include "lact/projector.hpp"
#include "lact/psdm.hpp"
#include "lact/rng.hpp"
#include "lact/sampler.hpp"
#include "lact/schedule.hpp"
#include "lact/score.hpp"

namespace {

using namespace lact;

constexpr double kPi = std::numbers::pi;

struct Scene {
  ScanGeometry geom;
  GridSpec grid;
  Image x;
  Sinogram y;
};

Scene make_scene(int size) {
  Scene s;
  s.geom = desk_parallel_geometry(0.0, 2.0 * kPi / 3.0, 60);
  s.grid = GridSpec{size, size, 1.0};
  Image ph = make_phantom(PhantomKind::SheppLogan, size);
  for (auto& v : ph.data) v *= 0.02;
  ph.unit = Unit::Attenuation;
  s.x = ph;
  s.y = forward_project(ph, s.geom);
  return s;
}

void bm_forward_project(benchmark::State& state) {
  const Scene s = make_scene(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(forward_project(s.x, s.geom));
}
BENCHMARK(bm_forward_project)->Arg(64)->Arg(128)->Arg(256);

void bm_back_project(benchmark::State& state) {
  const Scene s = make_scene(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(back_project(s.y, s.geom, s.grid));
}
BENCHMARK(bm_back_project)->Arg(64)->Arg(128)->Arg(256);

void bm_fbp(benchmark::State& state) {
  const Scene s = make_scene(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(fbp(s.y, s.geom, FbpFilter::Hann, s.grid));
}
BENCHMARK(bm_fbp)->Arg(64)->Arg(128)->Arg(256);

void bm_pdhg_iteration(benchmark::State& state) {
  const Scene s = make_scene(static_cast<int>(state.range(0)));
  PdhgParams p = PdhgParams::from_norm(12.0, 1e-3, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(pdhg_tv(s.y, s.geom, p, &s.x, OpMode::Tomography, s.grid));
}
BENCHMARK(bm_pdhg_iteration)->Arg(64)->Arg(128);

void bm_centered_dft_roundtrip(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(5);
  Image img(n, n);
  for (auto& v : img.data) v = rng.uniform();
  for (auto _ : state)
    benchmark::DoNotOptimize(inverse_centered_dft2(centered_dft2(img)));
}
BENCHMARK(bm_centered_dft_roundtrip)->Arg(64)->Arg(256);

void bm_sampler_sweep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const NoiseSchedule sched(0.01, 1.0, 100);
  const Image target = make_phantom(PhantomKind::SheppLogan, n);
  const OracleScore score(target, sched);
  Rng rng(7);
  Image x(n, n);
  for (auto& v : x.data) v = rng.normal();
  for (auto _ : state) {
    Image stepped = predictor_step(x, score, sched, 50, &rng, true);
    stepped = corrector_step(stepped, score, sched, 49, &rng, 0.16);
    benchmark::DoNotOptimize(stepped);
  }
}
BENCHMARK(bm_sampler_sweep)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
