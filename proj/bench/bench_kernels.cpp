#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "tiltspdc/biphoton.hpp"
#include "tiltspdc/hom.hpp"
#include "tiltspdc/units.hpp"

using namespace tiltspdc;

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 512;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 5;

  ScenarioConfig cfg;
  cfg.crystal = bundled_crystal("BBO");
  cfg.pump.bandwidth_fwhm = 0.0036;
  cfg.grid = FrequencyGrid::square(n, 0.15);
  const JsaContext ctx = resolve_context(cfg);
  cfg.pump.phi = solve_tilt_correlation(ctx.waves.pump, ctx.waves.signal, ctx.waves.idler);

  std::printf("threads: %d, grid: %zu x %zu, best of %d\n", omp_get_max_threads(), n, n, reps);
  JointSpectrum js;
  const double jsa_serial = best_of(reps, [&] { js = build_jsa(cfg, ExecutionPolicy::kSerial); });
  const double jsa_parallel = best_of(reps, [&] { js = build_jsa(cfg, ExecutionPolicy::kParallel); });
  std::printf("build_jsa           serial %9.2f ms  parallel %9.2f ms  speedup %.2f\n", jsa_serial,
              jsa_parallel, jsa_serial / jsa_parallel);

  const ComplexCurve s0 = s_zero(js);
  const DelayWindow w = default_delay_window(js);
  std::vector<double> delays(w.points);
  for (std::size_t m = 0; m < w.points; ++m) {
    delays[m] = w.min + (w.max - w.min) * static_cast<double>(m) / static_cast<double>(w.points - 1);
  }
  std::vector<double> rate;
  const double hom_serial =
      best_of(reps, [&] { rate = rates_from_s_zero(s0, delays, ExecutionPolicy::kSerial); });
  const double hom_parallel =
      best_of(reps, [&] { rate = rates_from_s_zero(s0, delays, ExecutionPolicy::kParallel); });
  std::printf("coincidence rates   serial %9.2f ms  parallel %9.2f ms  speedup %.2f\n", hom_serial,
              hom_parallel, hom_serial / hom_parallel);
  return 0;
}
