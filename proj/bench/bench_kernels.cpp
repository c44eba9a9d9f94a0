// Wall-clock comparison of the OpenMP kernels against their serial references.
// Thread count follows QUADSPIN_THREADS / OMP_NUM_THREADS.

#include <chrono>
#include <cstdio>
#include <omp.h>

#include "quadspin/config.hpp"
#include "quadspin/runner.hpp"
#include "quadspin/threads.hpp"
#include "quadspin/wigner.hpp"

using namespace quadspin;

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    if (dt.count() < best) best = dt.count();
  }
  return best;
}

void report(const char* name, double parallel, double serial, double diff) {
  std::printf("%-28s parallel %9.4f s  serial %9.4f s  speedup %6.2fx  max|diff| %.2e\n", name, parallel, serial,
              serial / parallel, diff);
}

}  // namespace

int main() {
  configure_threads_from_env();
  std::printf("threads: %d\n", omp_get_max_threads());

  for (Preset p : {Preset::na23, Preset::cs133}) {
    const SimulationConfig cfg = make_preset_config(p);
    const Generator gen = make_generator(cfg);
    const DensityMatrix rho0 = coherent_state(cfg.spin, cfg.initial);
    const TimeGrid grid = TimeGrid::windowed(parse_window_list("1:50:1001"), 64, cfg.period());
    PropagateOptions opts;
    opts.enforce_psd = false;

    std::vector<PropagatedSample> fast, slow;
    const double tp = best_of(3, [&] { fast = propagate_grid(rho0, gen, grid, opts); });
    const double ts = best_of(3, [&] { slow = propagate_grid_reference(rho0, gen, grid, opts); });
    double diff = 0.0;
    for (std::size_t i = 0; i < fast.size(); ++i) {
      diff = std::max(diff, (fast[i].rho.matrix() - slow[i].rho.matrix()).cwiseAbs().maxCoeff());
    }
    const std::string name = "propagate_grid " + std::string(preset_name(p));
    report(name.c_str(), tp, ts, diff);

    WignerGrid wf, ws;
    const double wp = best_of(3, [&] { wf = wigner_grid(fast.back().rho, 181, 361); });
    const double wsr = best_of(3, [&] { ws = wigner_grid_reference(fast.back().rho, 181, 361); });
    double wdiff = 0.0;
    for (std::size_t i = 0; i < wf.values.size(); ++i) wdiff = std::max(wdiff, std::abs(wf.values[i] - ws.values[i]));
    const std::string wname = "wigner_grid " + std::string(preset_name(p));
    report(wname.c_str(), wp, wsr, wdiff);
  }
  return 0;
}
