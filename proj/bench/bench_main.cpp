// Timing comparison of the serial reference paths (threads = 1) against the
// OpenMP kernels (threads = 0, all cores) for the three data-parallel loops:
// pair sweeps, sphere scans, and random-triple experiments. Also verifies
// that both paths produce identical results.

#include <chrono>
#include <cstdio>

#include "skewcheck/constructions.hpp"
#include "skewcheck/local_condition.hpp"
#include "skewcheck/skewness.hpp"
#include "skewcheck/stratification.hpp"

using namespace skewcheck;

namespace {

template <class F>
double time_ms(F&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms, bool equal) {
  std::printf("%-28s %10.1f ms %10.1f ms   %5.2fx   results %s\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms, equal ? "equal" : "DIFFER");
}

}  // namespace

int main() {
  std::printf("%-28s %13s %13s %8s\n", "kernel", "serial", "openmp", "speedup");

  {
    const PolyMap f = skew_cubic(2);
    SweepOptions serial_opts;
    serial_opts.trials = 20000;
    serial_opts.threads = 1;
    SweepOptions parallel_opts = serial_opts;
    parallel_opts.threads = 0;
    SweepReport a, b;
    const double ts = time_ms([&] { a = sweep_neighborhood(f, Vec::Zero(2), serial_opts); });
    const double tp = time_ms([&] { b = sweep_neighborhood(f, Vec::Zero(2), parallel_opts); });
    row("pair sweep (20k pairs)", ts, tp,
        a.min_sigma == b.min_sigma && (a.worst_p - b.worst_p).norm() == 0.0);
  }

  {
    const PolyMap f = skew_cubic(3);
    LocalOptions serial_opts;
    serial_opts.samples_per_dim = 8192;
    serial_opts.threads = 1;
    LocalOptions parallel_opts = serial_opts;
    parallel_opts.threads = 0;
    LocalConditionReport a, b;
    const double ts = time_ms([&] { a = check_local_condition(f, Vec::Zero(3), serial_opts); });
    const double tp = time_ms([&] { b = check_local_condition(f, Vec::Zero(3), parallel_opts); });
    row("sphere scan (24k samples)", ts, tp,
        a.min_sigma == b.min_sigma && (a.argmin_y - b.argmin_y).norm() == 0.0);
  }

  {
    GenericityOptions serial_opts;
    serial_opts.threads = 1;
    GenericityOptions parallel_opts;
    parallel_opts.threads = 0;
    GenericityReport a, b;
    const double ts = time_ms([&] { a = genericity_experiment(2, 6, 100, serial_opts); });
    const double tp = time_ms([&] { b = genericity_experiment(2, 6, 100, parallel_opts); });
    row("genericity (100 triples)", ts, tp,
        a.failures == b.failures && a.quartiles == b.quartiles);
  }

  return 0;
}
