// Timing comparison between the serial reference kernels and their parallel
// counterparts: k-means restarts, the incremental MI tracker versus a naive
// per-step rescan, and sweep throughput.
#include <chrono>
#include <cstdio>
#include <vector>

#include "parl/adversary.hpp"
#include "parl/harness.hpp"
#include "parl/mutual_info.hpp"
#include "parl/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace parl;

namespace {

double now_s() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

PointSet synthetic_blobs(std::size_t n) {
  RngStream rng(2718);
  PointSet p;
  p.dim = 2;
  p.data.reserve(2 * n);
  const double levels[4] = {0.05, 0.30, 0.55, 0.90};
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t blob = rng.next_below(4);
    p.data.push_back(blob * 0.25 + rng.next_double() * 0.25);
    p.data.push_back(levels[blob] + (rng.next_double() - 0.5) * 0.05);
  }
  return p;
}

void bench_kmeans() {
  const PointSet points = synthetic_blobs(60000);
  const std::size_t k = 6, restarts = 16;

  double t0 = now_s();
  const ClusterModel serial = kmeans_serial(points, k, 7, restarts);
  const double t_serial = now_s() - t0;

  t0 = now_s();
  const ClusterModel parallel = kmeans(points, k, 7, restarts);
  const double t_parallel = now_s() - t0;

  std::printf("kmeans   %zu pts k=%zu restarts=%zu : serial %.3fs  parallel %.3fs  "
              "speedup %.2fx  (wcss match: %s)\n",
              points.size(), k, restarts, t_serial, t_parallel, t_serial / t_parallel,
              serial.wcss == parallel.wcss ? "yes" : "NO");
}

void bench_mi_tracker() {
  const std::size_t steps = 20000;
  RngStream rng(3);
  std::vector<StateId> s(steps);
  std::vector<ActionId> a(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    s[i] = static_cast<StateId>(rng.next_below(4));
    a[i] = static_cast<ActionId>(rng.next_below(21));
  }

  double t0 = now_s();
  MiTracker tracker(4, 21);
  double inc = 0.0;
  for (std::size_t i = 0; i < steps; ++i) inc = tracker.push(s[i], a[i]);
  const double t_inc = now_s() - t0;

  t0 = now_s();
  HistoryQueues h;
  double naive = 0.0;
  for (std::size_t i = 0; i < steps; ++i) {
    h.push(s[i], a[i]);
    naive = mutual_information(h, 4, 21);
  }
  const double t_naive = now_s() - t0;

  std::printf("mi trace %zu steps            : rescan %.3fs  incremental %.3fs  "
              "speedup %.1fx  (estimates match: %s)\n",
              steps, t_naive, t_inc, t_naive / t_inc, inc == naive ? "yes" : "NO");
}

void bench_sweep() {
  KeyValueConfig kv = KeyValueConfig::from_text(
      "environment = classroom\nsteps = 1500\nmitigation = adaparl\n"
      "sweep.zeta = 0.2,0.4,0.6,0.8\nsweep.seeds = 4\n");
  const ExperimentConfig cfg = ExperimentConfig::from_config(std::move(kv));

  const double t0 = now_s();
  const auto rows = run_sweep(cfg);
  const double dt = now_s() - t0;
  std::printf("sweep    %zu grid runs         : %.3fs (%.1f runs/s)\n", rows.size(), dt,
              rows.size() / dt);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("openmp enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("openmp disabled; parallel paths run serially\n");
#endif
  bench_kmeans();
  bench_mi_tracker();
  bench_sweep();
  return 0;
}
