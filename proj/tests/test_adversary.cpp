#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "parl/adversary.hpp"
#include "parl/rng.hpp"

using namespace parl;

namespace {

PointSet points_1d(const std::vector<double>& xs) {
  PointSet p;
  p.dim = 1;
  p.data = xs;
  return p;
}

PointSet points_2d(const std::vector<std::pair<double, double>>& xs) {
  PointSet p;
  p.dim = 2;
  for (const auto& [x, y] : xs) {
    p.data.push_back(x);
    p.data.push_back(y);
  }
  return p;
}

// Exhaustive assignment oracle: global WCSS optimum over every labeling.
double brute_force_wcss(const PointSet& pts, std::size_t k) {
  const std::size_t n = pts.size();
  std::vector<std::size_t> assign(n, 0);
  double best = 1e300;
  const std::size_t total = static_cast<std::size_t>(std::pow(double(k), double(n)));
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      assign[i] = c % k;
      c /= k;
    }
    std::vector<double> sum(k * pts.dim, 0.0);
    std::vector<std::size_t> count(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t d = 0; d < pts.dim; ++d)
        sum[assign[i] * pts.dim + d] += pts.point(i)[d];
      ++count[assign[i]];
    }
    double wcss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (count[assign[i]] == 0) continue;
      for (std::size_t d = 0; d < pts.dim; ++d) {
        const double centroid =
            sum[assign[i] * pts.dim + d] / static_cast<double>(count[assign[i]]);
        const double diff = pts.point(i)[d] - centroid;
        wcss += diff * diff;
      }
    }
    best = std::min(best, wcss);
  }
  return best;
}

// Four equal-mass blobs: evenly phased time blocks, each at its own action
// level, as an even four-activity day produces.
PointSet four_blobs(std::uint64_t seed) {
  RngStream rng(seed);
  PointSet p;
  p.dim = 2;
  const struct {
    double x0, x1, y;
    int n;
  } blobs[] = {{0.00, 0.25, 0.05, 2000},
               {0.25, 0.50, 0.35, 2000},
               {0.50, 0.75, 0.65, 2000},
               {0.75, 1.00, 0.95, 2000}};
  for (const auto& b : blobs)
    for (int i = 0; i < b.n; ++i) {
      p.data.push_back(b.x0 + rng.next_double() * (b.x1 - b.x0));
      p.data.push_back(b.y + (rng.next_double() - 0.5) * 0.02);
    }
  return p;
}

}  // namespace

TEST_SUITE("adversary") {

TEST_CASE("featurize normalizes both axes by their declared ranges") {
  ActionTrace trace;
  trace.slots_per_day = 240;
  trace.n_actions = 21;
  trace.samples = {{0, 0, 0}, {0, 239, 20}, {1, 120, 10}};
  const PointSet pts = featurize(trace);
  CHECK(pts.point(0)[0] == 0.0);
  CHECK(pts.point(0)[1] == 0.0);
  CHECK(pts.point(1)[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pts.point(1)[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pts.point(2)[0] == doctest::Approx(120.0 / 239.0).epsilon(1e-12));
  CHECK(pts.point(2)[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("two tight blobs split cleanly") {
  RngStream rng(1);
  std::vector<double> xs;
  for (int i = 0; i < 50; ++i) xs.push_back(0.0 + (rng.next_double() - 0.5) * 1e-3);
  for (int i = 0; i < 50; ++i) xs.push_back(100.0 + (rng.next_double() - 0.5) * 1e-3);
  const ClusterModel m = kmeans(points_1d(xs), 2, 77);
  std::vector<double> centers{m.centroids[0], m.centroids[1]};
  std::sort(centers.begin(), centers.end());
  CHECK(std::fabs(centers[0] - 0.0) < 1e-3);
  CHECK(std::fabs(centers[1] - 100.0) < 1e-3);
}

TEST_CASE("k=1 returns the mean and the total scatter") {
  const PointSet p = points_1d({1.0, 2.0, 3.0, 6.0});
  const ClusterModel m = kmeans(p, 1, 5);
  CHECK(m.centroids[0] == doctest::Approx(3.0).epsilon(1e-12));
  // sum of squared deviations from the mean
  CHECK(m.wcss == doctest::Approx(4.0 + 1.0 + 0.0 + 9.0).epsilon(1e-12));
}

TEST_CASE("twelve points match the exhaustive optimum at k=3") {
  const PointSet p = points_2d({{0.0, 0.1}, {0.1, 0.0}, {0.05, 0.12}, {0.12, 0.07},
                                {1.0, 1.1}, {1.1, 0.95}, {0.9, 1.0}, {1.05, 1.05},
                                {2.0, 0.0}, {2.1, 0.1}, {1.95, 0.05}, {2.05, 0.12}});
  const double oracle = brute_force_wcss(p, 3);
  const ClusterModel m = kmeans(p, 3, 9);
  CHECK(m.wcss == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("parallel and serial paths agree exactly") {
  const PointSet p = four_blobs(3);
  for (std::size_t k : {1, 2, 4, 7}) {
    const ClusterModel a = kmeans(p, k, 123);
    const ClusterModel b = kmeans_serial(p, k, 123);
    CHECK(a.wcss == b.wcss);
    CHECK(a.assignments == b.assignments);
    CHECK(a.centroids == b.centroids);
  }
}

TEST_CASE("clustering is deterministic for a fixed seed") {
  const PointSet p = four_blobs(4);
  const ClusterModel a = kmeans(p, 4, 55);
  const ClusterModel b = kmeans(p, 4, 55);
  CHECK(a.wcss == b.wcss);
  CHECK(a.assignments == b.assignments);
  CHECK(kmeans(p, 4, 56).wcss >= 0.0);
  CHECK_THROWS_AS(kmeans(points_1d({1.0}), 2, 1), std::domain_error);
}

TEST_CASE("wcss is non-increasing in k under shared seeding") {
  for (std::uint64_t seed : {11ULL, 12ULL}) {
    const PointSet p = four_blobs(seed);
    const auto curve = wcss_curve(p, 10, 99);
    for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i] <= curve[i - 1] + 1e-9);
  }
}

TEST_CASE("elbow picks the first point of diminishing returns") {
  const std::vector<double> curve{100, 20, 18, 17, 16};
  CHECK(elbow_from_wcss(curve, 1000) == 2);
}

TEST_CASE("four well-separated blobs give an elbow of four") {
  const PointSet p = four_blobs(21);
  CHECK(elbow_k(p, 10, 2024) == 4);
}

TEST_CASE("a degenerate tight blob collapses to one cluster") {
  RngStream rng(6);
  std::vector<double> xs;
  for (int i = 0; i < 200; ++i) xs.push_back(0.5 + (rng.next_double() - 0.5) * 1e-7);
  CHECK(elbow_k(points_1d(xs), 10, 7) == 1);
  CHECK_THROWS_AS(elbow_k(points_1d(xs), 2, 7), std::domain_error);
}

TEST_CASE("accuracy is invariant under cluster relabeling") {
  const std::vector<std::uint32_t> clusters{1, 1, 0, 0};
  const std::vector<StateId> truth{0, 0, 1, 1};
  CHECK(clustering_accuracy(clusters, truth, 2) == 1.0);
  const std::vector<std::uint32_t> same{0, 0, 1, 1};
  CHECK(clustering_accuracy(same, truth, 2) == 1.0);
}

TEST_CASE("uniform random assignments score near chance") {
  RngStream rng(13);
  const std::size_t n = 10000;
  std::vector<std::uint32_t> clusters(n);
  std::vector<StateId> truth(n);
  for (std::size_t i = 0; i < n; ++i) {
    clusters[i] = static_cast<std::uint32_t>(rng.next_below(4));
    truth[i] = static_cast<StateId>(rng.next_below(4));
  }
  const double acc = clustering_accuracy(clusters, truth, 4);
  CHECK(acc > 0.23);
  CHECK(acc < 0.30);
}

TEST_CASE("surplus clusters score their samples as wrong") {
  const std::vector<std::uint32_t> clusters{0, 1, 2, 3};
  const std::vector<StateId> truth{0, 0, 0, 0};
  CHECK(clustering_accuracy(clusters, truth, 1) == doctest::Approx(0.25));
}

TEST_CASE("attack pipeline recovers blobs end to end") {
  // build a trace whose featurization is the four-blob geometry
  ActionTrace trace;
  trace.slots_per_day = 240;
  trace.n_actions = 21;
  RngStream rng(31);
  const struct {
    std::uint32_t s0, s1;
    ActionId a;
  } blocks[] = {{0, 60, 0}, {60, 120, 7}, {120, 180, 14}, {180, 240, 20}};
  for (std::uint32_t day = 0; day < 30; ++day)
    for (const auto& b : blocks)
      for (std::uint32_t slot = b.s0; slot < b.s1; ++slot)
        trace.samples.push_back({day, slot, b.a});
  const AttackResult res = attack_trace(trace, 77);
  CHECK(res.k == 4);
  CHECK(res.model.assignments.size() == trace.samples.size());
}

}  // TEST_SUITE
