#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "parl/qlearn.hpp"
#include "parl/rng.hpp"

namespace parl {

/// What the eavesdropper sees: per-sample day index, slot-of-day, and the
/// emitted action. Never states, rewards, or privacy telemetry.
struct TraceSample {
  std::uint32_t day;
  std::uint32_t slot;
  ActionId action;
};

struct ActionTrace {
  std::vector<TraceSample> samples;
  std::size_t slots_per_day;
  std::size_t n_actions;
};

/// Flat row-major point set.
struct PointSet {
  std::vector<double> data;
  std::size_t dim = 0;

  std::size_t size() const { return dim == 0 ? 0 : data.size() / dim; }
  const double* point(std::size_t i) const { return data.data() + i * dim; }
};

/// 2-D features per sample: (slot / (slots_per_day - 1), action / (A_n - 1)),
/// each axis normalized into [0,1] by its declared range.
PointSet featurize(const ActionTrace& trace);

struct ClusterModel {
  std::size_t k = 0;
  std::size_t dim = 0;
  std::vector<double> centroids;            // k * dim
  std::vector<std::uint32_t> assignments;   // one per point
  double wcss = 0.0;
};

/// Lloyd iteration with k-means++ seeding; one restart, fully serial. Kept as
/// the reference implementation the parallel path is tested against.
ClusterModel kmeans_single_restart(const PointSet& points, std::size_t k,
                                   std::uint64_t seed, std::size_t max_iters = 300);

/// Best of `restarts` seeded restarts by WCSS (ties to the lowest restart
/// index). Serial loop; reference for the OpenMP version.
ClusterModel kmeans_serial(const PointSet& points, std::size_t k, std::uint64_t seed,
                           std::size_t restarts = 10, std::size_t max_iters = 300);

/// Same contract as kmeans_serial with the restarts run in parallel. Each
/// restart is internally serial and independently seeded, so the result is
/// identical to the serial version regardless of thread count.
ClusterModel kmeans(const PointSet& points, std::size_t k, std::uint64_t seed,
                    std::size_t restarts = 10, std::size_t max_iters = 300);

/// WCSS curve over k = 1..k_max (index i holds k = i+1).
std::vector<double> wcss_curve(const PointSet& points, std::size_t k_max,
                               std::uint64_t seed);

/// Elbow over a WCSS curve: the first k whose marginal WCSS reduction falls
/// below 8% of the k=1 total (diminishing returns); degenerate near-constant
/// data yields 1.
std::size_t elbow_from_wcss(std::span<const double> wcss, std::size_t n_points);

std::size_t elbow_k(const PointSet& points, std::size_t k_max, std::uint64_t seed);

/// Fraction of samples explained by the best injective mapping of clusters
/// onto truth labels (exact maximum-agreement assignment). Clusters left
/// unmapped score their samples as wrong.
double clustering_accuracy(std::span<const std::uint32_t> assignments,
                           std::span<const StateId> truth, std::size_t n_labels);

struct AttackResult {
  std::size_t k = 0;
  ClusterModel model;
  std::vector<double> wcss;
};

/// Full eavesdropper pipeline: featurize, pick k by elbow, cluster.
AttackResult attack_trace(const ActionTrace& trace, std::uint64_t seed,
                          std::size_t k_max = 10);

}  // namespace parl
