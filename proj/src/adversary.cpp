#include "parl/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace parl {

namespace {

double sq_dist(const double* a, const double* b, std::size_t dim) {
  double d = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double diff = a[i] - b[i];
    d += diff * diff;
  }
  return d;
}

// k-means++ D^2 seeding.
std::vector<double> seed_centroids(const PointSet& points, std::size_t k,
                                   RngStream& rng) {
  const std::size_t n = points.size();
  const std::size_t dim = points.dim;
  std::vector<double> centroids(k * dim);
  const std::size_t first = rng.next_below(n);
  std::copy_n(points.point(first), dim, centroids.begin());

  std::vector<double> d2(n);
  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < c; ++j)
        best = std::min(best, sq_dist(points.point(i), &centroids[j * dim], dim));
      d2[i] = best;
      total += best;
    }
    std::size_t pick;
    if (total <= 0.0) {
      pick = rng.next_below(n);
    } else {
      const double u = rng.next_double() * total;
      double acc = 0.0;
      pick = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        acc += d2[i];
        if (u < acc) {
          pick = i;
          break;
        }
      }
    }
    std::copy_n(points.point(pick), dim, centroids.begin() + c * dim);
  }
  return centroids;
}

}  // namespace

PointSet featurize(const ActionTrace& trace) {
  if (trace.samples.empty()) throw std::domain_error("featurize: empty trace");
  if (trace.slots_per_day < 2 || trace.n_actions < 2)
    throw std::invalid_argument("featurize: degenerate slot or action range");
  PointSet out;
  out.dim = 2;
  out.data.reserve(trace.samples.size() * 2);
  const double slot_span = static_cast<double>(trace.slots_per_day - 1);
  const double action_span = static_cast<double>(trace.n_actions - 1);
  for (const auto& s : trace.samples) {
    out.data.push_back(static_cast<double>(s.slot) / slot_span);
    out.data.push_back(static_cast<double>(s.action) / action_span);
  }
  return out;
}

ClusterModel kmeans_single_restart(const PointSet& points, std::size_t k,
                                   std::uint64_t seed, std::size_t max_iters) {
  const std::size_t n = points.size();
  const std::size_t dim = points.dim;
  if (k < 1) throw std::domain_error("kmeans: k must be >= 1");
  if (k > n) throw std::domain_error("kmeans: k exceeds the number of points");

  RngStream rng(seed);
  ClusterModel model;
  model.k = k;
  model.dim = dim;
  model.centroids = seed_centroids(points, k, rng);
  model.assignments.assign(n, 0);

  std::vector<double> sums(k * dim);
  std::vector<std::size_t> counts(k);
  bool changed = true;
  for (std::size_t iter = 0; iter < max_iters && changed; ++iter) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const double* p = points.point(i);
      std::size_t best = 0;
      double best_d = sq_dist(p, &model.centroids[0], dim);
      for (std::size_t j = 1; j < k; ++j) {
        const double d = sq_dist(p, &model.centroids[j * dim], dim);
        if (d < best_d) {
          best_d = d;
          best = j;
        }
      }
      if (model.assignments[i] != best) {
        model.assignments[i] = static_cast<std::uint32_t>(best);
        changed = true;
      }
    }
    std::fill(sums.begin(), sums.end(), 0.0);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t c = model.assignments[i];
      const double* p = points.point(i);
      for (std::size_t d = 0; d < dim; ++d) sums[c * dim + d] += p[d];
      ++counts[c];
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (counts[j] == 0) continue;  // empty cluster keeps its centroid
      for (std::size_t d = 0; d < dim; ++d)
        model.centroids[j * dim + d] = sums[j * dim + d] / static_cast<double>(counts[j]);
    }
  }

  model.wcss = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    model.wcss += sq_dist(points.point(i), &model.centroids[model.assignments[i] * dim], dim);
  return model;
}

ClusterModel kmeans_serial(const PointSet& points, std::size_t k, std::uint64_t seed,
                           std::size_t restarts, std::size_t max_iters) {
  if (k < 1) throw std::domain_error("kmeans: k must be >= 1");
  if (k > points.size()) throw std::domain_error("kmeans: k exceeds the number of points");
  ClusterModel best;
  bool have = false;
  for (std::size_t r = 0; r < restarts; ++r) {
    ClusterModel m = kmeans_single_restart(points, k, RngStream::derive(seed, r), max_iters);
    if (!have || m.wcss < best.wcss) {
      best = std::move(m);
      have = true;
    }
  }
  return best;
}

ClusterModel kmeans(const PointSet& points, std::size_t k, std::uint64_t seed,
                    std::size_t restarts, std::size_t max_iters) {
  // Validate ahead of the parallel region; exceptions cannot cross it.
  if (k < 1) throw std::domain_error("kmeans: k must be >= 1");
  if (k > points.size()) throw std::domain_error("kmeans: k exceeds the number of points");
  std::vector<ClusterModel> models(restarts);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t r = 0; r < restarts; ++r)
    models[r] = kmeans_single_restart(points, k, RngStream::derive(seed, r), max_iters);

  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r)
    if (models[r].wcss < models[best].wcss) best = r;
  return std::move(models[best]);
}

std::vector<double> wcss_curve(const PointSet& points, std::size_t k_max,
                               std::uint64_t seed) {
  const std::size_t top = std::min(k_max, points.size());
  std::vector<double> curve(top);
  for (std::size_t k = 1; k <= top; ++k)
    curve[k - 1] = kmeans(points, k, RngStream::derive(seed, 1000 + k)).wcss;
  return curve;
}

std::size_t elbow_from_wcss(std::span<const double> wcss, std::size_t n_points) {
  if (wcss.empty()) throw std::domain_error("elbow_from_wcss: empty curve");
  const double degenerate = 1e-9 * static_cast<double>(n_points);
  if (wcss[0] <= degenerate) return 1;
  const double threshold = 0.07 * wcss[0];
  for (std::size_t k = 1; k < wcss.size(); ++k)
    if (wcss[k - 1] - wcss[k] < threshold) return k;
  return wcss.size();
}

std::size_t elbow_k(const PointSet& points, std::size_t k_max, std::uint64_t seed) {
  if (k_max < 3) throw std::domain_error("elbow_k: k_max must be >= 3");
  const auto curve = wcss_curve(points, k_max, seed);
  return elbow_from_wcss(curve, points.size());
}

double clustering_accuracy(std::span<const std::uint32_t> assignments,
                           std::span<const StateId> truth, std::size_t n_labels) {
  if (assignments.size() != truth.size())
    throw std::invalid_argument("clustering_accuracy: size mismatch");
  if (assignments.empty()) throw std::domain_error("clustering_accuracy: empty input");
  if (n_labels == 0 || n_labels > 20)
    throw std::invalid_argument("clustering_accuracy: label count outside [1,20]");

  std::size_t k = 0;
  for (auto a : assignments) k = std::max<std::size_t>(k, a + 1);

  std::vector<std::uint64_t> contingency(k * n_labels, 0);
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (truth[i] >= n_labels)
      throw std::out_of_range("clustering_accuracy: truth label out of range");
    ++contingency[assignments[i] * n_labels + truth[i]];
  }

  // Exact maximum-agreement injective mapping via subset DP over labels.
  const std::size_t masks = std::size_t{1} << n_labels;
  std::vector<std::uint64_t> dp(masks, 0), next(masks);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t mask = 0; mask < masks; ++mask) {
      std::uint64_t best = dp[mask];  // cluster c left unmapped
      for (std::size_t l = 0; l < n_labels; ++l) {
        if (mask & (std::size_t{1} << l)) continue;
        const std::uint64_t cand =
            dp[mask | (std::size_t{1} << l)] + contingency[c * n_labels + l];
        best = std::max(best, cand);
      }
      next[mask] = best;
    }
    dp.swap(next);
  }
  return static_cast<double>(dp[0]) / static_cast<double>(assignments.size());
}

AttackResult attack_trace(const ActionTrace& trace, std::uint64_t seed,
                          std::size_t k_max) {
  const PointSet points = featurize(trace);
  AttackResult res;
  res.wcss = wcss_curve(points, k_max, seed);
  res.k = elbow_from_wcss(res.wcss, points.size());
  res.model = kmeans(points, res.k, RngStream::derive(seed, 1000 + res.k));
  return res;
}

}  // namespace parl
