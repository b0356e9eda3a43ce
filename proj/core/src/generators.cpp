#include "arbor/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "arbor/errors.hpp"

namespace arbor {

Graph gnp(std::size_t n, double p, RngStream& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("edge probability must lie in [0, 1]");
  std::vector<Edge> edges;
  if (p == 0.0 || n < 2) return Graph::from_edges(n, edges);
  if (p == 1.0) return complete_graph(n);

  // Batagelj-Brandes: walk the lower triangle with geometric jumps.
  const double log_q = std::log1p(-p);
  long long v = 1;
  long long w = -1;
  const auto nn = static_cast<long long>(n);
  while (v < nn) {
    const double r = 1.0 - rng.uniform01();  // (0, 1]
    w += 1 + static_cast<long long>(std::floor(std::log(r) / log_q));
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) edges.emplace_back(static_cast<Vertex>(w), static_cast<Vertex>(v));
  }
  return Graph::from_edges(n, edges);
}

namespace {

std::uint64_t edge_key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

Graph random_regular(std::size_t n, std::size_t degree, RngStream& rng, std::size_t max_restarts) {
  if (degree >= n && !(n == 0 && degree == 0)) {
    throw InfeasibleError("regular degree must be below n");
  }
  if ((n * degree) % 2 != 0) throw InfeasibleError("n * D must be even");
  if (degree == 0) return Graph::from_edges(n, std::vector<Edge>{});

  std::vector<Vertex> points;
  std::unordered_set<std::uint64_t> present;
  std::vector<Edge> edges;
  for (std::size_t attempt = 0; attempt < max_restarts; ++attempt) {
    points.clear();
    for (Vertex v = 0; v < n; ++v) points.insert(points.end(), degree, v);
    present.clear();
    edges.clear();
    bool stuck = false;
    while (!points.empty() && !stuck) {
      const std::size_t remaining = points.size();
      bool placed = false;
      for (std::size_t tries = 0; tries < 50 * remaining + 100; ++tries) {
        const std::size_t i = rng.below(remaining);
        std::size_t j = rng.below(remaining - 1);
        if (j >= i) ++j;
        const Vertex a = points[i];
        const Vertex b = points[j];
        if (a == b || present.contains(edge_key(a, b))) continue;
        present.insert(edge_key(a, b));
        edges.emplace_back(std::min(a, b), std::max(a, b));
        // Remove the higher slot first so the lower index stays valid.
        for (std::size_t slot : {std::max(i, j), std::min(i, j)}) {
          points[slot] = points.back();
          points.pop_back();
        }
        placed = true;
        break;
      }
      stuck = !placed;
    }
    if (!stuck) return Graph::from_edges(n, edges);
  }
  throw InfeasibleError("random regular pairing failed after " + std::to_string(max_restarts) +
                        " restarts");
}

EdgeDistributionReport check_edge_distribution(const Graph& g, double p, std::size_t pair_samples,
                                               std::size_t subset_samples, RngStream& rng) {
  const std::size_t n = g.vertex_count();
  EdgeDistributionReport report;
  report.p = p;
  if (n == 0 || !(p > 0.0)) {
    report.pairs_skipped = pair_samples;
    return report;
  }
  const auto nd = static_cast<double>(n);
  const double product_floor = 32.0 * nd / p;  // |A||B| must reach this
  // Largest product with a + b <= n is floor(n/2) ceil(n/2).
  const double best_product = std::floor(nd / 2.0) * std::ceil(nd / 2.0);
  report.pair_condition_satisfiable = best_product >= product_floor;

  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});

  for (std::size_t s = 0; s < pair_samples; ++s) {
    if (!report.pair_condition_satisfiable) {
      ++report.pairs_skipped;
      continue;
    }
    // Smallest a that admits some b <= n - a, then a random a above it.
    std::size_t a_min = 1;
    while (static_cast<double>(a_min) * static_cast<double>(n - a_min) < product_floor) ++a_min;
    const std::size_t a_max = n - a_min;
    const std::size_t a = a_min + rng.below(a_max - a_min + 1);
    const auto b_min = static_cast<std::size_t>(std::ceil(product_floor / static_cast<double>(a)));
    if (b_min > n - a) {
      ++report.pairs_skipped;
      continue;
    }
    const std::size_t b = b_min + rng.below(n - a - b_min + 1);
    rng.shuffle(std::span<Vertex>(perm));
    const VertexSet set_a(n, std::span<const Vertex>(perm.data(), a));
    const VertexSet set_b(n, std::span<const Vertex>(perm.data() + a, b));
    const auto cross = static_cast<double>(ordered_edge_count(g, set_a, set_b));
    const double mean = static_cast<double>(a) * static_cast<double>(b) * p;
    ++report.pairs_checked;
    if (cross < mean / 2.0 || cross > 1.5 * mean) ++report.pair_violations;
  }

  const std::size_t a_cap = n / 4;
  for (std::size_t s = 0; s < subset_samples && a_cap > 0; ++s) {
    const std::size_t a = 1 + rng.below(a_cap);
    rng.shuffle(std::span<Vertex>(perm));
    const VertexSet set(n, std::span<const Vertex>(perm.data(), a));
    const double inside = static_cast<double>(ordered_edge_count(g, set, set)) / 2.0;
    ++report.subsets_checked;
    if (!(inside < static_cast<double>(a) * nd * p / 2.0)) ++report.subset_violations;
  }
  return report;
}

}  // namespace arbor
