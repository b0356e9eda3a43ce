#pragma once

#include <cstddef>
#include <cstdint>

#include "arbor/graph.hpp"
#include "arbor/random.hpp"

namespace arbor {

/// G(n, p): every pair independently with probability p. Uses geometric
/// skipping, so the cost is O(n + m).
Graph gnp(std::size_t n, double p, RngStream& rng);

/// Simple D-regular graph from a configuration-model pairing. Points are
/// paired one at a time; a pair that would create a loop or a repeated edge
/// is redrawn, and the whole pairing restarts when no valid pair is left.
Graph random_regular(std::size_t n, std::size_t degree, RngStream& rng,
                     std::size_t max_restarts = 1000);

struct EdgeDistributionReport {
  double p = 0.0;
  /// False when no disjoint A, B with |A||B|p >= 32n fit inside n vertices.
  bool pair_condition_satisfiable = false;
  std::size_t pairs_checked = 0;
  std::size_t pairs_skipped = 0;
  std::size_t pair_violations = 0;
  std::size_t subsets_checked = 0;
  std::size_t subset_violations = 0;
};

/// Samples disjoint A, B with |A||B|p >= 32n and checks |A||B|p/2 <= e(A,B) <=
/// 3|A||B|p/2; samples sets of size a <= n/4 and checks they span fewer than
/// a n p / 2 edges. Violations are counted, not thrown.
EdgeDistributionReport check_edge_distribution(const Graph& g, double p, std::size_t pair_samples,
                                               std::size_t subset_samples, RngStream& rng);

}  // namespace arbor
