#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arbor/graph.hpp"
#include "arbor/tree.hpp"

namespace arbor {

enum class NodeOrder { bfs, dfs };
enum class CandidateRule { min_residual_degree, max_residual_degree, random };

std::optional<NodeOrder> parse_node_order(std::string_view name);
std::optional<CandidateRule> parse_candidate_rule(std::string_view name);
std::string_view to_string(NodeOrder order);
std::string_view to_string(CandidateRule rule);

/// Search policy for embed_rooted_tree.
struct EmbedBudget {
  /// Passing kUnbounded lets the search run to exhaustion, which turns a
  /// failure into a proof that no embedding exists.
  static constexpr long long kUnbounded = -1;

  long long max_backtracks = 1'000'000;
  NodeOrder order = NodeOrder::bfs;
  CandidateRule rule = CandidateRule::min_residual_degree;
  std::uint64_t seed = 0;

  bool unbounded() const noexcept { return max_backtracks == kUnbounded; }
};

/// Injective, adjacency-preserving map from guest vertices to host vertices.
struct Embedding {
  /// guest vertex -> host vertex
  std::vector<Vertex> map;
  /// image of the map, ascending
  std::vector<Vertex> used;
  long long backtracks = 0;
};

/// Places guest vertices in `budget.order`, each on an unused host neighbor of
/// its parent's image, backtracking chronologically on dead ends. Host vertices
/// with fewer unused neighbors than the guest vertex has children are skipped
/// (they cannot be extended). Throws SearchFailure when the budget runs out or
/// the search space is exhausted.
Embedding embed_rooted_tree(const Graph& host, const RootedTree& guest, Vertex root_image,
                            const EmbedBudget& budget = {});

struct EmbeddingCheck {
  bool ok = true;
  /// First violating guest pair: the two vertices sharing an image, or the
  /// guest edge whose image is not a host edge.
  std::optional<Edge> violation;
  std::string reason;

  explicit operator bool() const noexcept { return ok; }
};

/// Recomputes injectivity and edge preservation from scratch.
EmbeddingCheck verify_embedding(const Graph& host, const RootedTree& guest,
                                const Embedding& embedding);

}  // namespace arbor
