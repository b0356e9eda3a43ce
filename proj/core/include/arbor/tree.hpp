#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arbor/graph.hpp"
#include "arbor/rational.hpp"

namespace arbor {

/// Guest tree on vertices 0..k-1 with a designated root and a degree bound d.
///
/// The parent array encodes the k-1 edges; parent[root] is kNoParent. Every
/// vertex has degree at most d, where degree counts the parent edge.
class RootedTree {
 public:
  static constexpr std::int32_t kNoParent = -1;

  RootedTree() = default;

  /// Validates connectivity, acyclicity and the degree bound. Throws InvalidInput.
  static RootedTree from_parents(std::vector<std::int32_t> parent, std::size_t degree_bound);
  /// Orients an undirected edge list away from `root`.
  static RootedTree from_edges(std::size_t k, std::span<const Edge> edges, Vertex root,
                               std::size_t degree_bound);

  std::size_t size() const noexcept { return parent_.size(); }
  Vertex root() const noexcept { return root_; }
  std::size_t degree_bound() const noexcept { return degree_bound_; }

  std::int32_t parent(Vertex v) const noexcept { return parent_[v]; }
  std::span<const std::int32_t> parents() const noexcept { return parent_; }
  std::span<const Vertex> children(Vertex v) const noexcept {
    return {child_targets_.data() + child_offsets_[v],
            child_targets_.data() + child_offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const noexcept {
    return children(v).size() + (parent_[v] == kNoParent ? 0 : 1);
  }
  std::size_t max_degree() const noexcept;

  /// Edges as (parent, child) in child order.
  std::vector<Edge> edges() const;
  /// Same tree with another root and the same degree bound.
  RootedTree rerooted(Vertex new_root) const;
  /// Same tree viewed as a host graph.
  Graph as_graph() const;

  /// Root first; parents always precede children.
  std::vector<Vertex> bfs_order() const;
  std::vector<Vertex> dfs_order() const;

  friend bool operator==(const RootedTree& a, const RootedTree& b) noexcept {
    return a.parent_ == b.parent_ && a.degree_bound_ == b.degree_bound_;
  }

 private:
  std::vector<std::int32_t> parent_;
  Vertex root_ = 0;
  std::size_t degree_bound_ = 2;
  std::vector<std::size_t> child_offsets_;
  std::vector<Vertex> child_targets_;
};

// Tree text format: "k root", then k lines "v parent_of_v" (-1 for the root).
// The degree bound is not stored; readers use max(2, max degree).
RootedTree read_tree(std::istream& in);
RootedTree read_tree_file(const std::string& path);
void write_tree(std::ostream& out, const RootedTree& t);

// ------------------------------------------------------------- generators

/// Random labeled tree on k vertices with max degree <= d, decoded from a
/// Pruefer sequence in which no label occurs more than d-1 times. Rooted at 0.
RootedTree random_bounded_degree_tree(std::size_t k, std::size_t d, std::uint64_t seed);

enum class TreeFamily { path, spider, complete_d_ary, caterpillar };

std::optional<TreeFamily> parse_tree_family(std::string_view name);
std::string_view to_string(TreeFamily family);

/// Deterministic trees:
///  - path: P_k rooted at an end.
///  - spider: a center with d legs of near-equal length.
///  - complete_d_ary: every internal vertex has d-1 children, filled level by level.
///  - caterpillar: a spine whose vertices each carry d-2 pendant leaves.
RootedTree make_special_tree(TreeFamily family, std::size_t k, std::size_t d);

// ------------------------------------------------------------------ cutting

struct TreeCut {
  Vertex parent_vertex;
  Vertex child_vertex;
  /// Size of the component hanging below child_vertex.
  std::size_t subtree_size;
};

/// Finds an edge whose removal leaves a component with between k and
/// (d-1)(k-1)+1 vertices: root at the lowest-index leaf, take the deepest
/// level holding a vertex with subtree size >= k, and cut above the
/// lowest-index such vertex. Requires |V(t)| >= k+1 and k >= 1.
TreeCut cut_once(const RootedTree& t, std::size_t k);

/// One piece T_i of a partition, re-indexed locally.
struct TreePiece {
  /// Local tree rooted at the piece's root.
  RootedTree tree;
  /// local index -> vertex of the original tree
  std::vector<Vertex> to_global;
  /// Original-tree edge (vertex in an earlier piece, root of this piece);
  /// absent for the first piece.
  std::optional<Edge> connect_edge;

  Vertex global_root() const { return to_global[tree.root()]; }
};

/// Ordered pieces T_1..T_s of a tree. Piece i > 1 hangs off the union of the
/// earlier pieces by exactly one edge, and
///   (eps*n/2 + sum_{j>i} |T_j|) / (8 d^2) <= |T_i| <= (eps*n/2 + sum_{j>i} |T_j|) / (8 d)
/// with only the upper bound required for i = 1.
struct TreePartition {
  std::vector<TreePiece> pieces;
  Rational epsilon;
  std::size_t ambient_n = 0;
  std::size_t degree_bound = 2;
  std::size_t tree_size = 0;

  std::size_t piece_count() const noexcept { return pieces.size(); }
  /// piece index of every original vertex
  std::vector<std::size_t> piece_of() const;
};

/// 10 d^2 log(2/eps).
double partition_piece_limit(std::size_t d, double epsilon);

/// Cuts pieces back to front: while the remainder exceeds a/(8d), cut off a
/// piece of size in [a/(8d^2), a/(8d)] with a = eps*n/2 + (vertices removed so
/// far); the final remainder becomes T_1. All thresholds use exact arithmetic.
///
/// Requires 0 < eps < 1/2, |V(t)| <= (1-eps) n, and eps*n >= 16 d^2 whenever
/// at least one cut is needed (below that no integer piece size fits the bounds).
TreePartition partition_tree(const RootedTree& t, Rational epsilon, std::size_t ambient_n);

}  // namespace arbor
