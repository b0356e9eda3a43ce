#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace arbor {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Adjacency rows are mirrored into bitsets up to this many vertices.
inline constexpr std::size_t kDefaultBitsetThreshold = 4096;

/// A subset of the vertex range [0, universe), stored as a bitset.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe);
  VertexSet(std::size_t universe, std::span<const Vertex> members);
  VertexSet(std::size_t universe, std::initializer_list<Vertex> members);

  static VertexSet full(std::size_t universe);
  /// Takes ownership of a raw bitset; bits at or beyond `universe` must be clear.
  static VertexSet from_words(std::size_t universe, std::vector<std::uint64_t> words);

  std::size_t universe() const noexcept { return universe_; }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  bool contains(Vertex v) const noexcept {
    return v < universe_ && ((words_[v >> 6] >> (v & 63)) & 1U) != 0;
  }
  void insert(Vertex v);
  void erase(Vertex v);

  /// Members in increasing order.
  std::vector<Vertex> members() const;

  VertexSet& operator|=(const VertexSet& other);
  VertexSet& operator&=(const VertexSet& other);
  VertexSet& operator-=(const VertexSet& other);

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  friend bool operator==(const VertexSet& a, const VertexSet& b) noexcept {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }

 private:
  void recount() noexcept;

  std::size_t universe_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Simple undirected graph on dense vertex indices 0..n-1. Immutable once built.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list. Self-loops, duplicate edges and out-of-range
  /// endpoints are rejected with InvalidInput; (u, v) and (v, u) are duplicates.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                          std::size_t bitset_threshold = kDefaultBitsetThreshold);
  static Graph from_edges(std::size_t n, std::initializer_list<Edge> edges);

  std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return targets_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(Vertex u, Vertex v) const noexcept;
  bool has_bitset_rows() const noexcept { return !rows_.empty(); }

  /// Bitset row of v; only valid when has_bitset_rows().
  std::span<const std::uint64_t> row(Vertex v) const noexcept {
    return {rows_.data() + static_cast<std::size_t>(v) * row_words_, row_words_};
  }

  /// All edges as (u, v) with u < v, sorted.
  std::vector<Edge> edges() const;

  /// Checks a vertex index and throws InvalidInput if it is out of range.
  void require_vertex(Vertex v) const;

  friend bool operator==(const Graph& a, const Graph& b) noexcept {
    return a.offsets_ == b.offsets_ && a.targets_ == b.targets_;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
  std::size_t row_words_ = 0;
  std::vector<std::uint64_t> rows_;
};

struct InducedSubgraph {
  Graph graph;
  /// new index -> original vertex
  std::vector<Vertex> to_original;
  /// original vertex -> new index, or kAbsent
  std::vector<Vertex> from_original;

  static constexpr Vertex kAbsent = static_cast<Vertex>(-1);
};

/// N_G(X): every vertex adjacent to some member of X. May intersect X.
VertexSet neighborhood(const Graph& g, const VertexSet& x);

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& u);

/// e(B, C): ordered pairs (u, v) with u in B, v in C, uv an edge.
/// An edge with both endpoints in B and C is counted twice.
std::size_t ordered_edge_count(const Graph& g, const VertexSet& b, const VertexSet& c);

struct DegreeExtrema {
  std::size_t min_degree;
  std::size_t max_degree;
};

DegreeExtrema degree_extrema(const Graph& g);

/// D if every vertex has degree D; empty for irregular or empty graphs.
std::optional<std::size_t> regular_degree(const Graph& g);

// Text format: "n m", then m lines "u v" with u < v; '#' lines are comments.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);

// Small named graphs used by tests, examples and the CLI.
Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph star_graph(std::size_t leaves);
Graph petersen_graph();

}  // namespace arbor
