#include "arbor/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "arbor/errors.hpp"

namespace arbor {

namespace {

std::size_t word_count(std::size_t universe) { return (universe + 63) / 64; }

void check_same_universe(const VertexSet& a, const VertexSet& b) {
  if (a.universe() != b.universe()) {
    throw InvalidInput("vertex sets over different universes");
  }
}

void check_universe(const Graph& g, const VertexSet& x) {
  if (x.universe() > g.vertex_count()) {
    // Members beyond n would be out-of-range vertices.
    for (Vertex v : x.members()) g.require_vertex(v);
  }
}

}  // namespace

// ---------------------------------------------------------------- VertexSet

VertexSet::VertexSet(std::size_t universe)
    : universe_(universe), words_(word_count(universe), 0) {}

VertexSet::VertexSet(std::size_t universe, std::span<const Vertex> members)
    : VertexSet(universe) {
  for (Vertex v : members) insert(v);
}

VertexSet::VertexSet(std::size_t universe, std::initializer_list<Vertex> members)
    : VertexSet(universe, std::span<const Vertex>(members.begin(), members.size())) {}

VertexSet VertexSet::full(std::size_t universe) {
  VertexSet s(universe);
  for (std::size_t w = 0; w < s.words_.size(); ++w) s.words_[w] = ~std::uint64_t{0};
  if (universe % 64 != 0 && !s.words_.empty()) {
    s.words_.back() = (std::uint64_t{1} << (universe % 64)) - 1;
  }
  s.count_ = universe;
  return s;
}

VertexSet VertexSet::from_words(std::size_t universe, std::vector<std::uint64_t> words) {
  if (words.size() != word_count(universe)) throw InvalidInput("bitset size mismatch");
  VertexSet s;
  s.universe_ = universe;
  s.words_ = std::move(words);
  s.recount();
  return s;
}

void VertexSet::insert(Vertex v) {
  if (v >= universe_) {
    throw InvalidInput("vertex " + std::to_string(v) + " outside universe of size " +
                       std::to_string(universe_));
  }
  auto& word = words_[v >> 6];
  const auto bit = std::uint64_t{1} << (v & 63);
  if ((word & bit) == 0) {
    word |= bit;
    ++count_;
  }
}

void VertexSet::erase(Vertex v) {
  if (v >= universe_) return;
  auto& word = words_[v >> 6];
  const auto bit = std::uint64_t{1} << (v & 63);
  if ((word & bit) != 0) {
    word &= ~bit;
    --count_;
  }
}

std::vector<Vertex> VertexSet::members() const {
  std::vector<Vertex> out;
  out.reserve(count_);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    auto bits = words_[w];
    while (bits != 0) {
      const int b = std::countr_zero(bits);
      out.push_back(static_cast<Vertex>(w * 64 + static_cast<std::size_t>(b)));
      bits &= bits - 1;
    }
  }
  return out;
}

void VertexSet::recount() noexcept {
  count_ = 0;
  for (auto w : words_) count_ += static_cast<std::size_t>(std::popcount(w));
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
  check_same_universe(*this, other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  recount();
  return *this;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) {
  check_same_universe(*this, other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  recount();
  return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& other) {
  check_same_universe(*this, other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
  recount();
  return *this;
}

// -------------------------------------------------------------------- Graph

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges,
                        std::size_t bitset_threshold) {
  std::vector<std::size_t> degree(n, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw InvalidInput("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                         ") has an endpoint outside [0, " + std::to_string(n) + ")");
    }
    if (u == v) throw InvalidInput("self-loop at vertex " + std::to_string(u));
    ++degree[u];
    ++degree[v];
  }

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.targets_.resize(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    g.targets_[fill[u]++] = v;
    g.targets_[fill[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto first = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    if (auto dup = std::adjacent_find(first, last); dup != last) {
      const auto a = std::min<std::size_t>(v, *dup);
      const auto b = std::max<std::size_t>(v, *dup);
      throw InvalidInput("duplicate edge (" + std::to_string(a) + ", " + std::to_string(b) + ")");
    }
  }

  if (n <= bitset_threshold) {
    g.row_words_ = word_count(n);
    g.rows_.assign(n * g.row_words_, 0);
    for (std::size_t v = 0; v < n; ++v) {
      for (Vertex w : g.neighbors(static_cast<Vertex>(v))) {
        g.rows_[v * g.row_words_ + (w >> 6)] |= std::uint64_t{1} << (w & 63);
      }
    }
  }
  return g;
}

Graph Graph::from_edges(std::size_t n, std::initializer_list<Edge> edges) {
  return from_edges(n, std::span<const Edge>(edges.begin(), edges.size()));
}

bool Graph::has_edge(Vertex u, Vertex v) const noexcept {
  if (u >= vertex_count() || v >= vertex_count()) return false;
  if (!rows_.empty()) {
    return ((rows_[static_cast<std::size_t>(u) * row_words_ + (v >> 6)] >> (v & 63)) & 1U) != 0;
  }
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < vertex_count(); ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

void Graph::require_vertex(Vertex v) const {
  if (v >= vertex_count()) {
    throw InvalidInput("vertex " + std::to_string(v) + " out of range for graph with " +
                       std::to_string(vertex_count()) + " vertices");
  }
}

// --------------------------------------------------------------- operations

VertexSet neighborhood(const Graph& g, const VertexSet& x) {
  check_universe(g, x);
  const std::size_t n = g.vertex_count();
  if (g.has_bitset_rows()) {
    std::vector<std::uint64_t> words(word_count(n), 0);
    for (Vertex v : x.members()) {
      auto row = g.row(v);
      for (std::size_t w = 0; w < row.size(); ++w) words[w] |= row[w];
    }
    return VertexSet::from_words(n, std::move(words));
  }
  VertexSet out(n);
  for (Vertex v : x.members()) {
    for (Vertex w : g.neighbors(v)) out.insert(w);
  }
  return out;
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& u) {
  check_universe(g, u);
  InducedSubgraph out;
  out.to_original = u.members();
  out.from_original.assign(g.vertex_count(), InducedSubgraph::kAbsent);
  for (std::size_t i = 0; i < out.to_original.size(); ++i) {
    out.from_original[out.to_original[i]] = static_cast<Vertex>(i);
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < out.to_original.size(); ++i) {
    for (Vertex w : g.neighbors(out.to_original[i])) {
      const Vertex j = out.from_original[w];
      if (j != InducedSubgraph::kAbsent && i < j) edges.emplace_back(static_cast<Vertex>(i), j);
    }
  }
  out.graph = Graph::from_edges(out.to_original.size(), edges);
  return out;
}

std::size_t ordered_edge_count(const Graph& g, const VertexSet& b, const VertexSet& c) {
  check_universe(g, b);
  check_universe(g, c);
  std::size_t total = 0;
  for (Vertex u : b.members()) {
    for (Vertex v : g.neighbors(u)) {
      if (c.contains(v)) ++total;
    }
  }
  return total;
}

DegreeExtrema degree_extrema(const Graph& g) {
  if (g.vertex_count() == 0) throw InvalidInput("degree extrema of the empty graph");
  DegreeExtrema out{g.degree(0), g.degree(0)};
  for (Vertex v = 1; v < g.vertex_count(); ++v) {
    out.min_degree = std::min(out.min_degree, g.degree(v));
    out.max_degree = std::max(out.max_degree, g.degree(v));
  }
  return out;
}

std::optional<std::size_t> regular_degree(const Graph& g) {
  if (g.vertex_count() == 0) return std::nullopt;
  const auto [lo, hi] = degree_extrema(g);
  if (lo != hi) return std::nullopt;
  return lo;
}

// ----------------------------------------------------------------------- IO

namespace {

bool next_data_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    return true;
  }
  return false;
}

[[noreturn]] void parse_error(std::size_t line_no, const std::string& msg) {
  throw InvalidInput("graph file line " + std::to_string(line_no) + ": " + msg);
}

}  // namespace

Graph read_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_data_line(in, line, line_no)) parse_error(line_no, "missing header 'n m'");
  long long n = -1;
  long long m = -1;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> n >> m) || (header >> extra) || n < 0 || m < 0) {
      parse_error(line_no, "expected header 'n m'");
    }
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_data_line(in, line, line_no)) {
      parse_error(line_no, "expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    }
    std::istringstream row(line);
    long long u = -1;
    long long v = -1;
    std::string extra;
    if (!(row >> u >> v) || (row >> extra)) parse_error(line_no, "expected 'u v'");
    if (u < 0 || v >= n || u >= v) parse_error(line_no, "edge must satisfy 0 <= u < v < n");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (next_data_line(in, line, line_no)) parse_error(line_no, "trailing data after edge list");
  return Graph::from_edges(static_cast<std::size_t>(n), edges);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open graph file '" + path + "'");
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

// ------------------------------------------------------------ named graphs

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph::from_edges(n, edges);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw InvalidInput("cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  edges.emplace_back(0, static_cast<Vertex>(n - 1));
  return Graph::from_edges(n, edges);
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edges(n, edges);
}

Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, edges);
}

Graph petersen_graph() {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);
    edges.emplace_back(i, i + 5);
    edges.emplace_back(i + 5, (i + 2) % 5 + 5);
  }
  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
  }
  return Graph::from_edges(10, edges);
}

}  // namespace arbor
