#include "arbor/tree.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

#include "arbor/errors.hpp"
#include "arbor/random.hpp"

namespace arbor {

// --------------------------------------------------------------- RootedTree

RootedTree RootedTree::from_parents(std::vector<std::int32_t> parent, std::size_t degree_bound) {
  const std::size_t k = parent.size();
  if (k == 0) throw InvalidInput("tree must have at least one vertex");
  if (degree_bound < 1) throw InvalidInput("degree bound must be positive");

  RootedTree t;
  std::optional<Vertex> root;
  std::vector<std::size_t> child_count(k, 0);
  for (std::size_t v = 0; v < k; ++v) {
    const auto p = parent[v];
    if (p == kNoParent) {
      if (root) throw InvalidInput("tree has more than one root");
      root = static_cast<Vertex>(v);
      continue;
    }
    if (p < 0 || static_cast<std::size_t>(p) >= k) {
      throw InvalidInput("parent of " + std::to_string(v) + " out of range");
    }
    if (static_cast<std::size_t>(p) == v) throw InvalidInput("vertex is its own parent");
    ++child_count[static_cast<std::size_t>(p)];
  }
  if (!root) throw InvalidInput("tree has no root");

  t.child_offsets_.assign(k + 1, 0);
  for (std::size_t v = 0; v < k; ++v) t.child_offsets_[v + 1] = t.child_offsets_[v] + child_count[v];
  t.child_targets_.resize(k - 1);
  std::vector<std::size_t> fill(t.child_offsets_.begin(), t.child_offsets_.end() - 1);
  for (std::size_t v = 0; v < k; ++v) {
    if (parent[v] != kNoParent) {
      t.child_targets_[fill[static_cast<std::size_t>(parent[v])]++] = static_cast<Vertex>(v);
    }
  }
  t.parent_ = std::move(parent);
  t.root_ = *root;
  t.degree_bound_ = degree_bound;

  // k-1 parent edges that reach every vertex from the root form a tree.
  if (t.bfs_order().size() != k) throw InvalidInput("parent array contains a cycle");
  for (Vertex v = 0; v < k; ++v) {
    if (t.degree(v) > degree_bound) {
      throw InvalidInput("vertex " + std::to_string(v) + " has degree " +
                         std::to_string(t.degree(v)) + " > bound " + std::to_string(degree_bound));
    }
  }
  return t;
}

RootedTree RootedTree::from_edges(std::size_t k, std::span<const Edge> edges, Vertex root,
                                  std::size_t degree_bound) {
  if (k == 0) throw InvalidInput("tree must have at least one vertex");
  if (root >= k) throw InvalidInput("root out of range");
  if (edges.size() != k - 1) throw InvalidInput("a tree on k vertices has k-1 edges");
  std::vector<std::vector<Vertex>> adj(k);
  for (const auto& [u, v] : edges) {
    if (u >= k || v >= k || u == v) throw InvalidInput("bad tree edge");
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<std::int32_t> parent(k, kNoParent);
  std::vector<bool> seen(k, false);
  std::queue<Vertex> queue;
  queue.push(root);
  seen[root] = true;
  std::size_t reached = 0;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop();
    ++reached;
    for (Vertex w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        parent[w] = static_cast<std::int32_t>(v);
        queue.push(w);
      }
    }
  }
  if (reached != k) throw InvalidInput("tree edges do not connect all vertices");
  return from_parents(std::move(parent), degree_bound);
}

std::size_t RootedTree::max_degree() const noexcept {
  std::size_t best = 0;
  for (Vertex v = 0; v < size(); ++v) best = std::max(best, degree(v));
  return best;
}

std::vector<Edge> RootedTree::edges() const {
  std::vector<Edge> out;
  out.reserve(size() > 0 ? size() - 1 : 0);
  for (Vertex v = 0; v < size(); ++v) {
    if (parent_[v] != kNoParent) out.emplace_back(static_cast<Vertex>(parent_[v]), v);
  }
  return out;
}

RootedTree RootedTree::rerooted(Vertex new_root) const {
  const auto e = edges();
  return from_edges(size(), e, new_root, degree_bound_);
}

Graph RootedTree::as_graph() const {
  auto e = edges();
  for (auto& [u, v] : e) {
    if (u > v) std::swap(u, v);
  }
  return Graph::from_edges(size(), e);
}

std::vector<Vertex> RootedTree::bfs_order() const {
  std::vector<Vertex> order;
  order.reserve(size());
  order.push_back(root_);
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (Vertex c : children(order[head])) order.push_back(c);
    if (order.size() > size()) break;
  }
  return order;
}

std::vector<Vertex> RootedTree::dfs_order() const {
  std::vector<Vertex> order;
  order.reserve(size());
  std::vector<Vertex> stack{root_};
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    order.push_back(v);
    auto kids = children(v);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

// ----------------------------------------------------------------------- IO

RootedTree read_tree(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };
  auto fail = [&](const std::string& msg) -> void {
    throw InvalidInput("tree file line " + std::to_string(line_no) + ": " + msg);
  };

  if (!next_line()) fail("missing header 'k root'");
  long long k = 0;
  long long root = -1;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> k >> root) || (header >> extra) || k < 1 || root < 0 || root >= k) {
      fail("expected header 'k root' with 0 <= root < k");
    }
  }
  std::vector<std::int32_t> parent(static_cast<std::size_t>(k), RootedTree::kNoParent);
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  for (long long i = 0; i < k; ++i) {
    if (!next_line()) fail("expected " + std::to_string(k) + " vertex lines");
    std::istringstream row(line);
    long long v = -1;
    long long p = -2;
    std::string extra;
    if (!(row >> v >> p) || (row >> extra)) fail("expected 'v parent'");
    if (v < 0 || v >= k) fail("vertex out of range");
    if (seen[static_cast<std::size_t>(v)]) fail("vertex listed twice");
    seen[static_cast<std::size_t>(v)] = true;
    if ((v == root) != (p == -1)) fail("exactly the root must have parent -1");
    if (p < -1 || p >= k) fail("parent out of range");
    parent[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(p);
  }
  if (next_line()) fail("trailing data after vertex list");

  std::vector<std::size_t> deg(static_cast<std::size_t>(k), 0);
  for (std::size_t v = 0; v < parent.size(); ++v) {
    if (parent[v] >= 0) {
      ++deg[v];
      ++deg[static_cast<std::size_t>(parent[v])];
    }
  }
  const std::size_t bound = std::max<std::size_t>(2, *std::max_element(deg.begin(), deg.end()));
  return RootedTree::from_parents(std::move(parent), bound);
}

RootedTree read_tree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open tree file '" + path + "'");
  return read_tree(in);
}

void write_tree(std::ostream& out, const RootedTree& t) {
  out << t.size() << ' ' << t.root() << '\n';
  for (Vertex v = 0; v < t.size(); ++v) out << v << ' ' << t.parent(v) << '\n';
}

// --------------------------------------------------------------- generators

namespace {

void check_family_params(std::size_t k, std::size_t d) {
  if (k == 0) throw InvalidInput("tree size must be at least 1");
  if (d < 2 && k >= 3) {
    throw InfeasibleError("no tree on " + std::to_string(k) + " vertices has max degree " +
                          std::to_string(d));
  }
}

std::vector<Edge> decode_pruefer(std::size_t k, std::span<const Vertex> sequence) {
  std::vector<std::size_t> degree(k, 1);
  for (Vertex s : sequence) ++degree[s];
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
  for (Vertex v = 0; v < k; ++v) {
    if (degree[v] == 1) leaves.push(v);
  }
  std::vector<Edge> edges;
  edges.reserve(k - 1);
  for (Vertex s : sequence) {
    const Vertex leaf = leaves.top();
    leaves.pop();
    edges.emplace_back(leaf, s);
    if (--degree[s] == 1) leaves.push(s);
  }
  const Vertex a = leaves.top();
  leaves.pop();
  const Vertex b = leaves.top();
  edges.emplace_back(a, b);
  return edges;
}

}  // namespace

RootedTree random_bounded_degree_tree(std::size_t k, std::size_t d, std::uint64_t seed) {
  check_family_params(k, d);
  const std::size_t bound = std::max<std::size_t>(d, 2);
  if (k == 1) return RootedTree::from_parents({RootedTree::kNoParent}, bound);
  if (k == 2) return RootedTree::from_parents({RootedTree::kNoParent, 0}, bound);

  RngStream rng(seed, 0x7472656573ULL);
  std::vector<Vertex> available(k);
  for (Vertex v = 0; v < k; ++v) available[v] = v;
  std::vector<std::size_t> uses(k, 0);
  std::vector<Vertex> sequence;
  sequence.reserve(k - 2);
  while (sequence.size() < k - 2) {
    const auto slot = rng.below(available.size());
    const Vertex label = available[slot];
    sequence.push_back(label);
    if (++uses[label] == d - 1) {
      available[slot] = available.back();
      available.pop_back();
    }
  }
  const auto edges = decode_pruefer(k, sequence);
  return RootedTree::from_edges(k, edges, 0, bound);
}

std::optional<TreeFamily> parse_tree_family(std::string_view name) {
  if (name == "path") return TreeFamily::path;
  if (name == "spider") return TreeFamily::spider;
  if (name == "complete_d_ary" || name == "complete-d-ary") return TreeFamily::complete_d_ary;
  if (name == "caterpillar") return TreeFamily::caterpillar;
  return std::nullopt;
}

std::string_view to_string(TreeFamily family) {
  switch (family) {
    case TreeFamily::path: return "path";
    case TreeFamily::spider: return "spider";
    case TreeFamily::complete_d_ary: return "complete_d_ary";
    case TreeFamily::caterpillar: return "caterpillar";
  }
  return "unknown";
}

RootedTree make_special_tree(TreeFamily family, std::size_t k, std::size_t d) {
  check_family_params(k, d);
  const std::size_t bound = std::max<std::size_t>(d, 2);
  std::vector<std::int32_t> parent(k, RootedTree::kNoParent);
  switch (family) {
    case TreeFamily::path:
      for (std::size_t v = 1; v < k; ++v) parent[v] = static_cast<std::int32_t>(v - 1);
      break;
    case TreeFamily::spider: {
      const std::size_t legs = std::min(bound, k - 1);
      std::size_t next = 1;
      for (std::size_t leg = 0; leg < legs; ++leg) {
        const std::size_t length = (k - 1) / legs + (leg < (k - 1) % legs ? 1 : 0);
        std::int32_t prev = 0;
        for (std::size_t i = 0; i < length; ++i) {
          parent[next] = prev;
          prev = static_cast<std::int32_t>(next++);
        }
      }
      break;
    }
    case TreeFamily::complete_d_ary: {
      const std::size_t branching = bound - 1;
      for (std::size_t v = 1; v < k; ++v) parent[v] = static_cast<std::int32_t>((v - 1) / branching);
      break;
    }
    case TreeFamily::caterpillar: {
      std::size_t spine = 0;
      std::size_t next = 1;
      while (next < k) {
        for (std::size_t leaf = 0; leaf + 2 < bound && next < k; ++leaf) {
          parent[next++] = static_cast<std::int32_t>(spine);
        }
        if (next < k) {
          parent[next] = static_cast<std::int32_t>(spine);
          spine = next++;
        }
      }
      break;
    }
  }
  return RootedTree::from_parents(std::move(parent), bound);
}

// ------------------------------------------------------------------ cutting

namespace {

/// Undirected view of a tree with some vertices deleted; the alive part is
/// always a single subtree.
struct ShrinkingTree {
  std::vector<std::vector<Vertex>> adj;
  std::vector<bool> alive;
  std::size_t alive_count = 0;

  explicit ShrinkingTree(const RootedTree& t) : adj(t.size()), alive(t.size(), true) {
    for (const auto& [p, c] : t.edges()) {
      adj[p].push_back(c);
      adj[c].push_back(p);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    alive_count = t.size();
  }

  std::size_t alive_degree(Vertex v) const {
    std::size_t deg = 0;
    for (Vertex w : adj[v]) deg += alive[w] ? 1 : 0;
    return deg;
  }
};

struct CutWithMembers {
  TreeCut cut;
  std::vector<Vertex> members;
};

CutWithMembers cut_alive(const ShrinkingTree& tree, std::size_t k) {
  const std::size_t n = tree.adj.size();
  if (k < 1) throw PreconditionError("cut size k must be at least 1");
  if (tree.alive_count < k + 1) {
    throw PreconditionError("tree with " + std::to_string(tree.alive_count) +
                            " vertices is too small to cut a piece of size " + std::to_string(k));
  }

  Vertex leaf = 0;
  for (; leaf < n; ++leaf) {
    if (tree.alive[leaf] && tree.alive_degree(leaf) == 1) break;
  }
  if (leaf == n) throw InvariantViolation("tree without a leaf");

  constexpr Vertex kNone = static_cast<Vertex>(-1);
  std::vector<Vertex> parent(n, kNone);
  std::vector<std::size_t> depth(n, 0);
  std::vector<std::size_t> size(n, 1);
  std::vector<Vertex> order{leaf};
  order.reserve(tree.alive_count);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Vertex v = order[head];
    for (Vertex w : tree.adj[v]) {
      if (tree.alive[w] && w != parent[v]) {
        parent[w] = v;
        depth[w] = depth[v] + 1;
        order.push_back(w);
      }
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (parent[*it] != kNone) size[parent[*it]] += size[*it];
  }

  std::size_t deepest = 0;
  for (Vertex v : order) {
    if (size[v] >= k) deepest = std::max(deepest, depth[v]);
  }
  Vertex chosen = kNone;
  for (Vertex v : order) {
    if (depth[v] == deepest && size[v] >= k && (chosen == kNone || v < chosen)) chosen = v;
  }
  if (deepest == 0 || chosen == kNone) throw InvariantViolation("no cut level found");

  CutWithMembers out{{parent[chosen], chosen, size[chosen]}, {}};
  out.members.reserve(size[chosen]);
  std::vector<Vertex> stack{chosen};
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    out.members.push_back(v);
    for (Vertex w : tree.adj[v]) {
      if (tree.alive[w] && w != parent[v]) stack.push_back(w);
    }
  }
  std::sort(out.members.begin(), out.members.end());
  return out;
}

TreePiece make_piece(const RootedTree& t, std::vector<Vertex> members, Vertex global_root,
                     std::optional<Edge> connect_edge) {
  std::sort(members.begin(), members.end());
  std::vector<Vertex> local(t.size(), static_cast<Vertex>(-1));
  for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (const auto& [p, c] : t.edges()) {
    if (local[p] != static_cast<Vertex>(-1) && local[c] != static_cast<Vertex>(-1)) {
      edges.emplace_back(local[p], local[c]);
    }
  }
  TreePiece piece;
  piece.tree = RootedTree::from_edges(members.size(), edges, local[global_root], t.degree_bound());
  piece.to_global = std::move(members);
  piece.connect_edge = connect_edge;
  return piece;
}

}  // namespace

TreeCut cut_once(const RootedTree& t, std::size_t k) {
  ShrinkingTree tree(t);
  return cut_alive(tree, k).cut;
}

std::vector<std::size_t> TreePartition::piece_of() const {
  std::vector<std::size_t> out(tree_size, 0);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (Vertex g : pieces[i].to_global) out[g] = i;
  }
  return out;
}

double partition_piece_limit(std::size_t d, double epsilon) {
  const auto dd = static_cast<double>(d);
  return 10.0 * dd * dd * std::log(2.0 / epsilon);
}

TreePartition partition_tree(const RootedTree& t, Rational epsilon, std::size_t ambient_n) {
  const std::int64_t num = epsilon.num;
  const std::int64_t den = epsilon.den;
  if (num <= 0 || den <= 0 || 2 * num >= den) {
    throw PreconditionError("epsilon must lie in (0, 1/2)");
  }
  const auto k = static_cast<__int128>(t.size());
  const auto n = static_cast<__int128>(ambient_n);
  if (k * den > (den - num) * n) {
    throw PreconditionError("tree with " + std::to_string(t.size()) +
                            " vertices exceeds (1 - eps) n for n = " + std::to_string(ambient_n));
  }
  const auto d = static_cast<__int128>(t.degree_bound());

  // a = eps n / 2 + removed is kept as A / (2 den).
  auto scaled_a = [&](std::size_t removed) {
    return static_cast<__int128>(num) * n + 2 * static_cast<__int128>(den) * removed;
  };
  // size <= a / (8d)  <=>  16 d den size <= A
  auto within_upper = [&](std::size_t size, __int128 a) { return 16 * d * den * size <= a; };
  // size >= a / (8d^2)  <=>  16 d^2 den size >= A
  auto within_lower = [&](std::size_t size, __int128 a) { return 16 * d * d * den * size >= a; };

  ShrinkingTree tree(t);
  std::vector<TreePiece> back_to_front;
  std::size_t removed = 0;
  while (!within_upper(tree.alive_count, scaled_a(removed))) {
    const __int128 a = scaled_a(removed);
    if (a < 16 * d * d * den) {
      throw PreconditionError(
          "eps * n must be at least 16 d^2 for the cutting bounds to admit an integer piece size");
    }
    const auto piece_floor = static_cast<std::size_t>((a + 16 * d * d * den - 1) / (16 * d * d * den));
    auto cut = cut_alive(tree, piece_floor);
    if (!within_lower(cut.cut.subtree_size, a) || !within_upper(cut.cut.subtree_size, a)) {
      throw InvariantViolation("cut piece of size " + std::to_string(cut.cut.subtree_size) +
                               " violates the partition bounds");
    }
    for (Vertex v : cut.members) tree.alive[v] = false;
    tree.alive_count -= cut.members.size();
    removed += cut.members.size();
    back_to_front.push_back(make_piece(t, std::move(cut.members), cut.cut.child_vertex,
                                       Edge{cut.cut.parent_vertex, cut.cut.child_vertex}));
  }

  std::vector<Vertex> remainder;
  for (Vertex v = 0; v < t.size(); ++v) {
    if (tree.alive[v]) remainder.push_back(v);
  }
  TreePartition out;
  out.epsilon = epsilon;
  out.ambient_n = ambient_n;
  out.degree_bound = t.degree_bound();
  out.tree_size = t.size();
  out.pieces.reserve(back_to_front.size() + 1);
  const Vertex first_root = remainder.front();
  out.pieces.push_back(make_piece(t, std::move(remainder), first_root, std::nullopt));
  for (auto it = back_to_front.rbegin(); it != back_to_front.rend(); ++it) {
    out.pieces.push_back(std::move(*it));
  }

  const double limit = partition_piece_limit(t.degree_bound(), epsilon.to_double());
  if (static_cast<double>(out.pieces.size()) > limit) {
    throw InvariantViolation("partition produced " + std::to_string(out.pieces.size()) +
                             " pieces, above 10 d^2 log(2/eps)");
  }
  return out;
}

}  // namespace arbor
