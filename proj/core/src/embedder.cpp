#include "arbor/embedder.hpp"

#include <algorithm>

#include "arbor/errors.hpp"
#include "arbor/random.hpp"

namespace arbor {

std::optional<NodeOrder> parse_node_order(std::string_view name) {
  if (name == "bfs") return NodeOrder::bfs;
  if (name == "dfs") return NodeOrder::dfs;
  return std::nullopt;
}

std::optional<CandidateRule> parse_candidate_rule(std::string_view name) {
  if (name == "min_residual_degree" || name == "min-residual") return CandidateRule::min_residual_degree;
  if (name == "max_residual_degree" || name == "max-residual") return CandidateRule::max_residual_degree;
  if (name == "random") return CandidateRule::random;
  return std::nullopt;
}

std::string_view to_string(NodeOrder order) { return order == NodeOrder::bfs ? "bfs" : "dfs"; }

std::string_view to_string(CandidateRule rule) {
  switch (rule) {
    case CandidateRule::min_residual_degree: return "min_residual_degree";
    case CandidateRule::max_residual_degree: return "max_residual_degree";
    case CandidateRule::random: return "random";
  }
  return "unknown";
}

namespace {

class TreeSearch {
 public:
  TreeSearch(const Graph& host, const RootedTree& guest, const EmbedBudget& budget)
      : host_(host),
        guest_(guest),
        budget_(budget),
        rng_(budget.seed, 0x656d626564ULL),
        order_(budget.order == NodeOrder::bfs ? guest.bfs_order() : guest.dfs_order()),
        used_(host.vertex_count(), false),
        residual_(host.vertex_count()),
        map_(guest.size(), 0),
        candidates_(guest.size()),
        next_(guest.size(), 0),
        built_(guest.size(), false) {
    for (Vertex v = 0; v < host.vertex_count(); ++v) residual_[v] = host.degree(v);
  }

  Embedding run(Vertex root_image) {
    const std::size_t k = guest_.size();
    if (residual_[root_image] < guest_.children(guest_.root()).size()) {
      fail(0, true);
    }
    place(guest_.root(), root_image);
    std::size_t pos = 1;
    std::size_t deepest = 1;
    while (pos < k) {
      if (!built_[pos]) build(pos);
      if (next_[pos] < candidates_[pos].size()) {
        place(order_[pos], candidates_[pos][next_[pos]++]);
        deepest = std::max(deepest, ++pos);
        continue;
      }
      built_[pos] = false;
      --pos;
      if (pos == 0) fail(deepest, true);
      unplace(order_[pos]);
      ++backtracks_;
      if (!budget_.unbounded() && backtracks_ > budget_.max_backtracks) fail(deepest, false);
    }

    Embedding out;
    out.map = map_;
    out.used = map_;
    std::sort(out.used.begin(), out.used.end());
    out.backtracks = backtracks_;
    return out;
  }

 private:
  [[noreturn]] void fail(std::size_t deepest, bool exhausted) {
    throw SearchFailure(exhausted ? "no embedding exists for this root image"
                                  : "backtrack budget exhausted before an embedding was found",
                        deepest, backtracks_, exhausted);
  }

  void place(Vertex guest_vertex, Vertex host_vertex) {
    map_[guest_vertex] = host_vertex;
    used_[host_vertex] = true;
    for (Vertex w : host_.neighbors(host_vertex)) --residual_[w];
  }

  void unplace(Vertex guest_vertex) {
    const Vertex host_vertex = map_[guest_vertex];
    used_[host_vertex] = false;
    for (Vertex w : host_.neighbors(host_vertex)) ++residual_[w];
  }

  void build(std::size_t pos) {
    const Vertex g = order_[pos];
    const std::size_t need = guest_.children(g).size();
    const Vertex anchor = map_[static_cast<Vertex>(guest_.parent(g))];
    auto& list = candidates_[pos];
    list.clear();
    for (Vertex w : host_.neighbors(anchor)) {
      if (!used_[w] && residual_[w] >= need) list.push_back(w);
    }
    switch (budget_.rule) {
      case CandidateRule::min_residual_degree:
        std::stable_sort(list.begin(), list.end(),
                         [&](Vertex a, Vertex b) { return residual_[a] < residual_[b]; });
        break;
      case CandidateRule::max_residual_degree:
        std::stable_sort(list.begin(), list.end(),
                         [&](Vertex a, Vertex b) { return residual_[a] > residual_[b]; });
        break;
      case CandidateRule::random:
        rng_.shuffle(std::span<Vertex>(list));
        break;
    }
    next_[pos] = 0;
    built_[pos] = true;
  }

  const Graph& host_;
  const RootedTree& guest_;
  const EmbedBudget& budget_;
  RngStream rng_;
  std::vector<Vertex> order_;
  std::vector<bool> used_;
  std::vector<std::size_t> residual_;
  std::vector<Vertex> map_;
  std::vector<std::vector<Vertex>> candidates_;
  std::vector<std::size_t> next_;
  std::vector<bool> built_;
  long long backtracks_ = 0;
};

}  // namespace

Embedding embed_rooted_tree(const Graph& host, const RootedTree& guest, Vertex root_image,
                            const EmbedBudget& budget) {
  if (guest.size() == 0) throw InvalidInput("cannot embed an empty tree");
  if (guest.size() > host.vertex_count()) {
    throw PreconditionError("guest tree has more vertices than the host graph");
  }
  host.require_vertex(root_image);
  if (budget.max_backtracks < 0 && !budget.unbounded()) {
    throw InvalidInput("max_backtracks must be non-negative or the unbounded sentinel");
  }
  return TreeSearch(host, guest, budget).run(root_image);
}

EmbeddingCheck verify_embedding(const Graph& host, const RootedTree& guest,
                                const Embedding& embedding) {
  EmbeddingCheck check;
  auto reject = [&](std::string reason, std::optional<Edge> pair) {
    check.ok = false;
    check.reason = std::move(reason);
    check.violation = pair;
    return check;
  };
  if (embedding.map.size() != guest.size()) return reject("map size differs from guest size", {});
  constexpr Vertex kFree = static_cast<Vertex>(-1);
  std::vector<Vertex> owner(host.vertex_count(), kFree);
  for (Vertex g = 0; g < embedding.map.size(); ++g) {
    const Vertex h = embedding.map[g];
    if (h >= host.vertex_count()) return reject("image outside the host", Edge{g, g});
    if (owner[h] != kFree) return reject("two guest vertices share an image", Edge{owner[h], g});
    owner[h] = g;
  }
  for (const auto& [p, c] : guest.edges()) {
    if (!host.has_edge(embedding.map[p], embedding.map[c])) {
      return reject("guest edge not mapped to a host edge", Edge{p, c});
    }
  }
  std::vector<Vertex> image = embedding.map;
  std::sort(image.begin(), image.end());
  if (image != embedding.used) return reject("used set differs from the image of the map", {});
  return check;
}

}  // namespace arbor
