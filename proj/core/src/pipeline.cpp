#include "arbor/pipeline.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>

#include "arbor/errors.hpp"
#include "arbor/splitter.hpp"

namespace arbor {

namespace {

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw InvalidInput("epsilon must lie in (0, 1/2)");
}

void require_d(std::size_t d) {
  if (d < 2) throw InvalidInput("degree bound d must be at least 2");
}

TreePartition single_piece_partition(const RootedTree& t, Rational epsilon, std::size_t n) {
  TreePartition out;
  out.epsilon = epsilon;
  out.ambient_n = n;
  out.degree_bound = t.degree_bound();
  out.tree_size = t.size();
  TreePiece piece{t, {}, std::nullopt};
  piece.to_global.resize(t.size());
  std::iota(piece.to_global.begin(), piece.to_global.end(), Vertex{0});
  out.pieces.push_back(std::move(piece));
  return out;
}

}  // namespace

// ------------------------------------------------------- premise calculators

double theorem1_edge_density(std::size_t d, double epsilon) {
  require_d(d);
  require_epsilon(epsilon);
  const auto dd = static_cast<double>(d);
  const double log_term = std::log(2.0 / epsilon);
  return 1e6 * dd * dd * dd * std::log(dd) * log_term * log_term / epsilon;
}

double order_threshold(std::size_t d, double epsilon) {
  require_d(d);
  require_epsilon(epsilon);
  const auto dd = static_cast<double>(d);
  return 480.0 * dd * dd * dd * std::log(2.0 / epsilon) / epsilon;
}

double split_class_count(std::size_t d, double epsilon) {
  require_d(d);
  require_epsilon(epsilon);
  const auto dd = static_cast<double>(d);
  return 20.0 * dd * dd * std::log(2.0 / epsilon) / epsilon;
}

double local_expansion_min_degree(std::size_t d, double epsilon, std::size_t min_degree) {
  require_d(d);
  require_epsilon(epsilon);
  const auto dd = static_cast<double>(d);
  return epsilon * static_cast<double>(min_degree) / (40.0 * dd * dd * std::log(2.0 / epsilon));
}

std::string_view to_string(PremiseStatus status) {
  switch (status) {
    case PremiseStatus::holds: return "holds";
    case PremiseStatus::fails: return "fails";
    case PremiseStatus::assumed: return "assumed";
  }
  return "unknown";
}

namespace {

/// Every U with min degree >= threshold in G[U] must satisfy
/// |N_{G[U]}(X)| >= (d+1)|X| for all X in U with |X| <= |U|/(2d+2).
LocalExpansionCheck local_expansion_exact(const Graph& g, std::size_t d, double threshold) {
  const std::size_t n = g.vertex_count();
  LocalExpansionCheck out;
  out.mode = ExpansionMode::exact;
  out.min_degree_threshold = threshold;
  out.status = PremiseStatus::holds;

  std::vector<std::uint32_t> rows(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w : g.neighbors(v)) rows[v] |= std::uint32_t{1} << w;
  }
  const double alpha = 1.0 / static_cast<double>(2 * d + 2);
  const auto c = static_cast<double>(d + 1);

  std::vector<Vertex> members;
  std::vector<std::uint32_t> stack_acc;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    const auto u = static_cast<std::uint32_t>(mask);
    members.clear();
    bool dense = true;
    for (std::uint32_t bits = u; bits != 0; bits &= bits - 1) {
      const auto v = static_cast<Vertex>(std::countr_zero(bits));
      if (static_cast<double>(std::popcount(rows[v] & u)) < threshold) {
        dense = false;
        break;
      }
      members.push_back(v);
    }
    if (!dense) continue;
    ++out.subgraphs_checked;
    const std::size_t max_size = max_subset_size(alpha, members.size());

    // Lexicographic subsets of U by increasing size.
    std::optional<std::uint32_t> witness;
    for (std::size_t t = 1; t <= max_size && !witness; ++t) {
      std::vector<std::size_t> idx(t);
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      while (true) {
        std::uint32_t x = 0;
        std::uint32_t hood = 0;
        for (std::size_t i : idx) {
          x |= std::uint32_t{1} << members[i];
          hood |= rows[members[i]];
        }
        hood &= u;
        if (static_cast<double>(std::popcount(hood)) < c * static_cast<double>(t) - 1e-9) {
          witness = x;
          break;
        }
        std::size_t i = t;
        while (i > 0 && idx[i - 1] == members.size() - t + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < t; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
    if (witness) {
      out.status = PremiseStatus::fails;
      out.subgraph = members;
      std::vector<Vertex> x;
      for (std::uint32_t bits = *witness; bits != 0; bits &= bits - 1) {
        x.push_back(static_cast<Vertex>(std::countr_zero(bits)));
      }
      out.witness = std::move(x);
      return out;
    }
  }
  return out;
}

/// Largest induced subgraph with minimum degree >= threshold.
std::vector<Vertex> peel_to_min_degree(const Graph& g, double threshold) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> degree(n);
  std::vector<bool> alive(n, true);
  std::vector<Vertex> queue;
  for (Vertex v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    if (static_cast<double>(degree[v]) < threshold) {
      alive[v] = false;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const Vertex v = queue.back();
    queue.pop_back();
    for (Vertex w : g.neighbors(v)) {
      if (alive[w] && static_cast<double>(--degree[w]) < threshold) {
        alive[w] = false;
        queue.push_back(w);
      }
    }
  }
  std::vector<Vertex> kept;
  for (Vertex v = 0; v < n; ++v) {
    if (alive[v]) kept.push_back(v);
  }
  return kept;
}

LocalExpansionCheck local_expansion_sampled(const Graph& g, std::size_t d, double threshold,
                                            const PremiseOptions& options) {
  LocalExpansionCheck out;
  out.mode = ExpansionMode::sampled;
  out.min_degree_threshold = threshold;
  const auto kept = peel_to_min_degree(g, threshold);
  if (kept.empty()) {
    // Every qualifying U lies inside this (empty) core.
    out.status = PremiseStatus::holds;
    return out;
  }
  const auto sub = induced_subgraph(g, VertexSet(g.vertex_count(), kept));
  out.subgraphs_checked = 1;
  const auto verdict = refute_expander_sampled(sub.graph, 1.0 / static_cast<double>(2 * d + 2),
                                               static_cast<double>(d + 1), options.sampled_trials,
                                               options.seed);
  if (verdict.verdict == Verdict::refuted) {
    out.status = PremiseStatus::fails;
    out.subgraph = kept;
    std::vector<Vertex> x;
    for (Vertex v : *verdict.witness) x.push_back(sub.to_original[v]);
    out.witness = std::move(x);
  } else {
    out.status = PremiseStatus::assumed;
  }
  return out;
}

}  // namespace

EmbeddingPremiseReport check_th1_premises(const Graph& g, std::size_t d, double epsilon,
                                  const PremiseOptions& options) {
  require_d(d);
  require_epsilon(epsilon);
  if (g.vertex_count() == 0) throw InvalidInput("premise check on the empty graph");
  EmbeddingPremiseReport report;
  report.n = g.vertex_count();
  report.d = d;
  report.epsilon = epsilon;
  const auto extrema = degree_extrema(g);
  report.min_degree = extrema.min_degree;
  report.max_degree = extrema.max_degree;

  report.order_threshold = order_threshold(d, epsilon);
  report.order_ok = static_cast<double>(report.n) >= report.order_threshold;

  report.class_count = split_class_count(d, epsilon);
  const auto big = static_cast<double>(report.max_degree);
  report.degree_lhs = big * big;
  report.degree_rhs =
      std::exp(static_cast<double>(report.min_degree) / (8.0 * report.class_count) - 1.0) /
      report.class_count;
  report.degree_ok = report.degree_lhs <= report.degree_rhs;

  const double threshold = local_expansion_min_degree(d, epsilon, report.min_degree);
  const bool exact = options.mode == ExpansionMode::exact &&
                     report.n <= std::min(options.exact_cap, kMaxExactCap);
  report.local_expansion = exact ? local_expansion_exact(g, d, threshold)
                                 : local_expansion_sampled(g, d, threshold, options);
  return report;
}

// ----------------------------------------------------------- core extraction

CoreExtractionReport extract_core(const Graph& g, std::size_t target_degree, double theta) {
  if (target_degree < 1) throw InvalidInput("target degree D must be at least 1");
  if (!(theta > 0.0 && theta < 0.5)) throw InvalidInput("theta must lie in (0, 1/2)");
  const std::size_t n = g.vertex_count();
  CoreExtractionReport report;
  report.theta = theta;
  report.target_degree = target_degree;

  std::vector<bool> alive(n, true);
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) > 10 * target_degree) {
      alive[v] = false;
      report.removed_high.push_back(v);
    }
  }
  std::vector<std::size_t> degree(n, 0);
  std::set<Vertex> low;
  for (Vertex v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    for (Vertex w : g.neighbors(v)) degree[v] += alive[w] ? 1 : 0;
    if (degree[v] < target_degree) low.insert(v);
  }
  while (!low.empty()) {
    const Vertex v = *low.begin();
    low.erase(low.begin());
    alive[v] = false;
    report.removed_low.push_back(v);
    for (Vertex w : g.neighbors(v)) {
      if (alive[w] && --degree[w] < target_degree) low.insert(w);
    }
  }

  VertexSet kept(n);
  for (Vertex v = 0; v < n; ++v) {
    if (alive[v]) kept.insert(v);
  }
  auto sub = induced_subgraph(g, kept);
  report.core = std::move(sub.graph);
  report.core_to_original = std::move(sub.to_original);
  if (report.core.vertex_count() > 0) {
    const auto [lo, hi] = degree_extrema(report.core);
    report.degrees_ok = lo >= target_degree && hi <= 10 * target_degree;
  }
  const auto removed = static_cast<double>(report.removed_high.size() + report.removed_low.size());
  report.within_budget = removed <= theta * static_cast<double>(n);
  return report;
}

// ------------------------------------------------------- nearly spanning tree

namespace {

constexpr std::size_t kUnreserved = static_cast<std::size_t>(-1);

struct Attachment {
  std::size_t piece;
  Vertex local_parent;
};

/// Piece tree plus one leaf per edge to a later piece; those leaves occupy
/// local indices piece_size, piece_size + 1, ...
RootedTree extended_piece(const TreePiece& piece, std::span<const Attachment> attachments,
                          std::size_t d) {
  auto parents = std::vector<std::int32_t>(piece.tree.parents().begin(), piece.tree.parents().end());
  for (const auto& a : attachments) parents.push_back(static_cast<std::int32_t>(a.local_parent));
  return RootedTree::from_parents(std::move(parents), d);
}

}  // namespace

PipelineResult embed_nearly_spanning(const Graph& g, const RootedTree& t, Rational epsilon,
                                     std::uint64_t seed, const PipelineOptions& options) {
  const std::size_t n = g.vertex_count();
  const std::size_t d = t.degree_bound();
  PipelineResult result;
  PipelineTrace& trace = result.trace;
  trace.epsilon = epsilon.to_double();
  trace.d = d;

  // (a) cut the tree
  if (static_cast<__int128>(t.size()) * epsilon.den >
      static_cast<__int128>(epsilon.den - epsilon.num) * static_cast<__int128>(n)) {
    throw PreconditionError("tree with " + std::to_string(t.size()) +
                            " vertices exceeds (1 - eps) n for n = " + std::to_string(n));
  }
  TreePartition partition;
  if (static_cast<std::int64_t>(n) * epsilon.num <
      16 * static_cast<std::int64_t>(d * d) * epsilon.den) {
    // eps n < 16 d^2: the cutting bounds admit no piece size, so the tree goes in whole
    partition = single_piece_partition(t, epsilon, n);
    trace.warnings.push_back("eps n < 16 d^2, tree embedded as a single piece");
  } else {
    partition = partition_tree(t, epsilon, n);
  }
  const std::size_t s = partition.piece_count();
  trace.piece_count = s;

  // (b) split the host and reserve the s smallest classes
  const auto k_classes = static_cast<std::size_t>(
      ceil_div(2 * static_cast<std::int64_t>(s) * epsilon.den, epsilon.num));
  trace.class_count = k_classes;
  DegreeSplit split;
  try {
    split = split_degrees(g, k_classes, seed, options.split_rounds);
  } catch (const SplitFailure& failure) {
    split = failure.last_coloring();
    trace.warnings.push_back(std::string("degree split guarantee not met, using last coloring: ") +
                             failure.what());
  }
  trace.split_verified = split.verified;
  trace.split_rounds = split.attempts_used;

  std::vector<std::size_t> by_size(k_classes);
  std::iota(by_size.begin(), by_size.end(), std::size_t{0});
  std::stable_sort(by_size.begin(), by_size.end(), [&](std::size_t a, std::size_t b) {
    return split.classes[a].size() < split.classes[b].size();
  });
  std::vector<std::size_t> reserved_for(n, kUnreserved);
  for (std::size_t i = 0; i < s; ++i) {
    const auto& cls = split.classes[by_size[i]];
    trace.chosen_classes.push_back(cls);
    trace.chosen_total += cls.size();
    for (Vertex v : cls) reserved_for[v] = i;
  }
  // sum |S_i| <= s n / K <= eps n / 2
  if (2 * static_cast<std::int64_t>(trace.chosen_total) * epsilon.den >
      epsilon.num * static_cast<std::int64_t>(n)) {
    trace.warnings.push_back("reserved classes exceed eps n / 2 vertices");
  }

  // (c) first root outside every reserved class
  std::optional<Vertex> first_root;
  for (Vertex v = 0; v < n; ++v) {
    if (reserved_for[v] == kUnreserved) {
      first_root = v;
      break;
    }
  }
  if (!first_root) {
    trace.failed_step = 0;
    trace.failure_reason = "reserved classes cover every vertex; no first root available";
    return result;
  }

  // Which later pieces hang off each piece, through which local vertex.
  const auto piece_of = partition.piece_of();
  std::vector<Vertex> local_index(t.size());
  for (const auto& piece : partition.pieces) {
    for (Vertex i = 0; i < piece.to_global.size(); ++i) local_index[piece.to_global[i]] = i;
  }
  std::vector<std::vector<Attachment>> attachments(s);
  for (std::size_t j = 1; j < s; ++j) {
    const Vertex anchor = partition.pieces[j].connect_edge->first;
    attachments[piece_of[anchor]].push_back({j, local_index[anchor]});
  }

  // (d) embed piece by piece
  std::vector<Vertex> final_map(t.size(), 0);
  std::vector<bool> used(n, false);
  std::vector<bool> pending(n, false);
  std::vector<std::optional<Vertex>> root_of(s);
  root_of[0] = *first_root;
  pending[*first_root] = true;
  std::size_t pending_count = 1;
  trace.max_pending_roots = 1;

  for (std::size_t i = 0; i < s; ++i) {
    const TreePiece& piece = partition.pieces[i];
    if (!root_of[i]) throw InvariantViolation("piece reached without a planned root");
    const Vertex x = *root_of[i];

    VertexSet allowed(n);
    for (Vertex v = 0; v < n; ++v) {
      if (v == x) {
        allowed.insert(v);
        continue;
      }
      if (used[v] || pending[v]) continue;
      if (reserved_for[v] != kUnreserved && reserved_for[v] != i) continue;
      allowed.insert(v);
    }

    StepRecord step;
    step.index = i;
    step.available = allowed.size();
    step.piece_size = piece.tree.size();
    step.root_image = x;
    step.allowed = allowed.members();

    const auto u = static_cast<double>(allowed.size());
    const auto dd = static_cast<double>(d);
    if (static_cast<double>(piece.tree.size()) > u / (8.0 * dd)) {
      trace.warnings.push_back("step " + std::to_string(i) + ": |T_i| > |U_i| / (8d)");
    }
    if (static_cast<double>(s) > u / (24.0 * dd)) {
      trace.warnings.push_back("step " + std::to_string(i) + ": s > |U_i| / (24d)");
    }

    const RootedTree guest = extended_piece(piece, attachments[i], d);
    const InducedSubgraph host = induced_subgraph(g, allowed);
    Embedding local;
    try {
      if (guest.size() > host.graph.vertex_count()) {
        throw SearchFailure("not enough available vertices for this piece", 0, 0, true);
      }
      local = embed_rooted_tree(host.graph, guest, host.from_original[x], options.budget);
    } catch (const SearchFailure& failure) {
      trace.failed_step = i;
      trace.failure_reason = failure.what();
      trace.deepest_partial = failure.deepest_partial();
      step.backtracks = failure.backtracks();
      trace.steps.push_back(std::move(step));
      return result;
    }
    step.backtracks = local.backtracks;

    for (Vertex v = 0; v < piece.tree.size(); ++v) {
      const Vertex image = host.to_original[local.map[v]];
      final_map[piece.to_global[v]] = image;
      used[image] = true;
      step.images.push_back(image);
    }
    std::sort(step.images.begin(), step.images.end());
    pending[x] = false;
    --pending_count;
    for (std::size_t a = 0; a < attachments[i].size(); ++a) {
      const Vertex image = host.to_original[local.map[piece.tree.size() + a]];
      root_of[attachments[i][a].piece] = image;
      pending[image] = true;
      ++pending_count;
      step.roots_added.push_back(image);
      if (reserved_for[image] == i) step.root_in_own_class = true;
    }
    step.pending_roots = pending_count;
    trace.max_pending_roots = std::max(trace.max_pending_roots, pending_count);
    trace.steps.push_back(std::move(step));
  }

  // (e) certify
  Embedding embedding;
  embedding.map = std::move(final_map);
  embedding.used = embedding.map;
  std::sort(embedding.used.begin(), embedding.used.end());
  for (const auto& step : trace.steps) embedding.backtracks += step.backtracks;
  const auto check = verify_embedding(g, t, embedding);
  if (!check) throw InvariantViolation("pipeline produced an invalid embedding: " + check.reason);
  trace.embedded = true;
  result.embedding = std::move(embedding);
  return result;
}

}  // namespace arbor
