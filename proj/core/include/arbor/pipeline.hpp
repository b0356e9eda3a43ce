#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arbor/embedder.hpp"
#include "arbor/expansion.hpp"
#include "arbor/graph.hpp"
#include "arbor/rational.hpp"
#include "arbor/tree.hpp"

namespace arbor {

// ------------------------------------------------------- premise calculators

/// 10^6 d^3 log d log^2(2/eps) / eps: the edge density c above which G(n, c/n)
/// almost surely contains every such tree.
double theorem1_edge_density(std::size_t d, double epsilon);

/// 480 d^3 log(2/eps) / eps.
double order_threshold(std::size_t d, double epsilon);

/// 20 d^2 log(2/eps) / eps.
double split_class_count(std::size_t d, double epsilon);

/// eps delta / (40 d^2 log(2/eps)).
double local_expansion_min_degree(std::size_t d, double epsilon, std::size_t min_degree);

enum class PremiseStatus { holds, fails, assumed };

std::string_view to_string(PremiseStatus status);

struct LocalExpansionCheck {
  PremiseStatus status = PremiseStatus::assumed;
  ExpansionMode mode = ExpansionMode::exact;
  double min_degree_threshold = 0.0;
  std::uint64_t subgraphs_checked = 0;
  /// Offending induced subgraph U and the set X inside it, original labels.
  std::optional<std::vector<Vertex>> subgraph;
  std::optional<std::vector<Vertex>> witness;
};

struct EmbeddingPremiseReport {
  std::size_t n = 0;
  std::size_t d = 0;
  double epsilon = 0.0;
  std::size_t min_degree = 0;
  std::size_t max_degree = 0;
  // condition 1: n >= 480 d^3 log(2/eps) / eps
  double order_threshold = 0.0;
  bool order_ok = false;
  // condition 2: Delta^2 <= e^{delta/(8K) - 1} / K with K = 20 d^2 log(2/eps) / eps
  double class_count = 0.0;
  double degree_lhs = 0.0;
  double degree_rhs = 0.0;
  bool degree_ok = false;
  // condition 3: induced subgraphs of large minimum degree expand
  LocalExpansionCheck local_expansion;
};

struct PremiseOptions {
  ExpansionMode mode = ExpansionMode::exact;
  /// Graphs above this size get the sampled treatment for condition 3.
  std::size_t exact_cap = 20;
  std::size_t sampled_trials = 2000;
  std::uint64_t seed = 1;
};

/// Evaluates the three hypotheses of the nearly-spanning embedding theorem.
/// Condition 3 enumerates every vertex subset when n <= exact_cap; otherwise
/// it peels G down to its largest induced subgraph of the required minimum
/// degree and tries to refute expansion there by sampling ("assumed" if no
/// refutation turns up).
EmbeddingPremiseReport check_th1_premises(const Graph& g, std::size_t d, double epsilon,
                                  const PremiseOptions& options = {});

// ----------------------------------------------------------- core extraction

struct CoreExtractionReport {
  double theta = 0.0;
  std::size_t target_degree = 0;
  /// degree > 10 D in the input graph
  std::vector<Vertex> removed_high;
  /// removal order of the low-degree peeling
  std::vector<Vertex> removed_low;
  Graph core;
  /// core vertex -> input vertex
  std::vector<Vertex> core_to_original;
  /// core nonempty with every degree in [D, 10D]
  bool degrees_ok = false;
  /// total removals <= theta n
  bool within_budget = false;
};

/// Deletes every vertex of degree > 10D, then repeatedly deletes the
/// lowest-index vertex of current degree < D.
CoreExtractionReport extract_core(const Graph& g, std::size_t target_degree, double theta);

// ------------------------------------------------------- nearly spanning tree

struct StepRecord {
  std::size_t index = 0;
  std::size_t available = 0;
  std::size_t piece_size = 0;
  Vertex root_image = 0;
  /// Images of the roots of later pieces that hang off this piece.
  std::vector<Vertex> roots_added;
  long long backtracks = 0;
  /// A root placed in this step landed inside this step's reserved class.
  bool root_in_own_class = false;
  /// Host vertices the search was allowed to use (U_i).
  std::vector<Vertex> allowed;
  /// Host vertices taken by this piece.
  std::vector<Vertex> images;
  std::size_t pending_roots = 0;
};

struct PipelineTrace {
  double epsilon = 0.0;
  std::size_t d = 0;
  std::size_t piece_count = 0;
  std::size_t class_count = 0;
  bool split_verified = false;
  std::size_t split_rounds = 0;
  /// S_1..S_s in renumbered order, original labels.
  std::vector<std::vector<Vertex>> chosen_classes;
  std::size_t chosen_total = 0;
  std::size_t max_pending_roots = 0;
  std::vector<StepRecord> steps;
  std::vector<std::string> warnings;

  bool embedded = false;
  std::optional<std::size_t> failed_step;
  std::string failure_reason;
  std::size_t deepest_partial = 0;
};

struct PipelineResult {
  std::optional<Embedding> embedding;
  PipelineTrace trace;
};

struct PipelineOptions {
  EmbedBudget budget;
  std::size_t split_rounds = 1000;
};

/// Embeds a tree with at most (1 - eps) n vertices and maximum degree d:
/// partition the tree, split V(G) into K = ceil(2s/eps) classes and reserve the
/// s smallest, then embed the pieces in order, each inside the unused vertices
/// minus pending roots and other pieces' classes, together with the edges to
/// later pieces whose far endpoints become the next roots.
///
/// Search failures are reported in the trace, not thrown. The tree's own
/// degree bound is used as d.
PipelineResult embed_nearly_spanning(const Graph& g, const RootedTree& t, Rational epsilon,
                                     std::uint64_t seed, const PipelineOptions& options = {});

}  // namespace arbor
