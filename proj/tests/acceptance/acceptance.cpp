// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "arbor/errors.hpp"
#include "arbor/expansion.hpp"
#include "arbor/experiment.hpp"
#include "arbor/generators.hpp"
#include "arbor/pipeline.hpp"
#include "arbor/spectral.hpp"
#include "arbor/splitter.hpp"
#include "arbor/tree.hpp"
#include "oracles.hpp"

using namespace arbor;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

// 1 --------------------------------------------------------------------------

Outcome tree_cutting_bounds() {
  const auto start = Clock::now();
  const std::size_t ds[] = {2, 3, 4, 5};
  const Rational eps_values[] = {{1, 10}, {3, 10}, {9, 20}};
  RngStream rng(2024, 1);
  std::size_t violations = 0;
  std::string first;
  for (std::size_t i = 0; i < 1000; ++i) {
    const std::size_t d = ds[i % 4];
    const Rational eps = eps_values[(i / 4) % 3];
    const std::size_t k = 1 + rng.below(500);
    const RootedTree t = random_bounded_degree_tree(k, d, rng.next());
    // smallest n with k <= (1 - eps) n and eps n >= 16 d^2
    std::size_t n = static_cast<std::size_t>(ceil_div(static_cast<std::int64_t>(k) * eps.den, eps.den - eps.num));
    n = std::max<std::size_t>(n, static_cast<std::size_t>(ceil_div(16 * static_cast<std::int64_t>(d * d) * eps.den, eps.num)));
    std::string err;
    try {
      err = oracle::check_partition(t, partition_tree(t, eps, n), eps, n, d);
    } catch (const Error& e) {
      err = e.what();
    }
    if (!err.empty()) {
      if (violations++ == 0) first = err;
    }
  }
  const double secs = seconds_since(start);
  Outcome out;
  out.pass = violations == 0 && secs < 10.0;
  out.detail = fmt("1000 partitions, %.0f violations, %.2f s", static_cast<double>(violations), secs);
  if (!first.empty()) out.detail += " (first: " + first + ")";
  return out;
}

// 2 --------------------------------------------------------------------------

Outcome cut_once_exhaustive() {
  const auto start = Clock::now();
  std::size_t checked = 0;
  std::size_t violations = 0;
  for (std::size_t n = 2; n <= 9; ++n) {
    oracle::for_each_labeled_tree(n, [&](const std::vector<Edge>& edges) {
      // root at 0 by BFS over the edge list
      std::vector<std::vector<Vertex>> adj(n);
      for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
      }
      std::vector<std::int32_t> parent(n, -2);
      std::vector<Vertex> order{0};
      parent[0] = -1;
      for (std::size_t i = 0; i < order.size(); ++i) {
        for (Vertex w : adj[order[i]]) {
          if (parent[w] == -2) {
            parent[w] = static_cast<std::int32_t>(order[i]);
            order.push_back(w);
          }
        }
      }
      std::size_t max_deg = 0;
      for (const auto& a : adj) max_deg = std::max(max_deg, a.size());
      const std::size_t d = std::max<std::size_t>(2, max_deg);
      // brute force: size of the side of every edge that holds the child
      std::vector<std::size_t> below(n, 1);
      for (std::size_t i = n; i-- > 1;) below[parent[order[i]]] += below[order[i]];
      auto side = [&](Vertex p, Vertex c) -> std::size_t {
        if (parent[c] == static_cast<std::int32_t>(p)) return below[c];
        if (parent[p] == static_cast<std::int32_t>(c)) return n - below[p];
        return 0;  // not an edge
      };
      const RootedTree t = RootedTree::from_parents(parent, d);
      for (std::size_t k = 1; k + 1 <= n; ++k) {
        ++checked;
        const std::size_t hi = (d - 1) * (k - 1) + 1;
        bool exists = false;
        for (auto [u, v] : edges) {
          const std::size_t a = side(u, v);
          const std::size_t b = n - a;
          exists |= (a >= k && a <= hi) || (b >= k && b <= hi);
        }
        TreeCut cut{};
        try {
          cut = cut_once(t, k);
        } catch (const Error&) {
          ++violations;
          continue;
        }
        const std::size_t actual = side(cut.parent_vertex, cut.child_vertex);
        if (!exists || actual == 0 || actual != cut.subtree_size || actual < k || actual > hi) ++violations;
      }
    });
  }
  const double secs = seconds_since(start);
  Outcome out;
  out.pass = violations == 0;
  out.detail = fmt("%.0f (tree, k) cases, %.0f violations, %.1f s", static_cast<double>(checked),
                   static_cast<double>(violations), secs);
  return out;
}

// 3 --------------------------------------------------------------------------

bool independent_split_check(const Graph& g, const DegreeSplit& s) {
  const std::size_t n = g.vertex_count();
  if (s.color.size() != n || s.classes.size() != s.class_count) return false;
  std::size_t members = 0;
  for (std::size_t i = 0; i < s.classes.size(); ++i) {
    for (Vertex v : s.classes[i]) {
      if (v >= n || s.color[v] != i) return false;
    }
    members += s.classes[i].size();
  }
  if (members != n) return false;
  std::size_t delta = n;
  for (Vertex v = 0; v < n; ++v) delta = std::min(delta, g.degree(v));
  const std::size_t need = (delta + 2 * s.class_count - 1) / (2 * s.class_count);
  std::vector<std::size_t> count(s.class_count);
  for (Vertex v = 0; v < n; ++v) {
    std::fill(count.begin(), count.end(), 0);
    for (Vertex w : g.neighbors(v)) ++count[s.color[w]];
    for (std::size_t c : count) {
      if (c < need) return false;
    }
  }
  return true;
}

Outcome degree_splitting() {
  const auto start = Clock::now();
  std::size_t ok = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RngStream rng(seed, 3);
    const Graph g = random_regular(1000, 30, rng);
    try {
      const DegreeSplit s = split_degrees(g, 3, seed, 1000);
      if (s.verified && verify_split(g, s) && independent_split_check(g, s)) ++ok;
    } catch (const SplitFailure&) {
    }
  }
  const double secs = seconds_since(start);
  Outcome out;
  out.pass = ok == 100 && secs < 30.0;
  out.detail = fmt("%.0f/100 verified splits, %.1f s", static_cast<double>(ok), secs);
  return out;
}

// 4 --------------------------------------------------------------------------

Outcome mixing_lemma() {
  std::size_t audits = 0;
  std::size_t violations = 0;
  RngStream rng(77, 4);
  const std::size_t degrees[] = {3, 4, 6, 8, 10};
  for (std::size_t i = 0; i < 20; ++i) {
    const std::size_t n = 100 + 10 * i;
    const Graph g = random_regular(n, degrees[i % 5], rng);
    const SpectralProfile profile = second_eigenvalue(g, EigenMethod::exact_dense);
    for (std::size_t pair = 0; pair < 1000; ++pair) {
      VertexSet b(n);
      VertexSet c(n);
      const double pb = rng.uniform01();
      const double pc = rng.uniform01();
      for (Vertex v = 0; v < n; ++v) {
        if (rng.bernoulli(pb)) b.insert(v);
        if (rng.bernoulli(pc)) c.insert(v);
      }
      ++audits;
      if (!mixing_bound_audit(g, profile, b, c).holds) ++violations;
    }
  }
  Outcome out;
  out.pass = violations == 0;
  out.detail = fmt("%.0f audits, %.0f violations", static_cast<double>(audits), static_cast<double>(violations));
  return out;
}

// 5 --------------------------------------------------------------------------

Graph cocktail_party(std::size_t pairs) {
  const std::size_t n = 2 * pairs;
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (v != u + pairs) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges);
}

Outcome expander_lemma() {
  std::vector<std::pair<std::string, Graph>> corpus;
  for (std::size_t n = 4; n <= 14; ++n) corpus.emplace_back("K" + std::to_string(n), complete_graph(n));
  corpus.emplace_back("Petersen", petersen_graph());
  for (std::size_t m : {6u, 7u, 8u}) corpus.emplace_back("CP" + std::to_string(m), cocktail_party(m));
  RngStream rng(5, 5);
  corpus.emplace_back("R(20,6)", random_regular(20, 6, rng));
  corpus.emplace_back("R(18,10)", random_regular(18, 10, rng));

  std::size_t subgraphs = 0;
  std::size_t violations = 0;
  std::string first;
  for (const auto& [name, g] : corpus) {
    const std::size_t n = g.vertex_count();
    const double lambda = second_eigenvalue(g, EigenMethod::exact_dense).lambda;
    std::vector<std::uint32_t> rows(n, 0);
    for (Vertex v = 0; v < n; ++v) {
      for (Vertex w : g.neighbors(v)) rows[v] |= 1U << w;
    }
    for (std::size_t d : {2u, 3u}) {
      const double d0 = fp_min_degree_threshold(d, lambda);
      for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
        bool qualifies = true;
        for (Vertex v = 0; v < n && qualifies; ++v) {
          if ((mask >> v) & 1U) qualifies = std::popcount(rows[v] & mask) >= d0 - 1e-9;
        }
        if (!qualifies) continue;
        VertexSet u(n);
        for (Vertex v = 0; v < n; ++v) {
          if ((mask >> v) & 1U) u.insert(v);
        }
        const Graph h = induced_subgraph(g, u).graph;
        ++subgraphs;
        const auto verdict =
            verify_expander_exact(h, 1.0 / (2.0 * static_cast<double>(d) + 2.0), static_cast<double>(d + 1));
        if (verdict.verdict != Verdict::certified) {
          if (violations++ == 0) first = name + " d=" + std::to_string(d);
        }
      }
    }
  }
  Outcome out;
  out.pass = violations == 0 && subgraphs > 0;
  out.detail = fmt("%.0f qualifying induced subgraphs, %.0f violations", static_cast<double>(subgraphs),
                   static_cast<double>(violations));
  if (!first.empty()) out.detail += " (first: " + first + ")";
  return out;
}

// 6 --------------------------------------------------------------------------

Outcome embedder_completeness() {
  const auto start = Clock::now();
  std::vector<std::vector<RootedTree>> trees(7);
  for (std::size_t k = 1; k <= 6; ++k) trees[k] = oracle::rooted_trees(k);
  EmbedBudget budget;
  budget.max_backtracks = EmbedBudget::kUnbounded;
  std::size_t hosts = 0;
  std::size_t checked = 0;
  std::size_t disagreements = 0;
  for (std::size_t n = 1; n <= 7; ++n) {
    for (const auto& rows : oracle::graphs_up_to_iso(n)) {
      if (!oracle::connected(n, rows)) continue;
      ++hosts;
      const Graph h = oracle::graph_from_rows(rows);
      for (std::size_t k = 1; k <= std::min<std::size_t>(6, n); ++k) {
        for (const auto& t : trees[k]) {
          const auto truth = oracle::embeddable_roots(h, t);
          for (Vertex r = 0; r < n; ++r) {
            bool found = false;
            try {
              const Embedding e = embed_rooted_tree(h, t, r, budget);
              found = verify_embedding(h, t, e).ok && e.map[t.root()] == r;
              if (!found) ++disagreements;  // an invalid embedding counts against us
            } catch (const SearchFailure& f) {
              if (!f.exhausted()) ++disagreements;
            }
            if (found != truth[r]) ++disagreements;
            ++checked;
          }
        }
      }
    }
  }
  const double secs = seconds_since(start);
  Outcome out;
  out.pass = disagreements == 0 && secs < 300.0;
  out.detail = fmt("%.0f connected hosts, %.0f (host, tree, root) cases, ", static_cast<double>(hosts),
                   static_cast<double>(checked)) +
               fmt("%.0f disagreements, %.1f s", static_cast<double>(disagreements), secs);
  return out;
}

// 7 --------------------------------------------------------------------------

Outcome end_to_end() {
  const auto start = Clock::now();
  ExperimentConfig cfg;
  cfg.model = HostModel::gnp;
  cfg.n = 1000;
  cfg.c = 30.0;
  cfg.d = 3;
  cfg.epsilon = Rational{2, 5};
  cfg.trials = 50;
  cfg.seed = 1;
  const TrialReport report = run_experiment(cfg);
  std::size_t replayed = 0;
  std::size_t wrong_size = 0;
  for (const auto& t : report.trials) {
    if (t.tree_size != 600) ++wrong_size;
    if (t.outcome != TrialOutcome::success) continue;
    if (replay_trial(cfg, t.index).verified) ++replayed;
  }
  const double secs = seconds_since(start);
  Outcome out;
  out.pass = wrong_size == 0 && report.success_rate >= 0.9 && replayed == report.successes && secs < 300.0;
  out.detail = fmt("%.0f/50 successes, ", static_cast<double>(report.successes)) +
               fmt("%.0f replayed, Wilson [%.3f, %.3f], ", static_cast<double>(replayed), report.interval.low,
                   report.interval.high) +
               fmt("%.1f s", secs);
  return out;
}

// 8 --------------------------------------------------------------------------

Outcome core_extraction() {
  std::size_t good = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RngStream rng(seed, 8);
    const Graph g = gnp(2000, 240.0 / 2000.0, rng);
    const auto rep = extract_core(g, 60, 0.1);
    if (rep.within_budget && rep.degrees_ok) ++good;
  }
  Outcome out;
  out.pass = good >= 18;
  out.detail = fmt("%.0f/20 instances within budget with degrees in [D, 10D]", static_cast<double>(good));
  return out;
}

// 9 --------------------------------------------------------------------------

bool close4(double actual, double expected) {
  return std::abs(actual - expected) <= 5e-5 * std::abs(expected);
}

Outcome calculators() {
  struct Row {
    const char* name;
    double actual;
    double expected;
  };
  const Row rows[] = {
      {"theorem1_edge_density(2, 0.4)", theorem1_edge_density(2, 0.4), 3.590905e7},
      {"theorem1_edge_density(3, 0.25)", theorem1_edge_density(3, 0.25), 5.130523e8},
      {"theorem2 ratio (2, 0.4)", check_theorem2_premise(100, 1.0, 2, 0.4).required_ratio, 3641.742},
      {"theorem2 ratio (3, 0.25)", check_theorem2_premise(100, 1.0, 3, 0.25).required_ratio, 20745.78},
      {"l44 lhs (2, 200, 14)", check_l44_premise(2, 200, 14).lhs, 0.003970997},
      {"l44 lhs (2, 8, 8)", check_l44_premise(2, 8, 8).lhs, 211.0363},
      {"fp threshold (2, 10)", fp_min_degree_threshold(2, 10.0), 42.42641},
      {"fp threshold (4, 5)", fp_min_degree_threshold(4, 5.0), 25.0},
  };
  std::size_t bad = 0;
  std::string first;
  for (const auto& r : rows) {
    if (!close4(r.actual, r.expected)) {
      if (bad++ == 0) first = r.name;
    }
  }
  const bool verdicts = check_l44_premise(2, 200, 14).holds && !check_l44_premise(2, 8, 8).holds &&
                        check_theorem2_premise(4000, 1.0, 2, 0.4).holds &&
                        !check_theorem2_premise(3000, 1.0, 2, 0.4).holds;
  Outcome out;
  out.pass = bad == 0 && verdicts;
  out.detail = fmt("%.0f values, %.0f off at 4 significant digits", static_cast<double>(std::size(rows)),
                   static_cast<double>(bad));
  if (!verdicts) out.detail += ", premise verdicts wrong";
  if (!first.empty()) out.detail += " (first: " + first + ")";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"tree cutting bounds", tree_cutting_bounds},
      {"cut_once exhaustive", cut_once_exhaustive},
      {"degree splitting", degree_splitting},
      {"mixing lemma", mixing_lemma},
      {"expansion of high min-degree subgraphs", expander_lemma},
      {"embedder completeness", embedder_completeness},
      {"end-to-end pipeline", end_to_end},
      {"core extraction", core_extraction},
      {"premise calculators", calculators},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first
              << " -- " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
