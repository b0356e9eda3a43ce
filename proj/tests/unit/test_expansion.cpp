#include <doctest.h>

#include "arbor/errors.hpp"
#include "arbor/expansion.hpp"
#include "arbor/random.hpp"
#include "oracles.hpp"

using namespace arbor;

namespace {

Graph random_graph(std::size_t n, double p, RngStream& rng) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace

TEST_CASE("exact expansion examples") {
  const auto k6 = verify_expander_exact(complete_graph(6), 0.5, 2.0);
  CHECK(k6.verdict == Verdict::certified);
  CHECK_FALSE(k6.witness.has_value());

  const auto c8 = verify_expander_exact(cycle_graph(8), 0.25, 2.0);
  REQUIRE(c8.verdict == Verdict::refuted);
  CHECK(*c8.witness == std::vector<Vertex>{0, 2});
  CHECK(c8.witness_neighborhood == 3);

  const auto vacuous = verify_expander_exact(cycle_graph(8), 0.1, 100.0);
  CHECK(vacuous.verdict == Verdict::certified);
  CHECK(vacuous.subsets_checked == 0);
}

TEST_CASE("exact mode refuses large graphs") {
  CHECK_THROWS_AS(verify_expander_exact(cycle_graph(25), 0.1, 2.0), PreconditionError);
  ExpansionOptions wide;
  wide.exact_cap = 40;
  CHECK_THROWS_AS(verify_expander_exact(cycle_graph(33), 0.01, 2.0, wide), PreconditionError);
}

TEST_CASE("exact mode matches the naive oracle") {
  RngStream rng(12);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 1 + rng.below(12);
    const Graph g = random_graph(n, 0.2 + 0.6 * rng.uniform01(), rng);
    const double alpha = 0.1 + 0.4 * rng.uniform01();
    const double c = 0.5 + 3.0 * rng.uniform01();
    const bool exclude = rng.bernoulli(0.5);
    ExpansionOptions options;
    options.exclude_self = exclude;
    const auto v = verify_expander_exact(g, alpha, c, options);
    const auto expected = oracle::naive_expansion_witness(g, max_subset_size(alpha, n), c, exclude);
    CHECK((v.verdict == Verdict::refuted) == expected.has_value());
    if (expected) {
      CHECK(*v.witness == *expected);
      CHECK(witness_refutes(g, *v.witness, alpha, c, exclude));
    }
  }
}

TEST_CASE("certification is monotone in alpha and c") {
  RngStream rng(31);
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = 4 + rng.below(9);
    const Graph g = random_graph(n, 0.5, rng);
    const double alpha = 0.2 + 0.3 * rng.uniform01();
    const double c = 1.0 + 2.0 * rng.uniform01();
    if (verify_expander_exact(g, alpha, c).verdict != Verdict::certified) continue;
    const double a2 = alpha * rng.uniform01();
    const double c2 = c * rng.uniform01();
    CHECK(verify_expander_exact(g, a2, c2).verdict == Verdict::certified);
  }
}

TEST_CASE("sampled refutation") {
  const Graph c100 = cycle_graph(100);
  const auto v = refute_expander_sampled(c100, 0.25, 2.0, 1000, 7);
  REQUIRE(v.verdict == Verdict::refuted);
  CHECK(witness_refutes(c100, *v.witness, 0.25, 2.0));
  // the hand-checked witness
  CHECK(witness_refutes(c100, std::vector<Vertex>{0, 1, 2}, 0.25, 2.0));

  const auto k50 = refute_expander_sampled(complete_graph(50), 0.5, 2.0, 300, 7);
  CHECK(k50.verdict == Verdict::unresolved);
  CHECK_FALSE(k50.witness.has_value());

  CHECK_THROWS_AS(refute_expander_sampled(c100, 0.25, 2.0, 0, 7), InvalidInput);
}

TEST_CASE("sampled witnesses always re-verify and never contradict exact mode") {
  RngStream rng(44);
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = 6 + rng.below(15);
    const Graph g = random_graph(n, 0.15 + 0.5 * rng.uniform01(), rng);
    const double alpha = 0.2 + 0.3 * rng.uniform01();
    const double c = 1.0 + 2.0 * rng.uniform01();
    const auto sampled = refute_expander_sampled(g, alpha, c, 50, rng.next());
    if (sampled.verdict == Verdict::refuted) {
      CHECK(witness_refutes(g, *sampled.witness, alpha, c));
      CHECK(verify_expander_exact(g, alpha, c).verdict == Verdict::refuted);
    } else {
      CHECK(sampled.verdict == Verdict::unresolved);
    }
  }
}

TEST_CASE("friedman-pippenger condition") {
  CHECK(fp_condition_exact(complete_graph(7), 2, 2).verdict == Verdict::certified);
  const auto c8 = fp_condition_exact(cycle_graph(8), 2, 2);
  REQUIRE(c8.verdict == Verdict::refuted);
  CHECK(*c8.witness == std::vector<Vertex>{0});
  CHECK(fp_condition_exact(cycle_graph(8), 2, 1).verdict == Verdict::certified);
}

TEST_CASE("posa variant") {
  // In K_4, N({0,1}) = V but N({0,1}) \ {0,1} has two vertices.
  ExpansionOptions posa;
  posa.exclude_self = true;
  CHECK(verify_expander_exact(complete_graph(4), 0.5, 2.0).verdict == Verdict::certified);
  CHECK(verify_expander_exact(complete_graph(4), 0.5, 1.5, posa).verdict == Verdict::refuted);
}
