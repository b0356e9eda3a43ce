#include <doctest.h>

#include <cmath>

#include "arbor/generators.hpp"
#include "arbor/splitter.hpp"

using namespace arbor;

namespace {

/// Counts neighbors per class straight from the edge list.
bool independent_check(const Graph& g, const DegreeSplit& s) {
  const std::size_t n = g.vertex_count();
  std::vector<int> seen(n, 0);
  for (std::size_t i = 0; i < s.classes.size(); ++i) {
    for (Vertex v : s.classes[i]) {
      if (v >= n || seen[v]++ != 0 || s.color[v] != i) return false;
    }
  }
  for (int x : seen) {
    if (x != 1) return false;
  }
  std::vector<std::vector<std::size_t>> count(n, std::vector<std::size_t>(s.class_count, 0));
  for (auto [u, v] : g.edges()) {
    ++count[u][s.color[v]];
    ++count[v][s.color[u]];
  }
  std::size_t delta = n;
  for (Vertex v = 0; v < n; ++v) delta = std::min(delta, g.degree(v));
  const std::size_t need = (delta + 2 * s.class_count - 1) / (2 * s.class_count);
  if (need != s.required_neighbors) return false;
  for (Vertex v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < s.class_count; ++i) {
      if (count[v][i] < need) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("local lemma premise") {
  const auto yes = check_l44_premise(2, 200, 14);
  CHECK(yes.holds);
  CHECK(yes.lhs == doctest::Approx(0.0039709967).epsilon(1e-6));
  const auto no = check_l44_premise(2, 8, 8);
  CHECK_FALSE(no.holds);
  CHECK(no.lhs == doctest::Approx(211.0363226).epsilon(1e-6));
  const auto one = check_l44_premise(1, 50, 50);
  CHECK(one.lhs == doctest::Approx(2500.0 * std::exp(-50.0 / 8.0 + 1.0)));
}

TEST_CASE("one class holds everything") {
  const Graph g = petersen_graph();
  const DegreeSplit s = split_degrees(g, 1, 3);
  CHECK(s.classes.size() == 1);
  CHECK(s.classes[0].size() == 10);
  CHECK(s.required_neighbors == 2);
  CHECK(s.verified);
  CHECK(independent_check(g, s));
}

TEST_CASE("complete graph, two classes") {
  const Graph k9 = complete_graph(9);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const DegreeSplit s = split_degrees(k9, 2, seed);
    CHECK(s.required_neighbors == 2);
    CHECK(independent_check(k9, s));
    CHECK(verify_split(k9, s));
  }
}

TEST_CASE("cycle, two classes") {
  // Every vertex of C_n needs its two neighbors in different classes. On C_6
  // that properly 2-colors the triangle {0, 2, 4}, so no split exists; an
  // exhaustive search over all 64 colorings agrees.
  const Graph c6 = cycle_graph(6);
  std::size_t valid = 0;
  for (std::uint32_t mask = 0; mask < 64; ++mask) {
    bool ok = true;
    for (Vertex v = 0; v < 6; ++v) {
      ok &= ((mask >> ((v + 1) % 6)) & 1U) != ((mask >> ((v + 5) % 6)) & 1U);
    }
    valid += ok;
  }
  CHECK(valid == 0);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    CHECK_THROWS_AS(split_degrees(c6, 2, seed, 200), SplitFailure);
  }

  // On C_8 the even and odd vertices each form a 4-cycle, which 2-colors.
  const Graph c8 = cycle_graph(8);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const DegreeSplit s = split_degrees(c8, 2, seed);
    CHECK(s.required_neighbors == 1);
    CHECK(independent_check(c8, s));
  }
}

TEST_CASE("determinism") {
  RngStream rng(1);
  const Graph g = random_regular(200, 12, rng);
  const DegreeSplit a = split_degrees(g, 3, 77);
  const DegreeSplit b = split_degrees(g, 3, 77);
  CHECK(a.classes == b.classes);
  CHECK(a.attempts_used == b.attempts_used);
}

TEST_CASE("impossible splits fail with a usable coloring") {
  const Graph c6 = cycle_graph(6);
  // every vertex would need a neighbor in each of three classes but has two neighbors
  try {
    split_degrees(c6, 3, 1, 50);
    FAIL("expected SplitFailure");
  } catch (const SplitFailure& f) {
    CHECK(f.last_coloring().classes.size() == 3);
    CHECK_FALSE(f.last_coloring().verified);
    CHECK(f.vertex() < 6);
  }
}

TEST_CASE("verify_split catches tampering") {
  const Graph k9 = complete_graph(9);
  DegreeSplit s = split_degrees(k9, 2, 5);
  REQUIRE(verify_split(k9, s));
  // move everything into class 0
  for (Vertex v : s.classes[1]) {
    s.color[v] = 0;
    s.classes[0].push_back(v);
  }
  s.classes[1].clear();
  CHECK_FALSE(verify_split(k9, s));
}

TEST_CASE("local lemma regime always succeeds") {
  RngStream rng(9);
  for (int round = 0; round < 20; ++round) {
    const Graph g = random_regular(300, 24, rng);
    const DegreeSplit s = split_degrees(g, 2, rng.next());
    CHECK(independent_check(g, s));
  }
}
