#include "arbor/splitter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "arbor/random.hpp"

namespace arbor {

SplitPremise check_l44_premise(std::size_t class_count, std::size_t min_degree,
                               std::size_t max_degree) {
  if (class_count == 0) throw InvalidInput("K must be at least 1");
  // delta > Delta is allowed: the formula is still defined and one of the
  // reference examples uses it
  if (min_degree == 0) throw InvalidInput("delta must be positive");
  const auto k = static_cast<double>(class_count);
  const auto big = static_cast<double>(max_degree);
  const double lhs = k * big * big * std::exp(-static_cast<double>(min_degree) / (8.0 * k) + 1.0);
  return {lhs < 1.0, lhs};
}

namespace {

struct Deficit {
  Vertex vertex = 0;
  std::size_t class_index = 0;
  std::size_t have = std::numeric_limits<std::size_t>::max();
};

DegreeSplit assemble(std::size_t class_count, std::vector<std::uint32_t> color, std::size_t delta) {
  DegreeSplit split;
  split.class_count = class_count;
  split.classes.assign(class_count, {});
  for (Vertex v = 0; v < color.size(); ++v) split.classes[color[v]].push_back(v);
  split.color = std::move(color);
  split.guarantee = static_cast<double>(delta) / (2.0 * static_cast<double>(class_count));
  split.required_neighbors = (delta + 2 * class_count - 1) / (2 * class_count);
  return split;
}

}  // namespace

DegreeSplit split_degrees(const Graph& g, std::size_t class_count, std::uint64_t seed,
                          std::size_t max_rounds) {
  if (class_count == 0) throw InvalidInput("K must be at least 1");
  const std::size_t n = g.vertex_count();
  if (n == 0) throw InvalidInput("cannot split the empty graph");
  if (max_rounds == 0) throw InvalidInput("max_rounds must be positive");

  const std::size_t delta = degree_extrema(g).min_degree;
  const std::size_t need = (delta + 2 * class_count - 1) / (2 * class_count);
  const std::size_t k = class_count;

  RngStream rng(seed, 0x73706c6974ULL);
  std::vector<std::uint32_t> color(n);
  for (auto& c : color) c = static_cast<std::uint32_t>(rng.below(k));

  // counts[v * K + i] = neighbors of v with color i
  std::vector<std::uint32_t> counts(n * k, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w : g.neighbors(v)) ++counts[static_cast<std::size_t>(v) * k + color[w]];
  }
  auto worst_deficit = [&]() {
    Deficit worst;
    for (Vertex v = 0; v < n; ++v) {
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t have = counts[static_cast<std::size_t>(v) * k + i];
        if (have < worst.have) worst = {v, i, have};
      }
    }
    return worst;
  };

  if (need * k > delta) {
    // A minimum-degree vertex cannot place `need` neighbors in each of K classes.
    const Deficit worst = worst_deficit();
    DegreeSplit last = assemble(k, std::move(color), delta);
    last.attempts_used = 1;
    throw SplitFailure("degree split infeasible: delta = " + std::to_string(delta) + " < K * " +
                           std::to_string(need) + " = " + std::to_string(need * k),
                       worst.vertex, worst.class_index, worst.have, std::move(last));
  }

  auto recolor = [&](Vertex u) {
    const auto fresh = static_cast<std::uint32_t>(rng.below(k));
    if (fresh == color[u]) return;
    for (Vertex w : g.neighbors(u)) {
      --counts[static_cast<std::size_t>(w) * k + color[u]];
      ++counts[static_cast<std::size_t>(w) * k + fresh];
    }
    color[u] = fresh;
  };

  // Moves one neighbor w of v from a class where v has a surplus into class
  // i, but only when no neighbor of w drops below `need` in w's old class.
  auto repair = [&](Vertex v, std::size_t i) {
    auto nbrs = g.neighbors(v);
    const std::size_t offset = nbrs.empty() ? 0 : rng.below(nbrs.size());
    for (std::size_t step = 0; step < nbrs.size(); ++step) {
      if (counts[static_cast<std::size_t>(v) * k + i] >= need) return true;
      const Vertex w = nbrs[(offset + step) % nbrs.size()];
      const std::uint32_t j = color[w];
      if (j == i || counts[static_cast<std::size_t>(v) * k + j] <= need) continue;
      bool harmless = true;
      for (Vertex u : g.neighbors(w)) {
        if (counts[static_cast<std::size_t>(u) * k + j] <= need) {
          harmless = false;
          break;
        }
      }
      if (!harmless) continue;
      for (Vertex u : g.neighbors(w)) {
        --counts[static_cast<std::size_t>(u) * k + j];
        ++counts[static_cast<std::size_t>(u) * k + i];
      }
      color[w] = static_cast<std::uint32_t>(i);
    }
    return counts[static_cast<std::size_t>(v) * k + i] >= need;
  };

  std::size_t resamplings = 0;
  for (std::size_t round = 1;; ++round) {
    bool clean = true;
    for (Vertex v = 0; v < n; ++v) {
      for (std::size_t i = 0; i < k; ++i) {
        if (counts[static_cast<std::size_t>(v) * k + i] < need) {
          clean = false;
          if (round == max_rounds) continue;
          if (repair(v, static_cast<std::size_t>(i))) continue;
          recolor(v);
          for (Vertex w : g.neighbors(v)) recolor(w);
          ++resamplings;
        }
      }
    }
    if (clean) {
      DegreeSplit split = assemble(k, std::move(color), delta);
      split.attempts_used = round;
      split.resamplings = resamplings;
      split.verified = verify_split(g, split);
      if (!split.verified) throw InvariantViolation("degree split failed its recount");
      return split;
    }
    if (round == max_rounds) {
      const Deficit worst = worst_deficit();
      DegreeSplit last = assemble(k, std::move(color), delta);
      last.attempts_used = round;
      last.resamplings = resamplings;
      throw SplitFailure("degree split did not converge in " + std::to_string(max_rounds) +
                             " rounds; vertex " + std::to_string(worst.vertex) + " has " +
                             std::to_string(worst.have) + " neighbors in class " +
                             std::to_string(worst.class_index) + ", needs " + std::to_string(need),
                         worst.vertex, worst.class_index, worst.have, std::move(last));
    }
  }
}

bool verify_split(const Graph& g, const DegreeSplit& split) {
  const std::size_t n = g.vertex_count();
  if (split.classes.size() != split.class_count || split.class_count == 0) return false;
  std::vector<std::size_t> owner(n, split.class_count);
  std::size_t covered = 0;
  for (std::size_t i = 0; i < split.classes.size(); ++i) {
    for (Vertex v : split.classes[i]) {
      if (v >= n || owner[v] != split.class_count) return false;
      owner[v] = i;
      ++covered;
    }
  }
  if (covered != n) return false;
  const std::size_t delta = degree_extrema(g).min_degree;
  const std::size_t need = (delta + 2 * split.class_count - 1) / (2 * split.class_count);
  std::vector<std::size_t> tally(split.class_count);
  for (Vertex v = 0; v < n; ++v) {
    std::fill(tally.begin(), tally.end(), 0);
    for (Vertex w : g.neighbors(v)) ++tally[owner[w]];
    for (std::size_t have : tally) {
      if (have < need) return false;
    }
  }
  return true;
}

}  // namespace arbor
