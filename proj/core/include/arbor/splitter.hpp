#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "arbor/errors.hpp"
#include "arbor/graph.hpp"

namespace arbor {

/// K disjoint classes covering V(G) such that every vertex has at least
/// ceil(delta / (2K)) neighbors in every class.
struct DegreeSplit {
  std::size_t class_count = 0;
  /// classes[i] holds the vertices of color i, ascending.
  std::vector<std::vector<Vertex>> classes;
  /// color of each vertex
  std::vector<std::uint32_t> color;
  /// delta / (2K) as a real number
  double guarantee = 0.0;
  /// ceil(delta / (2K)): the integer threshold actually enforced
  std::size_t required_neighbors = 0;
  /// Resampling passes, counting the initial coloring as the first.
  std::size_t attempts_used = 0;
  std::size_t resamplings = 0;
  /// Set once an independent recount confirmed the threshold.
  bool verified = false;
};

struct SplitPremise {
  bool holds;
  double lhs;
};

/// K Delta^2 e^{-delta/(8K) + 1} < 1.
SplitPremise check_l44_premise(std::size_t class_count, std::size_t min_degree,
                               std::size_t max_degree);

/// Thrown when the round budget runs out. Carries the worst deficit and the
/// last coloring, which callers may still use as an unverified split.
class SplitFailure : public Error {
 public:
  SplitFailure(const std::string& what, Vertex vertex, std::size_t class_index, std::size_t have,
               DegreeSplit last)
      : Error(what), vertex_(vertex), class_index_(class_index), have_(have), last_(std::move(last)) {}

  Vertex vertex() const noexcept { return vertex_; }
  std::size_t class_index() const noexcept { return class_index_; }
  std::size_t neighbors_in_class() const noexcept { return have_; }
  const DegreeSplit& last_coloring() const noexcept { return last_; }

 private:
  Vertex vertex_;
  std::size_t class_index_;
  std::size_t have_;
  DegreeSplit last_;
};

/// Uniform random K-coloring followed by resampling passes: each pass visits
/// the bad events (v, i) in lexicographic order ("v has fewer than
/// ceil(delta/2K) neighbors of color i"). A bad event is first repaired by
/// moving surplus-colored neighbors of v into class i when that creates no new
/// deficit; failing that, the closed neighborhood of v is recolored uniformly.
/// Deterministic in (g, K, seed, max_rounds).
DegreeSplit split_degrees(const Graph& g, std::size_t class_count, std::uint64_t seed,
                          std::size_t max_rounds = 1000);

/// Recounts neighbors per class from scratch.
bool verify_split(const Graph& g, const DegreeSplit& split);

}  // namespace arbor
