#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "arbor/graph.hpp"

namespace arbor {

inline constexpr std::size_t kDefaultExactCap = 24;
/// Hard ceiling for exact enumeration: subsets are 32-bit masks.
inline constexpr std::size_t kMaxExactCap = 32;

enum class ExpansionMode { exact, sampled };
enum class Verdict { certified, refuted, unresolved };

std::string_view to_string(ExpansionMode mode);
std::string_view to_string(Verdict verdict);

struct ExpansionOptions {
  std::size_t exact_cap = kDefaultExactCap;
  /// Count N(X) \ X instead of N(X) (Posa-style). Off by default.
  bool exclude_self = false;
};

/// Outcome of an (alpha, c)-expansion check. A witness is present exactly
/// when the verdict is refuted; it satisfies |X| <= alpha n and |N(X)| < c |X|.
struct ExpansionVerdict {
  double alpha = 0.0;
  double c = 0.0;
  ExpansionMode mode = ExpansionMode::exact;
  Verdict verdict = Verdict::unresolved;
  std::optional<std::vector<Vertex>> witness;
  std::size_t witness_neighborhood = 0;
  std::uint64_t subsets_checked = 0;
};

/// Largest subset size allowed by |X| <= alpha n.
std::size_t max_subset_size(double alpha, std::size_t n);

/// Enumerates every nonempty X with |X| <= alpha n, by size then
/// lexicographically, and reports the first X with |N(X)| < c |X|.
/// Refuses graphs above options.exact_cap vertices.
ExpansionVerdict verify_expander_exact(const Graph& g, double alpha, double c,
                                       const ExpansionOptions& options = {});

/// Random and greedy candidate sets (uniform subsets, BFS balls, low-degree
/// clusters). Returns refuted with a witness, or unresolved; never certified.
ExpansionVerdict refute_expander_sampled(const Graph& g, double alpha, double c,
                                         std::size_t trials, std::uint64_t seed,
                                         const ExpansionOptions& options = {});

/// Friedman-Pippenger hypothesis: |N(X)| >= (d+1)|X| for 1 <= |X| <= 2k-2.
ExpansionVerdict fp_condition_exact(const Graph& h, std::size_t d, std::size_t k,
                                    const ExpansionOptions& options = {});

/// Re-checks a witness from scratch.
bool witness_refutes(const Graph& g, std::span<const Vertex> witness, double alpha, double c,
                     bool exclude_self = false);

}  // namespace arbor
