#include "arbor/expansion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "arbor/errors.hpp"
#include "arbor/random.hpp"

namespace arbor {

std::string_view to_string(ExpansionMode mode) {
  return mode == ExpansionMode::exact ? "exact" : "sampled";
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::certified: return "certified";
    case Verdict::refuted: return "refuted";
    case Verdict::unresolved: return "unresolved";
  }
  return "unknown";
}

namespace {

constexpr double kSlack = 1e-9;

bool violates(std::size_t neighborhood, double c, std::size_t size) {
  return static_cast<double>(neighborhood) < c * static_cast<double>(size) - kSlack;
}

/// Lexicographic enumeration of fixed-size subsets with the neighborhood
/// union carried down the recursion.
class MaskEnumerator {
 public:
  MaskEnumerator(const Graph& g, double c, bool exclude_self)
      : n_(g.vertex_count()), c_(c), exclude_self_(exclude_self), rows_(n_, 0) {
    for (Vertex v = 0; v < n_; ++v) {
      for (Vertex w : g.neighbors(v)) rows_[v] |= std::uint32_t{1} << w;
    }
  }

  /// Smallest violating set over sizes 1..max_size, or nothing.
  std::optional<std::uint32_t> search(std::size_t max_size) {
    for (std::size_t t = 1; t <= max_size; ++t) {
      size_ = t;
      if (descend(0, 0, 0, 0)) return found_;
    }
    return std::nullopt;
  }

  std::uint64_t checked() const noexcept { return checked_; }
  std::size_t neighborhood_of(std::uint32_t set) const {
    std::uint32_t acc = 0;
    for (std::uint32_t bits = set; bits != 0; bits &= bits - 1) acc |= rows_[std::countr_zero(bits)];
    if (exclude_self_) acc &= ~set;
    return static_cast<std::size_t>(std::popcount(acc));
  }

 private:
  bool descend(std::size_t depth, std::size_t start, std::uint32_t set, std::uint32_t acc) {
    if (depth == size_) {
      ++checked_;
      const std::uint32_t hood = exclude_self_ ? (acc & ~set) : acc;
      if (violates(static_cast<std::size_t>(std::popcount(hood)), c_, size_)) {
        found_ = set;
        return true;
      }
      return false;
    }
    for (std::size_t v = start; v + (size_ - depth) <= n_; ++v) {
      if (descend(depth + 1, v + 1, set | (std::uint32_t{1} << v), acc | rows_[v])) return true;
    }
    return false;
  }

  std::size_t n_;
  double c_;
  bool exclude_self_;
  std::vector<std::uint32_t> rows_;
  std::size_t size_ = 0;
  std::uint32_t found_ = 0;
  std::uint64_t checked_ = 0;
};

std::vector<Vertex> mask_members(std::uint32_t set) {
  std::vector<Vertex> out;
  for (std::uint32_t bits = set; bits != 0; bits &= bits - 1) {
    out.push_back(static_cast<Vertex>(std::countr_zero(bits)));
  }
  return out;
}

ExpansionVerdict run_exact(const Graph& g, double alpha, double c, std::size_t max_size,
                           const ExpansionOptions& options) {
  const std::size_t cap = std::min(options.exact_cap, kMaxExactCap);
  if (g.vertex_count() > cap) {
    throw PreconditionError("exact expansion check refused: " + std::to_string(g.vertex_count()) +
                            " vertices exceeds the cap of " + std::to_string(cap) +
                            "; use sampled mode");
  }
  ExpansionVerdict out;
  out.alpha = alpha;
  out.c = c;
  out.mode = ExpansionMode::exact;
  MaskEnumerator enumerator(g, c, options.exclude_self);
  const auto found = enumerator.search(std::min(max_size, g.vertex_count()));
  out.subsets_checked = enumerator.checked();
  if (found) {
    out.verdict = Verdict::refuted;
    out.witness = mask_members(*found);
    out.witness_neighborhood = enumerator.neighborhood_of(*found);
  } else {
    out.verdict = Verdict::certified;
  }
  return out;
}

/// Incremental |N(X)| for growing X.
class GrowingSet {
 public:
  GrowingSet(const Graph& g, bool exclude_self)
      : g_(g),
        exclude_self_(exclude_self),
        hits_(g.vertex_count(), 0),
        in_set_(g.vertex_count(), false),
        unhit_(g.vertex_count()),
        unhit_outside_(g.vertex_count()) {
    for (Vertex v = 0; v < g.vertex_count(); ++v) unhit_[v] = unhit_outside_[v] = g.degree(v);
  }

  void add(Vertex v) {
    members_.push_back(v);
    in_set_[v] = true;
    if (hits_[v] > 0) {
      --outside_;
    } else {
      for (Vertex u : g_.neighbors(v)) --unhit_outside_[u];
    }
    for (Vertex w : g_.neighbors(v)) {
      if (hits_[w]++ != 0) continue;
      ++covered_;
      frontier_.push_back(w);
      if (!in_set_[w]) ++outside_;
      for (Vertex u : g_.neighbors(w)) {
        --unhit_[u];
        if (!in_set_[w]) --unhit_outside_[u];
      }
    }
  }

  /// |N(X + v)| without modifying the set.
  std::size_t size_if_added(Vertex v) const {
    if (!exclude_self_) return covered_ + unhit_[v];
    return outside_ + unhit_outside_[v] - (hits_[v] > 0 ? 1 : 0);
  }

  std::size_t neighborhood() const noexcept { return exclude_self_ ? outside_ : covered_; }
  bool contains(Vertex v) const noexcept { return in_set_[v]; }
  const std::vector<Vertex>& members() const noexcept { return members_; }
  /// Every vertex adjacent to some member, in discovery order (members included).
  const std::vector<Vertex>& frontier() const noexcept { return frontier_; }

 private:
  const Graph& g_;
  bool exclude_self_;
  std::vector<std::uint32_t> hits_;
  std::vector<bool> in_set_;
  // neighbors with no hit yet; the second count also skips members
  std::vector<std::uint32_t> unhit_;
  std::vector<std::uint32_t> unhit_outside_;
  std::vector<Vertex> members_;
  std::vector<Vertex> frontier_;
  std::size_t covered_ = 0;
  std::size_t outside_ = 0;
};

constexpr std::size_t kGrowthLimit = 256;

}  // namespace

std::size_t max_subset_size(double alpha, std::size_t n) {
  if (!(alpha > 0.0)) return 0;
  const double raw = std::floor(alpha * static_cast<double>(n) + kSlack);
  return std::min(n, static_cast<std::size_t>(std::max(0.0, raw)));
}

ExpansionVerdict verify_expander_exact(const Graph& g, double alpha, double c,
                                       const ExpansionOptions& options) {
  return run_exact(g, alpha, c, max_subset_size(alpha, g.vertex_count()), options);
}

ExpansionVerdict fp_condition_exact(const Graph& h, std::size_t d, std::size_t k,
                                    const ExpansionOptions& options) {
  const std::size_t max_size = k >= 1 ? 2 * k - 2 : 0;
  const double alpha = h.vertex_count() == 0
                           ? 0.0
                           : static_cast<double>(max_size) / static_cast<double>(h.vertex_count());
  return run_exact(h, alpha, static_cast<double>(d + 1), max_size, options);
}

ExpansionVerdict refute_expander_sampled(const Graph& g, double alpha, double c,
                                         std::size_t trials, std::uint64_t seed,
                                         const ExpansionOptions& options) {
  if (trials == 0) throw InvalidInput("sampled expansion check needs at least one trial");
  ExpansionVerdict out;
  out.alpha = alpha;
  out.c = c;
  out.mode = ExpansionMode::sampled;
  out.verdict = Verdict::unresolved;
  const std::size_t n = g.vertex_count();
  const std::size_t max_size = max_subset_size(alpha, n);
  if (max_size == 0 || n == 0) return out;

  RngStream rng(seed, 0x657870616e64ULL);
  std::size_t min_degree = g.degree(0);
  for (Vertex v = 1; v < n; ++v) min_degree = std::min(min_degree, g.degree(v));
  std::vector<Vertex> low_degree;
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) == min_degree) low_degree.push_back(v);
  }

  auto refute_with = [&](const GrowingSet& set) {
    auto witness = set.members();
    std::sort(witness.begin(), witness.end());
    out.verdict = Verdict::refuted;
    out.witness_neighborhood = set.neighborhood();
    out.witness = std::move(witness);
  };

  for (std::size_t trial = 0; trial < trials; ++trial) {
    GrowingSet set(g, options.exclude_self);
    switch (trial % 3) {
      case 0: {  // uniform subset of a random size
        const std::size_t size = 1 + rng.below(max_size);
        std::vector<Vertex> pool(n);
        for (Vertex v = 0; v < n; ++v) pool[v] = v;
        for (std::size_t i = 0; i < size; ++i) {
          std::swap(pool[i], pool[i + rng.below(n - i)]);
          set.add(pool[i]);
        }
        ++out.subsets_checked;
        if (violates(set.neighborhood(), c, size)) {
          refute_with(set);
          return out;
        }
        break;
      }
      case 1: {  // BFS ball, every prefix is a candidate
        std::vector<Vertex> queue{static_cast<Vertex>(rng.below(n))};
        std::vector<bool> queued(n, false);
        queued[queue[0]] = true;
        for (std::size_t head = 0; head < queue.size() && set.members().size() < std::min(max_size, kGrowthLimit); ++head) {
          set.add(queue[head]);
          ++out.subsets_checked;
          if (violates(set.neighborhood(), c, set.members().size())) {
            refute_with(set);
            return out;
          }
          for (Vertex w : g.neighbors(queue[head])) {
            if (!queued[w]) {
              queued[w] = true;
              queue.push_back(w);
            }
          }
        }
        break;
      }
      default: {  // greedy low-expansion cluster grown from a low-degree vertex
        const Vertex start = (trial / 3) % 2 == 0 ? low_degree[rng.below(low_degree.size())]
                                                  : static_cast<Vertex>(rng.below(n));
        set.add(start);
        ++out.subsets_checked;
        if (violates(set.neighborhood(), c, 1)) {
          refute_with(set);
          return out;
        }
        while (set.members().size() < std::min(max_size, kGrowthLimit)) {
          std::optional<Vertex> best;
          std::size_t best_size = 0;
          for (Vertex w : set.frontier()) {
            if (set.contains(w)) continue;
            const std::size_t size = set.size_if_added(w);
            if (!best || size < best_size || (size == best_size && w < *best)) {
              best = w;
              best_size = size;
            }
          }
          if (!best) break;
          set.add(*best);
          ++out.subsets_checked;
          if (violates(set.neighborhood(), c, set.members().size())) {
            refute_with(set);
            return out;
          }
        }
        break;
      }
    }
  }
  return out;
}

bool witness_refutes(const Graph& g, std::span<const Vertex> witness, double alpha, double c,
                     bool exclude_self) {
  if (witness.empty() || witness.size() > max_subset_size(alpha, g.vertex_count())) return false;
  const VertexSet x(g.vertex_count(), witness);
  if (x.size() != witness.size()) return false;
  VertexSet hood = neighborhood(g, x);
  if (exclude_self) hood -= x;
  return violates(hood.size(), c, x.size());
}

}  // namespace arbor
