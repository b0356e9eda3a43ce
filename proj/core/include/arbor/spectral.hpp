#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "arbor/graph.hpp"

namespace arbor {

enum class EigenMethod { exact_dense, iterative };

std::optional<EigenMethod> parse_eigen_method(std::string_view name);
std::string_view to_string(EigenMethod method);

inline constexpr double kDenseTolerance = 1e-8;
inline constexpr double kIterativeTolerance = 1e-6;
inline constexpr std::size_t kDenseVertexCap = 2000;

/// The (n, D, lambda) triple of a regular graph, lambda = max_{i>=2} |lambda_i|.
struct SpectralProfile {
  std::size_t n = 0;
  std::size_t regular_degree = 0;
  double lambda = 0.0;
  EigenMethod method = EigenMethod::exact_dense;
  /// Upper bound on |lambda - true lambda|.
  double tolerance = 0.0;
  /// Lanczos steps taken; zero for the dense path.
  std::size_t iterations = 0;

  /// lambda == D up to tolerance: bipartite or disconnected, no spectral gap.
  bool gapless() const noexcept {
    return lambda + tolerance >= static_cast<double>(regular_degree);
  }
};

/// Second eigenvalue of a D-regular graph with n >= 2.
///
/// exact_dense diagonalizes the adjacency matrix (n <= 2000). iterative runs
/// Lanczos with full reorthogonalization on the complement of the all-ones
/// vector, whose eigenvalue D is removed analytically, and stops once both
/// extreme Ritz values have residual below `tolerance`. Throws
/// PreconditionError for irregular graphs and ConvergenceError when
/// `max_iterations` is hit first.
SpectralProfile second_eigenvalue(const Graph& g, EigenMethod method = EigenMethod::exact_dense,
                                  std::optional<double> tolerance = std::nullopt,
                                  std::size_t max_iterations = 600, std::uint64_t seed = 1);

/// Full adjacency spectrum, ascending. Dense; n <= kDenseVertexCap.
std::vector<double> adjacency_spectrum(const Graph& g);

struct MixingAudit {
  double lhs;
  double rhs;
  bool holds;
};

/// |e(B,C) - |B||C|D/n| against lambda sqrt(|B||C|), with the profile's
/// tolerance (plus rounding slack) added to the right-hand side.
MixingAudit mixing_bound_audit(const Graph& g, const SpectralProfile& profile, const VertexSet& b,
                               const VertexSet& c);

/// D_0 = 2 lambda (d + 1) / sqrt(d): induced subgraphs of an (n, D, lambda)
/// graph with this minimum degree are (1/(2d+2), d+1)-expanders.
double fp_min_degree_threshold(std::size_t d, double lambda);

struct SpectralPremise {
  bool holds;
  double required_ratio;
  double actual_ratio;
  /// lambda == 0: the gap is infinite and the premise holds trivially.
  bool infinite_gap;
};

/// D / lambda >= 160 d^{5/2} log(2/eps) / eps.
SpectralPremise check_theorem2_premise(std::size_t regular_degree, double lambda, std::size_t d,
                                       double epsilon);
SpectralPremise check_theorem2_premise(const SpectralProfile& profile, std::size_t d,
                                       double epsilon);

}  // namespace arbor
