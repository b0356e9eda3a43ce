#include "arbor/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "arbor/errors.hpp"
#include "arbor/random.hpp"

namespace arbor {

std::optional<EigenMethod> parse_eigen_method(std::string_view name) {
  if (name == "dense" || name == "exact_dense") return EigenMethod::exact_dense;
  if (name == "iterative") return EigenMethod::iterative;
  return std::nullopt;
}

std::string_view to_string(EigenMethod method) {
  return method == EigenMethod::exact_dense ? "dense" : "iterative";
}

namespace {

Eigen::MatrixXd dense_adjacency(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    for (Vertex v : g.neighbors(u)) a(u, v) = 1.0;
  }
  return a;
}

std::size_t require_regular(const Graph& g) {
  if (g.vertex_count() < 2) throw PreconditionError("second eigenvalue needs n >= 2");
  const auto degree = regular_degree(g);
  if (!degree) {
    throw PreconditionError("spectral profile requires a regular graph; use combinatorial checks");
  }
  return *degree;
}

void project_off_ones(Eigen::VectorXd& x) { x.array() -= x.mean(); }

/// y = A x restricted to the complement of the all-ones vector.
void apply_deflated(const Graph& g, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    double sum = 0.0;
    for (Vertex v : g.neighbors(u)) sum += x[v];
    y[u] = sum;
  }
  project_off_ones(y);
}

SpectralProfile lanczos(const Graph& g, std::size_t degree, double tolerance,
                        std::size_t max_iterations, std::uint64_t seed) {
  const std::size_t n = g.vertex_count();
  const std::size_t dim = n - 1;  // the complement of the all-ones vector
  const std::size_t cap = std::min(dim, std::max<std::size_t>(max_iterations, 1));

  SpectralProfile profile{n, degree, 0.0, EigenMethod::iterative, tolerance, 0};

  RngStream rng(seed, 0x6c616e637a6f73ULL);
  Eigen::VectorXd q(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < q.size(); ++i) q[i] = rng.uniform01() - 0.5;
  project_off_ones(q);
  q.normalize();

  Eigen::MatrixXd basis(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cap));
  std::vector<double> alpha;
  std::vector<double> beta;
  Eigen::VectorXd w(static_cast<Eigen::Index>(n));

  double best = 0.0;
  double best_residual = std::numeric_limits<double>::infinity();
  const double breakdown = 1e-10 * std::max(1.0, static_cast<double>(degree));

  for (std::size_t j = 0; j < cap; ++j) {
    const auto col = static_cast<Eigen::Index>(j);
    basis.col(col) = q;
    apply_deflated(g, q, w);
    alpha.push_back(q.dot(w));
    // Full reorthogonalization, applied twice.
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXd coeffs = basis.leftCols(col + 1).transpose() * w;
      w -= basis.leftCols(col + 1) * coeffs;
      project_off_ones(w);
    }
    const double b = w.norm();
    const std::size_t m = j + 1;
    const bool exhausted = b < breakdown || m == dim;
    const bool check = exhausted || m == cap || m % 5 == 0;
    if (check) {
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                                static_cast<Eigen::Index>(m));
      for (std::size_t i = 0; i < m; ++i) {
        t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = alpha[i];
        if (i + 1 < m) {
          t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 1)) = beta[i];
          t(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = beta[i];
        }
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
      const auto& theta = es.eigenvalues();
      const auto& s = es.eigenvectors();
      const auto last = static_cast<Eigen::Index>(m - 1);
      const double r_low = exhausted ? 0.0 : std::abs(b * s(last, 0));
      const double r_high = exhausted ? 0.0 : std::abs(b * s(last, last));
      best = std::max(std::abs(theta[0]), std::abs(theta[last]));
      best_residual = std::max(r_low, r_high);
      profile.iterations = m;
      if (best_residual <= tolerance) {
        profile.lambda = std::min(best, static_cast<double>(degree));
        return profile;
      }
    }
    if (exhausted) break;
    beta.push_back(b);
    q = w / b;
  }
  throw ConvergenceError("Lanczos did not converge within " + std::to_string(cap) + " steps", best,
                         best_residual);
}

}  // namespace

std::vector<double> adjacency_spectrum(const Graph& g) {
  if (g.vertex_count() > kDenseVertexCap) {
    throw PreconditionError("dense spectrum limited to " + std::to_string(kDenseVertexCap) +
                            " vertices");
  }
  if (g.vertex_count() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_adjacency(g), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

SpectralProfile second_eigenvalue(const Graph& g, EigenMethod method,
                                  std::optional<double> tolerance, std::size_t max_iterations,
                                  std::uint64_t seed) {
  const std::size_t degree = require_regular(g);
  if (method == EigenMethod::iterative) {
    return lanczos(g, degree, tolerance.value_or(kIterativeTolerance), max_iterations, seed);
  }
  const auto spectrum = adjacency_spectrum(g);
  const std::size_t n = spectrum.size();
  // spectrum.back() is the principal eigenvalue D.
  const double lambda = std::max(std::abs(spectrum.front()), std::abs(spectrum[n - 2]));
  return {n, degree, std::min(lambda, static_cast<double>(degree)), EigenMethod::exact_dense,
          tolerance.value_or(kDenseTolerance), 0};
}

MixingAudit mixing_bound_audit(const Graph& g, const SpectralProfile& profile, const VertexSet& b,
                               const VertexSet& c) {
  const auto edges = static_cast<double>(ordered_edge_count(g, b, c));
  const auto nb = static_cast<double>(b.size());
  const auto nc = static_cast<double>(c.size());
  const double expected =
      nb * nc * static_cast<double>(profile.regular_degree) / static_cast<double>(profile.n);
  const double lhs = std::abs(edges - expected);
  const double slack = 64.0 * std::numeric_limits<double>::epsilon() * (edges + expected);
  const double rhs = (profile.lambda + profile.tolerance) * std::sqrt(nb * nc) + slack;
  return {lhs, rhs, lhs <= rhs};
}

double fp_min_degree_threshold(std::size_t d, double lambda) {
  const auto dd = static_cast<double>(d);
  return 2.0 * lambda * (dd + 1.0) / std::sqrt(dd);
}

SpectralPremise check_theorem2_premise(std::size_t regular_degree, double lambda, std::size_t d,
                                       double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw InvalidInput("epsilon must lie in (0, 1/2)");
  if (d < 2) throw InvalidInput("degree bound d must be at least 2");
  if (lambda < 0.0) throw InvalidInput("lambda must be non-negative");
  const auto dd = static_cast<double>(d);
  const double required = 160.0 * std::pow(dd, 2.5) * std::log(2.0 / epsilon) / epsilon;
  if (lambda == 0.0) {
    return {true, required, std::numeric_limits<double>::infinity(), true};
  }
  const double actual = static_cast<double>(regular_degree) / lambda;
  return {actual >= required, required, actual, false};
}

SpectralPremise check_theorem2_premise(const SpectralProfile& profile, std::size_t d,
                                       double epsilon) {
  return check_theorem2_premise(profile.regular_degree, profile.lambda, d, epsilon);
}

}  // namespace arbor
