#include <doctest.h>

#include <cmath>
#include <sstream>

#include "arbor/errors.hpp"
#include "arbor/generators.hpp"

using namespace arbor;

namespace {

std::string dump(const Graph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

}  // namespace

TEST_CASE("rng streams") {
  RngStream a(5, 1);
  RngStream b(5, 1);
  RngStream c(5, 2);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    differs |= x != c.next();
  }
  CHECK(differs);
  RngStream r(1);
  for (int i = 0; i < 1000; ++i) {
    CHECK(r.below(7) < 7);
    const double u = r.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("gnp edge cases") {
  RngStream rng(1);
  CHECK(gnp(30, 0.0, rng).edge_count() == 0);
  CHECK(gnp(12, 1.0, rng) == complete_graph(12));
  CHECK(gnp(0, 0.5, rng).vertex_count() == 0);
  CHECK_THROWS_AS(gnp(10, 1.5, rng), InvalidInput);
  CHECK_THROWS_AS(gnp(10, -0.1, rng), InvalidInput);
}

TEST_CASE("gnp is byte-stable per stream") {
  RngStream a(42, 3);
  RngStream b(42, 3);
  CHECK(dump(gnp(300, 0.05, a)) == dump(gnp(300, 0.05, b)));
}

TEST_CASE("gnp edge count within 4 sigma") {
  const double p = 0.01;
  const double pairs = 1000.0 * 999.0 / 2.0;
  const double mean = pairs * p;
  const double sigma = std::sqrt(pairs * p * (1 - p));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RngStream rng(seed);
    const auto m = static_cast<double>(gnp(1000, p, rng).edge_count());
    CHECK(std::abs(m - mean) <= 4 * sigma);
  }
}

TEST_CASE("gnp degree distribution matches the binomial") {
  // Pool the degrees of 100 graphs G(200, 0.05) and run a chi-squared test
  // against Binomial(199, 0.05) with tail bins merged to expected count >= 5.
  const std::size_t n = 200;
  const double p = 0.05;
  std::vector<double> observed(n, 0.0);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RngStream rng(seed, 9);
    const Graph g = gnp(n, p, rng);
    for (Vertex v = 0; v < n; ++v) observed[g.degree(v)] += 1.0;
  }
  const double total = 100.0 * n;
  std::vector<double> pmf(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double logp = std::lgamma(n) - std::lgamma(k + 1.0) - std::lgamma(n - k + 0.0) +
                        k * std::log(p) + (n - 1.0 - k) * std::log1p(-p);
    pmf[k] = std::exp(logp);
  }
  std::vector<double> exp_bins;
  std::vector<double> obs_bins;
  double e_acc = 0.0;
  double o_acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    e_acc += pmf[k] * total;
    o_acc += observed[k];
    if (e_acc >= 5.0) {
      exp_bins.push_back(e_acc);
      obs_bins.push_back(o_acc);
      e_acc = o_acc = 0.0;
    }
  }
  exp_bins.back() += e_acc;
  obs_bins.back() += o_acc;
  double chi2 = 0.0;
  for (std::size_t i = 0; i < exp_bins.size(); ++i) {
    chi2 += (obs_bins[i] - exp_bins[i]) * (obs_bins[i] - exp_bins[i]) / exp_bins[i];
  }
  const double dof = static_cast<double>(exp_bins.size() - 1);
  // Wilson-Hilferty approximation of the 1 - 1e-3 chi-squared quantile
  const double z = 3.090232306;
  const double h = 2.0 / (9.0 * dof);
  const double critical = dof * std::pow(1.0 - h + z * std::sqrt(h), 3.0);
  INFO("chi2=" << chi2 << " dof=" << dof << " critical=" << critical);
  CHECK(chi2 < critical);
}

TEST_CASE("random regular graphs") {
  RngStream rng(3);
  CHECK(random_regular(4, 3, rng) == complete_graph(4));
  for (int round = 0; round < 30; ++round) {
    const Graph g = random_regular(10, 3, rng);
    CHECK(regular_degree(g) == 3u);
  }
  CHECK_THROWS_AS(random_regular(5, 3, rng), InfeasibleError);
  CHECK_THROWS_AS(random_regular(5, 5, rng), InfeasibleError);
  const Graph big = random_regular(1000, 30, rng);
  CHECK(regular_degree(big) == 30u);
}

TEST_CASE("edge distribution report") {
  RngStream rng(8);
  const Graph g = gnp(2000, 0.02, rng);
  const auto rep = check_edge_distribution(g, 0.02, 500, 200, rng);
  // |A||B|p >= 32n needs |A||B| >= 3.2e6, impossible with |A| + |B| <= 2000.
  CHECK_FALSE(rep.pair_condition_satisfiable);
  CHECK(rep.pairs_checked == 0);
  CHECK(rep.pairs_skipped == 500);
  CHECK(rep.subsets_checked == 200);
  CHECK(rep.subset_violations == 0);

  RngStream rng2(9);
  const Graph dense = gnp(400, 0.5, rng2);
  const auto ok = check_edge_distribution(dense, 0.5, 200, 100, rng2);
  CHECK(ok.pair_condition_satisfiable);
  CHECK(ok.pairs_checked == 200);
  CHECK(ok.pair_violations == 0);
  CHECK(ok.subset_violations == 0);
}
