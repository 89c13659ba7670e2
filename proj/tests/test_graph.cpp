// HITS and PageRank against dense Eigen oracles.

#include <doctest.h>

#include <Eigen/Dense>
#include <chrono>
#include <cmath>

#include "scimetrics/error.hpp"
#include "scimetrics/graph.hpp"
#include "scimetrics/rng.hpp"

using namespace scim;

namespace {

struct RandomGraph {
  std::size_t n = 0;
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  Eigen::MatrixXd adjacency;  // (u, v) = 1 when u cites v
};

RandomGraph random_graph(Rng& rng, std::size_t max_nodes) {
  RandomGraph g;
  g.n = 1 + rng.below(max_nodes);
  g.adjacency = Eigen::MatrixXd::Zero(g.n, g.n);
  const double density = rng.uniform();
  for (NodeIndex u = 0; u < g.n; ++u)
    for (NodeIndex v = 0; v < g.n; ++v)
      if (u != v && rng.uniform() < density) {
        g.edges.emplace_back(u, v);
        g.adjacency(u, v) = 1.0;
      }
  return g;
}

// Dense HITS from the uniform start, run far past the library's budget.
void dense_hits(const Eigen::MatrixXd& a, Eigen::VectorXd& hub, Eigen::VectorXd& authority) {
  const auto n = a.rows();
  hub = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  authority = hub;
  for (int it = 0; it < 200000; ++it) {
    Eigen::VectorXd na = a.transpose() * hub;
    na /= na.sum();
    Eigen::VectorXd nh = a * na;
    nh /= nh.sum();
    const double change =
        std::max((nh - hub).cwiseAbs().maxCoeff(), (na - authority).cwiseAbs().maxCoeff());
    hub = nh;
    authority = na;
    if (change < 1e-15) break;
  }
}

// Stationary vector of the Google matrix by a direct linear solve.
Eigen::VectorXd dense_pagerank(const Eigen::MatrixXd& a, double d) {
  const auto n = a.rows();
  Eigen::MatrixXd g = Eigen::MatrixXd::Constant(n, n, (1.0 - d) / static_cast<double>(n));
  for (Eigen::Index u = 0; u < n; ++u) {
    const double out = a.row(u).sum();
    for (Eigen::Index v = 0; v < n; ++v)
      g(v, u) += out > 0 ? d * a(u, v) / out : d / static_cast<double>(n);
  }
  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) - g;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  system.row(n - 1).setOnes();  // replace one equation with sum(r) = 1
  rhs(n - 1) = 1.0;
  return system.fullPivLu().solve(rhs);
}

}  // namespace

TEST_CASE("edge lists are cleaned and indexed both ways") {
  const auto g = CitationGraph::from_edges(4, {{0, 1}, {0, 1}, {2, 2}, {3, 9}, {2, 1}, {1, 3}});
  CHECK(g.node_count() == 4);
  CHECK(g.edge_count() == 3);
  CHECK(std::vector<NodeIndex>(g.citers(1).begin(), g.citers(1).end()) ==
        std::vector<NodeIndex>{0, 2});
  CHECK(std::vector<NodeIndex>(g.cited(1).begin(), g.cited(1).end()) == std::vector<NodeIndex>{3});
  CHECK(g.cited(3).empty());
}

TEST_CASE("HITS on a graph without edges scores zero") {
  const auto s = hits(CitationGraph::from_edges(3, {}));
  CHECK(s.no_edges);
  CHECK(s.hub == std::vector<double>(3, 0.0));
  CHECK(s.authority == std::vector<double>(3, 0.0));
}

TEST_CASE("HITS on a star puts all authority on the centre") {
  const auto s = hits(CitationGraph::from_edges(4, {{1, 0}, {2, 0}, {3, 0}}));
  CHECK(s.converged);
  CHECK(s.authority[0] == doctest::Approx(1.0));
  CHECK(s.hub[0] == 0.0);
  CHECK(s.hub[1] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("HITS matches dense power iteration and the principal eigenvector") {
  Rng rng(101);
  int eigen_checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto g = random_graph(rng, 8);
    const auto s = hits(CitationGraph::from_edges(g.n, g.edges));
    if (g.edges.empty()) {
      REQUIRE(s.no_edges);
      continue;
    }
    Eigen::VectorXd hub, authority;
    dense_hits(g.adjacency, hub, authority);
    for (std::size_t i = 0; i < g.n; ++i) {
      REQUIRE(std::fabs(s.hub[i] - hub(i)) < 1e-6);
      REQUIRE(std::fabs(s.authority[i] - authority(i)) < 1e-6);
    }
    // When the top eigenvalue of A'A is well separated the authority vector
    // is its L1-normalized eigenvector.
    const Eigen::MatrixXd ata = g.adjacency.transpose() * g.adjacency;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ata);
    const auto n = static_cast<Eigen::Index>(g.n);
    const double top = es.eigenvalues()(n - 1);
    const double second = n > 1 ? es.eigenvalues()(n - 2) : 0.0;
    if (second < 0.9 * top) {
      Eigen::VectorXd v = es.eigenvectors().col(n - 1).cwiseAbs();
      v /= v.sum();
      for (std::size_t i = 0; i < g.n; ++i) REQUIRE(std::fabs(s.authority[i] - v(i)) < 1e-6);
      ++eigen_checked;
    }
  }
  CHECK(eigen_checked > 300);
}

TEST_CASE("PageRank matches the dense stationary distribution") {
  Rng rng(202);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto g = random_graph(rng, 8);
    const double damping = trial % 2 ? 0.85 : 0.5 + 0.35 * rng.uniform();
    PageRankOptions o;
    o.damping = damping;
    const auto s = pagerank(CitationGraph::from_edges(g.n, g.edges), o);
    REQUIRE(s.converged);
    const auto oracle = dense_pagerank(g.adjacency, damping);
    for (std::size_t i = 0; i < g.n; ++i) REQUIRE(std::fabs(s.rank[i] - oracle(i)) < 1e-6);
  }
}

TEST_CASE("PageRank on 10k nodes sums to one and converges quickly") {
  Rng rng(303);
  const std::size_t n = 10000;
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  for (NodeIndex u = 1; u < n; ++u) {
    const auto refs = rng.below(12);
    for (std::uint64_t k = 0; k < refs; ++k) edges.emplace_back(u, static_cast<NodeIndex>(rng.below(u)));
  }
  const auto start = std::chrono::steady_clock::now();
  const auto s = pagerank(CitationGraph::from_edges(n, std::move(edges)));
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  double sum = 0.0;
  for (double r : s.rank) sum += r;
  CHECK(s.converged);
  CHECK(s.iterations < 200);
  CHECK(std::fabs(sum - 1.0) <= 1e-9);
  CHECK(seconds < 5.0);
}

TEST_CASE("PageRank rejects empty graphs and bad damping") {
  CHECK_THROWS_AS(pagerank(CitationGraph::from_edges(0, {})), Error);
  PageRankOptions o;
  o.damping = 1.0;
  CHECK_THROWS_AS(pagerank(CitationGraph::from_edges(2, {{0, 1}}), o), Error);
}
