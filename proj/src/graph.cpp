#include "scimetrics/graph.hpp"

#include <algorithm>
#include <cmath>

#include "scimetrics/error.hpp"

namespace scim {

CitationGraph CitationGraph::from_edges(std::size_t node_count,
                                        std::vector<std::pair<NodeIndex, NodeIndex>> edges) {
  std::erase_if(edges, [node_count](const auto& e) {
    return e.first == e.second || e.first >= node_count || e.second >= node_count;
  });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  CitationGraph g;
  g.out_offsets_.assign(node_count + 1, 0);
  g.in_offsets_.assign(node_count + 1, 0);
  for (const auto& [u, v] : edges) {
    ++g.out_offsets_[u + 1];
    ++g.in_offsets_[v + 1];
  }
  for (std::size_t i = 0; i < node_count; ++i) {
    g.out_offsets_[i + 1] += g.out_offsets_[i];
    g.in_offsets_[i + 1] += g.in_offsets_[i];
  }
  g.out_targets_.resize(edges.size());
  g.in_sources_.resize(edges.size());
  std::vector<std::size_t> out_fill(g.out_offsets_.begin(), g.out_offsets_.end() - 1);
  std::vector<std::size_t> in_fill(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
  // edges are sorted by (u, v), so both adjacency lists come out sorted
  for (const auto& [u, v] : edges) {
    g.out_targets_[out_fill[u]++] = v;
    g.in_sources_[in_fill[v]++] = u;
  }
  return g;
}

namespace {

bool normalize_l1(std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  if (sum <= 0.0) return false;
  for (double& x : v) x /= sum;
  return true;
}

double max_abs_change(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

HitsScores hits(const CitationGraph& graph, const HitsOptions& options) {
  const std::size_t n = graph.node_count();
  HitsScores s;
  s.hub.assign(n, 0.0);
  s.authority.assign(n, 0.0);
  if (graph.edge_count() == 0) {
    s.no_edges = true;
    s.converged = true;
    return s;
  }

  std::vector<double> hub(n, 1.0 / static_cast<double>(n));
  std::vector<double> authority(n, 1.0 / static_cast<double>(n));
  std::vector<double> next_hub(n), next_authority(n);
  for (int it = 1; it <= options.max_iterations; ++it) {
    for (NodeIndex v = 0; v < n; ++v) {
      double sum = 0.0;
      for (NodeIndex u : graph.citers(v)) sum += hub[u];
      next_authority[v] = sum;
    }
    normalize_l1(next_authority);
    for (NodeIndex u = 0; u < n; ++u) {
      double sum = 0.0;
      for (NodeIndex v : graph.cited(u)) sum += next_authority[v];
      next_hub[u] = sum;
    }
    normalize_l1(next_hub);

    const double change = std::max(max_abs_change(next_hub, hub),
                                   max_abs_change(next_authority, authority));
    hub.swap(next_hub);
    authority.swap(next_authority);
    s.iterations = it;
    if (change < options.tolerance) {
      s.converged = true;
      break;
    }
  }
  s.hub = std::move(hub);
  s.authority = std::move(authority);
  return s;
}

PageRankScores pagerank(const CitationGraph& graph, const PageRankOptions& options) {
  const std::size_t n = graph.node_count();
  if (n == 0) throw Error(ErrorCode::unprocessable, "pagerank: no nodes");
  if (!(options.damping > 0.0 && options.damping < 1.0))
    throw Error(ErrorCode::invalid_argument, "pagerank: damping must lie in (0,1)");

  const double d = options.damping;
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> rank(n, inv_n), next(n);
  PageRankScores s;
  for (int it = 1; it <= options.max_iterations; ++it) {
    double dangling = 0.0;
    for (NodeIndex u = 0; u < n; ++u)
      if (graph.cited(u).empty()) dangling += rank[u];
    const double base = (1.0 - d) * inv_n + d * dangling * inv_n;
    std::fill(next.begin(), next.end(), base);
    for (NodeIndex u = 0; u < n; ++u) {
      auto out = graph.cited(u);
      if (out.empty()) continue;
      const double share = d * rank[u] / static_cast<double>(out.size());
      for (NodeIndex v : out) next[v] += share;
    }
    normalize_l1(next);
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change += std::abs(next[i] - rank[i]);
    rank.swap(next);
    s.iterations = it;
    if (change < options.tolerance) {
      s.converged = true;
      break;
    }
  }
  s.rank = std::move(rank);
  return s;
}

}  // namespace scim
