#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace scim {

using NodeIndex = std::uint32_t;

// Directed citation graph in compressed adjacency form. An edge u -> v means
// u cites v.
class CitationGraph {
 public:
  CitationGraph() = default;
  /// Duplicate edges and self-loops are discarded.
  static CitationGraph from_edges(std::size_t node_count,
                                  std::vector<std::pair<NodeIndex, NodeIndex>> edges);

  std::size_t node_count() const noexcept { return out_offsets_.empty() ? 0 : out_offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return out_targets_.size(); }

  std::span<const NodeIndex> cited(NodeIndex u) const noexcept {
    return {out_targets_.data() + out_offsets_[u], out_targets_.data() + out_offsets_[u + 1]};
  }
  std::span<const NodeIndex> citers(NodeIndex v) const noexcept {
    return {in_sources_.data() + in_offsets_[v], in_sources_.data() + in_offsets_[v + 1]};
  }

 private:
  std::vector<std::size_t> out_offsets_;
  std::vector<NodeIndex> out_targets_;
  std::vector<std::size_t> in_offsets_;
  std::vector<NodeIndex> in_sources_;
};

struct HitsOptions {
  double tolerance = 1e-12;
  int max_iterations = 10000;
};

struct HitsScores {
  std::vector<double> hub;
  std::vector<double> authority;
  bool no_edges = false;  // scores are all zero
  int iterations = 0;
  bool converged = false;
};

/// Kleinberg mutual reinforcement from a uniform start. Each round sets
/// authority from citers' hubs, then hub from cited authorities, and L1
/// normalizes both. Isolated nodes score 0.
HitsScores hits(const CitationGraph& graph, const HitsOptions& options = {});

struct PageRankOptions {
  double damping = 0.85;
  double tolerance = 1e-9;
  int max_iterations = 200;
};

struct PageRankScores {
  std::vector<double> rank;
  int iterations = 0;
  bool converged = false;
};

/// Damped random surfer along citing -> cited edges; the mass of nodes
/// without references is spread uniformly. Throws on an empty graph.
PageRankScores pagerank(const CitationGraph& graph, const PageRankOptions& options = {});

}  // namespace scim
