#pragma once

#include <vector>

#include "pcm/pcm.hpp"

namespace pcm {

/// Undirected graph on the alternatives with an edge for every known
/// comparison. Vertices are 0..order-1; edges are stored with row < col.
struct ComparisonGraph {
  int order = 0;
  std::vector<Position> edges;

  std::vector<std::vector<int>> adjacency() const;
};

ComparisonGraph comparison_graph(const IncompletePCM& pcm);

/// Connected components, each sorted ascending, ordered by smallest vertex.
std::vector<std::vector<int>> connected_components(const ComparisonGraph& graph);

bool is_connected(const ComparisonGraph& graph);

/// Connected with exactly order-1 edges.
bool is_spanning_tree(const ComparisonGraph& graph);

/// Throws DisconnectedGraph unless the comparison graph of `pcm` is connected.
void require_connected(const IncompletePCM& pcm);

}  // namespace pcm
