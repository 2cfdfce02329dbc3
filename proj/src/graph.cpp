#include "pcm/graph.hpp"

#include <algorithm>
#include <queue>

namespace pcm {

std::vector<std::vector<int>> ComparisonGraph::adjacency() const {
  std::vector<std::vector<int>> adj(order);
  for (const auto& [i, j] : edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  return adj;
}

ComparisonGraph comparison_graph(const IncompletePCM& pcm) {
  return {pcm.order(), pcm.known_positions()};
}

std::vector<std::vector<int>> connected_components(const ComparisonGraph& graph) {
  const auto adj = graph.adjacency();
  std::vector<int> label(graph.order, -1);
  std::vector<std::vector<int>> components;
  for (int s = 0; s < graph.order; ++s) {
    if (label[s] >= 0) continue;
    std::vector<int> comp;
    std::queue<int> frontier;
    frontier.push(s);
    label[s] = static_cast<int>(components.size());
    while (!frontier.empty()) {
      const int v = frontier.front();
      frontier.pop();
      comp.push_back(v);
      for (int u : adj[v]) {
        if (label[u] < 0) {
          label[u] = label[s];
          frontier.push(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

bool is_connected(const ComparisonGraph& graph) {
  return connected_components(graph).size() <= 1;
}

bool is_spanning_tree(const ComparisonGraph& graph) {
  return static_cast<int>(graph.edges.size()) == graph.order - 1 && is_connected(graph);
}

void require_connected(const IncompletePCM& pcm) {
  auto components = connected_components(comparison_graph(pcm));
  if (components.size() > 1) throw DisconnectedGraph(std::move(components));
}

}  // namespace pcm
