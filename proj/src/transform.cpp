#include "pcm/transform.hpp"

#include <queue>

#include "pcm/graph.hpp"

namespace pcm {

IncompletePCM clone_alternative(const IncompletePCM& pcm, int i) {
  const int n = pcm.order();
  if (i < 0 || i >= n) throw IndexError("clone index " + std::to_string(i + 1) + " outside 1.." + std::to_string(n));
  // Index in the source matrix for each row of the result.
  auto source = [i](int r) { return r <= i ? r : r - 1; };
  std::vector<Cell> upper;
  for (int r = 0; r <= n; ++r) {
    for (int c = r + 1; c <= n; ++c) {
      if (r == i && c == i + 1)
        upper.emplace_back(1.0);
      else
        upper.push_back(pcm.at(source(r), source(c)));
    }
  }
  return IncompletePCM::from_upper(n + 1, std::move(upper));
}

Vector tree_weights(const IncompletePCM& pcm) {
  require_connected(pcm);
  const int n = pcm.order();
  const auto adj = comparison_graph(pcm).adjacency();
  Vector w = Vector::Zero(n);
  std::vector<bool> seen(n, false);
  std::queue<int> frontier;
  w(0) = 1.0;
  seen[0] = true;
  frontier.push(0);
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    for (int u : adj[v]) {
      if (seen[u]) continue;
      // a_vu = w_v / w_u
      w(u) = w(v) / *pcm.at(v, u);
      seen[u] = true;
      frontier.push(u);
    }
  }
  return w / w.sum();
}

Matrix complete_with_weights(const IncompletePCM& pcm, const Vector& weights) {
  Matrix b = pcm.dense(1.0);
  for (const auto& [i, j] : pcm.missing_positions()) {
    b(i, j) = weights(i) / weights(j);
    b(j, i) = weights(j) / weights(i);
  }
  return b;
}

}  // namespace pcm
