#pragma once

#include "pcm/pcm.hpp"

namespace pcm {

/// Duplicates alternative `i` (0-based). The clone is inserted at index i+1,
/// copies row/column i including its missing cells, and is compared to the
/// original with a_{i,i+1} = 1. Throws IndexError if i is out of range.
IncompletePCM clone_alternative(const IncompletePCM& pcm, int i);

/// Weights that reproduce every known entry exactly, propagated along a
/// breadth-first spanning tree from vertex 0. Only meaningful when the
/// comparison graph is a spanning tree (or the known entries are otherwise
/// consistent). Throws DisconnectedGraph.
Vector tree_weights(const IncompletePCM& pcm);

/// Completion with b_ij = w_i / w_j on missing cells for the given weights.
Matrix complete_with_weights(const IncompletePCM& pcm, const Vector& weights);

}  // namespace pcm
