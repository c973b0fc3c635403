#pragma once

#include <cstdint>

#include "hellyrel/graph.hpp"

namespace hellyrel {

Graph cycle_graph(Vertex n);
Graph path_graph(Vertex n);
Graph complete_graph(Vertex n);
Graph star_graph(Vertex leaves);
// Vertex (x, y) has id y * width + x; edges join cells at Chebyshev distance 1.
Graph king_grid(Vertex width, Vertex height);
// Uniform labelled tree from a random Pruefer sequence.
Graph random_tree(Vertex n, std::uint64_t seed);
// G(n, p) resampled until connected.
Graph random_connected_graph(Vertex n, double p, std::uint64_t seed);

}  // namespace hellyrel
