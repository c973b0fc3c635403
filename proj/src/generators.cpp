#include "hellyrel/generators.hpp"

#include <algorithm>
#include <set>

#include "hellyrel/rng.hpp"

namespace hellyrel {

namespace {

void require_positive(Vertex n) {
  if (n < 1) throw Error("graph size must be positive");
}

}  // namespace

Graph cycle_graph(Vertex n) {
  if (n < 3) throw Error("cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, e);
}

Graph path_graph(Vertex n) {
  require_positive(n);
  std::vector<Edge> e;
  for (Vertex i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

Graph complete_graph(Vertex n) {
  require_positive(n);
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, e);
}

Graph star_graph(Vertex leaves) {
  if (leaves < 0) throw Error("negative leaf count");
  std::vector<Edge> e;
  for (Vertex i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph(leaves + 1, e);
}

Graph king_grid(Vertex width, Vertex height) {
  require_positive(width);
  require_positive(height);
  std::vector<Edge> e;
  for (Vertex y = 0; y < height; ++y)
    for (Vertex x = 0; x < width; ++x)
      for (auto [dx, dy] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 1}, std::pair{-1, 1}}) {
        Vertex nx = x + dx, ny = y + dy;
        if (nx >= 0 && nx < width && ny < height) e.emplace_back(y * width + x, ny * width + nx);
      }
  return Graph(width * height, e);
}

Graph random_tree(Vertex n, std::uint64_t seed) {
  require_positive(n);
  if (n <= 2) return path_graph(n);
  auto rng = sample_rng(seed, 0);
  std::vector<Vertex> code(n - 2);
  for (auto& c : code) c = static_cast<Vertex>(uniform_below(rng, n));
  std::vector<int> degree(n, 1);
  for (Vertex c : code) ++degree[c];
  std::set<Vertex> leaves;
  for (Vertex v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.insert(v);
  std::vector<Edge> e;
  for (Vertex c : code) {
    Vertex leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    e.emplace_back(leaf, c);
    if (--degree[c] == 1) leaves.insert(c);
  }
  e.emplace_back(*leaves.begin(), *std::next(leaves.begin()));
  return Graph(n, e);
}

Graph random_connected_graph(Vertex n, double p, std::uint64_t seed) {
  require_positive(n);
  const std::uint64_t threshold = static_cast<std::uint64_t>(std::clamp(p, 0.0, 1.0) * 1e9);
  for (std::uint64_t attempt = 0;; ++attempt) {
    auto rng = sample_rng(seed, attempt);
    std::vector<Edge> e;
    for (Vertex i = 0; i < n; ++i)
      for (Vertex j = i + 1; j < n; ++j)
        if (uniform_below(rng, 1'000'000'000) < threshold) e.emplace_back(i, j);
    Graph g(n, e);
    if (g.connected()) return g;
    if (attempt > 100000) throw Error("could not sample a connected graph");
  }
}

}  // namespace hellyrel
