#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace hellyrel {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an input exceeds a configured size or explosion guard.
struct BoundExceeded : Error {
  using Error::Error;
};

using Vertex = std::int32_t;
using VertexSet = std::vector<Vertex>;  // sorted ascending
using Path = std::vector<Vertex>;
using Edge = std::pair<Vertex, Vertex>;
using Rational = boost::rational<std::int64_t>;

// Finite simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  Graph() = default;
  // Loops and repeated edges are dropped.
  Graph(Vertex n, std::span<const Edge> edges);

  Vertex size() const { return static_cast<Vertex>(adj_.size()); }
  std::size_t edge_count() const { return edge_count_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }
  bool adjacent(Vertex u, Vertex v) const;
  bool connected() const;
  bool valid(Vertex v) const { return v >= 0 && v < size(); }
  std::vector<Edge> edges() const;

  bool operator==(const Graph& other) const { return adj_ == other.adj_; }

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::size_t edge_count_ = 0;
};

class DistMatrix {
 public:
  DistMatrix() = default;
  explicit DistMatrix(Vertex n) : n_(n), d_(static_cast<std::size_t>(n) * n, -1) {}

  int operator()(Vertex u, Vertex v) const { return d_[index(u, v)]; }
  int& at(Vertex u, Vertex v) { return d_[index(u, v)]; }
  std::span<const int> row(Vertex u) const {
    return {d_.data() + static_cast<std::size_t>(u) * n_, static_cast<std::size_t>(n_)};
  }
  Vertex size() const { return n_; }
  int eccentricity(Vertex v) const;
  int diameter() const;

  bool operator==(const DistMatrix&) const = default;

 private:
  std::size_t index(Vertex u, Vertex v) const { return static_cast<std::size_t>(u) * n_ + v; }
  Vertex n_ = 0;
  std::vector<int> d_;
};

// Unreachable vertices get -1.
std::vector<int> bfs_distances(const Graph& g, Vertex source);

// All-pairs BFS, one source per OpenMP task. Throws on disconnected input.
DistMatrix distance_matrix(const Graph& g);
DistMatrix distance_matrix_serial(const Graph& g);

VertexSet ball(const DistMatrix& d, Vertex center, int rho);
VertexSet interval(const DistMatrix& d, Vertex u, Vertex v);

Graph power_graph(const Graph& g, const DistMatrix& d, int k);
Graph power_graph(const Graph& g, int k);

struct Subgraph {
  Graph graph;
  std::vector<Vertex> to_parent;  // subgraph vertex -> parent vertex
};

// Induced subgraph on s. Throws if s is empty or the result is disconnected.
Subgraph full_subgraph(const Graph& g, VertexSet s);

struct IsometryCheck {
  bool isometric = true;
  std::optional<Edge> witness;  // subgraph vertices
  int sub_distance = 0;
  int sup_distance = 0;
};

IsometryCheck is_isometric_subgraph(const Graph& sub, std::span<const Vertex> embedding,
                                    const Graph& sup);

struct QGParams {
  Rational lambda{1};
  Rational c{0};
  int k_local = 2;

  void validate() const;
};

struct PathClass {
  bool is_geodesic = false;
  bool is_quasigeodesic = false;
  bool is_k_local_geodesic = false;
};

bool is_path(const Graph& g, std::span<const Vertex> p);
PathClass classify_path(const Graph& g, const DistMatrix& d, std::span<const Vertex> p,
                        const QGParams& q);

int hausdorff_distance(const DistMatrix& d, std::span<const Vertex> a, std::span<const Vertex> b);

struct ThinnessOptions {
  Vertex exhaustive_bound = 10;
  std::size_t samples = 2000;
  std::uint64_t seed = 1;
};

struct ThinnessReport {
  int delta_thin = 0;
  int delta_slim = 0;
  bool exhaustive = true;
  std::size_t triangles = 0;
};

ThinnessReport thinness_delta(const Graph& g, const DistMatrix& d, const ThinnessOptions& opt = {});

// All geodesics u -> v in lexicographic order; throws BoundExceeded past cap.
std::vector<Path> enumerate_geodesics(const Graph& g, const DistMatrix& d, Vertex u, Vertex v,
                                      std::size_t cap = 100000);

}  // namespace hellyrel
