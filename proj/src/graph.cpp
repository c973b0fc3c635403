#include "hellyrel/graph.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "hellyrel/rng.hpp"

namespace hellyrel {

Graph::Graph(Vertex n, std::span<const Edge> edges) {
  if (n < 0) throw Error("negative vertex count");
  adj_.assign(n, {});
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw Error("edge endpoint out of range");
    if (u == v) continue;
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& a : adj_) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    edge_count_ += a.size();
  }
  edge_count_ /= 2;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

bool Graph::connected() const {
  if (size() == 0) return false;
  auto d = bfs_distances(*this, 0);
  return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < size(); ++u)
    for (Vertex v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

int DistMatrix::eccentricity(Vertex v) const {
  auto r = row(v);
  return r.empty() ? 0 : *std::max_element(r.begin(), r.end());
}

int DistMatrix::diameter() const {
  return d_.empty() ? 0 : *std::max_element(d_.begin(), d_.end());
}

std::vector<int> bfs_distances(const Graph& g, Vertex source) {
  std::vector<int> dist(g.size(), -1);
  std::vector<Vertex> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex u = queue[head];
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

namespace {

void fill_row(const Graph& g, DistMatrix& m, Vertex s, bool& disconnected) {
  auto d = bfs_distances(g, s);
  for (Vertex v = 0; v < g.size(); ++v) {
    if (d[v] < 0) disconnected = true;
    m.at(s, v) = d[v];
  }
}

}  // namespace

DistMatrix distance_matrix(const Graph& g) {
  if (g.size() == 0) throw Error("graph not connected");
  DistMatrix m(g.size());
  bool disconnected = false;
  const int n = g.size();
#pragma omp parallel for schedule(dynamic) reduction(|| : disconnected)
  for (int s = 0; s < n; ++s) {
    bool local = false;
    fill_row(g, m, s, local);
    disconnected = disconnected || local;
  }
  if (disconnected) throw Error("graph not connected");
  return m;
}

DistMatrix distance_matrix_serial(const Graph& g) {
  if (g.size() == 0) throw Error("graph not connected");
  DistMatrix m(g.size());
  bool disconnected = false;
  for (Vertex s = 0; s < g.size(); ++s) fill_row(g, m, s, disconnected);
  if (disconnected) throw Error("graph not connected");
  return m;
}

VertexSet ball(const DistMatrix& d, Vertex center, int rho) {
  VertexSet out;
  for (Vertex v = 0; v < d.size(); ++v)
    if (d(center, v) <= rho) out.push_back(v);
  return out;
}

VertexSet interval(const DistMatrix& d, Vertex u, Vertex v) {
  VertexSet out;
  for (Vertex z = 0; z < d.size(); ++z)
    if (d(u, z) + d(z, v) == d(u, v)) out.push_back(z);
  return out;
}

Graph power_graph(const Graph& g, const DistMatrix& d, int k) {
  if (k < 1) throw Error("power graph exponent must be at least 1");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < g.size(); ++u)
    for (Vertex v = u + 1; v < g.size(); ++v)
      if (d(u, v) <= k) edges.emplace_back(u, v);
  return Graph(g.size(), edges);
}

Graph power_graph(const Graph& g, int k) {
  if (k < 1) throw Error("power graph exponent must be at least 1");
  return power_graph(g, distance_matrix(g), k);
}

Subgraph full_subgraph(const Graph& g, VertexSet s) {
  if (s.empty()) throw Error("empty vertex set");
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  std::vector<Vertex> index(g.size(), -1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!g.valid(s[i])) throw Error("vertex out of range");
    index[s[i]] = static_cast<Vertex>(i);
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (Vertex w : g.neighbors(s[i]))
      if (index[w] > static_cast<Vertex>(i)) edges.emplace_back(static_cast<Vertex>(i), index[w]);
  Subgraph out{Graph(static_cast<Vertex>(s.size()), edges), std::move(s)};
  if (!out.graph.connected()) throw Error("induced subgraph not connected");
  return out;
}

IsometryCheck is_isometric_subgraph(const Graph& sub, std::span<const Vertex> embedding,
                                    const Graph& sup) {
  if (embedding.size() != static_cast<std::size_t>(sub.size()))
    throw Error("embedding size mismatch");
  for (Vertex v : embedding)
    if (!sup.valid(v)) throw Error("embedding target out of range");
  for (auto [u, v] : sub.edges())
    if (!sup.adjacent(embedding[u], embedding[v])) throw Error("embedding is not edge-preserving");
  auto ds = distance_matrix(sub);
  auto dg = distance_matrix(sup);
  IsometryCheck out;
  for (Vertex u = 0; u < sub.size(); ++u) {
    for (Vertex v = u + 1; v < sub.size(); ++v) {
      int a = ds(u, v), b = dg(embedding[u], embedding[v]);
      if (a != b) {
        out.isometric = false;
        out.witness = Edge{u, v};
        out.sub_distance = a;
        out.sup_distance = b;
        return out;
      }
    }
  }
  return out;
}

void QGParams::validate() const {
  if (lambda < 1) throw Error("lambda must be at least 1");
  if (c < 0) throw Error("c must be non-negative");
  if (k_local < 2) throw Error("k_local must be at least 2");
}

bool is_path(const Graph& g, std::span<const Vertex> p) {
  if (p.empty()) return false;
  for (Vertex v : p)
    if (!g.valid(v)) return false;
  for (std::size_t i = 1; i < p.size(); ++i)
    if (!g.adjacent(p[i - 1], p[i])) return false;
  return true;
}

PathClass classify_path(const Graph& g, const DistMatrix& d, std::span<const Vertex> p,
                        const QGParams& q) {
  q.validate();
  if (!is_path(g, p)) throw Error("invalid path");
  PathClass out;
  const std::int64_t len = static_cast<std::int64_t>(p.size()) - 1;
  out.is_geodesic = d(p.front(), p.back()) == len;
  out.is_quasigeodesic = true;
  out.is_k_local_geodesic = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      const std::int64_t sub = static_cast<std::int64_t>(j - i);
      const int dist = d(p[i], p[j]);
      if (Rational(sub) > q.lambda * dist + q.c) out.is_quasigeodesic = false;
      if (sub <= q.k_local && dist != sub) out.is_k_local_geodesic = false;
    }
  }
  return out;
}

int hausdorff_distance(const DistMatrix& d, std::span<const Vertex> a, std::span<const Vertex> b) {
  if (a.empty() || b.empty()) throw Error("hausdorff distance of an empty set");
  auto one_sided = [&](std::span<const Vertex> x, std::span<const Vertex> y) {
    int worst = 0;
    for (Vertex u : x) {
      int best = std::numeric_limits<int>::max();
      for (Vertex v : y) best = std::min(best, d(u, v));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

namespace {

// Interval I(a,b) grouped by distance from a.
std::vector<VertexSet> interval_levels(const DistMatrix& d, Vertex a, Vertex b) {
  std::vector<VertexSet> levels(d(a, b) + 1);
  for (Vertex z = 0; z < d.size(); ++z)
    if (d(a, z) + d(z, b) == d(a, b)) levels[d(a, z)].push_back(z);
  return levels;
}

// Worst thin-defect at corner x of triangles with the other corners y, z.
int corner_thin(const DistMatrix& d, Vertex x, Vertex y, Vertex z) {
  const int limit = (d(x, y) + d(x, z) - d(y, z)) / 2;
  auto side_p = interval_levels(d, x, y);
  auto side_r = interval_levels(d, x, z);
  int worst = 0;
  for (int t = 0; t <= limit; ++t)
    for (Vertex u : side_r[t])
      for (Vertex v : side_p[t]) worst = std::max(worst, d(u, v));
  return worst;
}

// Maximum over geodesics a -> b of the distance from u to the geodesic.
// Bottleneck recursion over the interval DAG ordered by distance from a.
int farthest_geodesic(const DistMatrix& d, const Graph& g, Vertex u, Vertex a, Vertex b) {
  auto levels = interval_levels(d, a, b);
  std::vector<int> best(d.size(), -1);
  for (Vertex w : levels[0]) best[w] = d(u, w);
  for (std::size_t t = 1; t < levels.size(); ++t) {
    for (Vertex w : levels[t]) {
      int m = -1;
      for (Vertex p : g.neighbors(w))
        if (best[p] >= 0 && d(a, p) + 1 == d(a, w) && d(p, b) == d(w, b) + 1) m = std::max(m, best[p]);
      best[w] = std::min(m, d(u, w));
    }
  }
  return best[b];
}

// Slim defect of triangles on (x,y,z) at vertices of the side z -> x.
int side_slim(const DistMatrix& d, const Graph& g, Vertex x, Vertex y, Vertex z) {
  int worst = 0;
  for (Vertex u : interval(d, z, x)) {
    int via_p = farthest_geodesic(d, g, u, x, y);
    int via_q = farthest_geodesic(d, g, u, y, z);
    worst = std::max(worst, std::min(via_p, via_q));
  }
  return worst;
}

}  // namespace

ThinnessReport thinness_delta(const Graph& g, const DistMatrix& d, const ThinnessOptions& opt) {
  ThinnessReport rep;
  const Vertex n = g.size();
  if (n <= opt.exhaustive_bound) {
    rep.exhaustive = true;
    for (Vertex x = 0; x < n; ++x)
      for (Vertex y = 0; y < n; ++y)
        for (Vertex z = 0; z < n; ++z) {
          rep.delta_thin = std::max(rep.delta_thin, corner_thin(d, x, y, z));
          rep.delta_slim = std::max(rep.delta_slim, side_slim(d, g, x, y, z));
          ++rep.triangles;
        }
    return rep;
  }
  rep.exhaustive = false;
  for (std::size_t s = 0; s < opt.samples; ++s) {
    auto rng = sample_rng(opt.seed, s);
    Vertex x = static_cast<Vertex>(uniform_below(rng, n));
    Vertex y = static_cast<Vertex>(uniform_below(rng, n));
    Vertex z = static_cast<Vertex>(uniform_below(rng, n));
    for (auto [a, b, c] : {std::array{x, y, z}, std::array{y, z, x}, std::array{z, x, y}}) {
      rep.delta_thin = std::max(rep.delta_thin, corner_thin(d, a, b, c));
      rep.delta_slim = std::max(rep.delta_slim, side_slim(d, g, a, b, c));
    }
    ++rep.triangles;
  }
  return rep;
}

std::vector<Path> enumerate_geodesics(const Graph& g, const DistMatrix& d, Vertex u, Vertex v,
                                      std::size_t cap) {
  std::vector<Path> out;
  Path cur{u};
  auto rec = [&](auto&& self, Vertex at) -> void {
    if (at == v) {
      if (out.size() >= cap) throw BoundExceeded("geodesic enumeration cap exceeded");
      out.push_back(cur);
      return;
    }
    for (Vertex w : g.neighbors(at)) {
      if (d(w, v) + 1 != d(at, v)) continue;
      cur.push_back(w);
      self(self, w);
      cur.pop_back();
    }
  };
  rec(rec, u);
  return out;
}

}  // namespace hellyrel
