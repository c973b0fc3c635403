#include "hellyrel/helly.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>

namespace hellyrel {

namespace {

void check_bound(Vertex n, Vertex bound, const char* what) {
  if (n > bound)
    throw BoundExceeded(std::string(what) + ": " + std::to_string(n) + " vertices exceeds bound " +
                        std::to_string(bound));
}

class ExtremalSearch {
 public:
  explicit ExtremalSearch(const DistMatrix& d) : d_(d), n_(d.size()) {}

  struct State {
    std::vector<int> lo, hi;
    std::vector<char> assigned;
  };

  State root() const {
    State s{std::vector<int>(n_, 0), std::vector<int>(n_), std::vector<char>(n_, 0)};
    for (Vertex v = 0; v < n_; ++v) s.hi[v] = d_.eccentricity(v);
    return s;
  }

  // Unassigned vertex with the narrowest window; ties to the smallest id.
  Vertex pick(const State& s) const {
    Vertex best = -1;
    for (Vertex v = 0; v < n_; ++v) {
      if (s.assigned[v]) continue;
      if (best < 0 || s.hi[v] - s.lo[v] < s.hi[best] - s.lo[best]) best = v;
    }
    return best;
  }

  bool assign(State& s, Vertex v, int value) const {
    s.lo[v] = s.hi[v] = value;
    s.assigned[v] = 1;
    for (Vertex u = 0; u < n_; ++u) {
      if (s.assigned[u]) continue;
      const int duv = d_(u, v);
      s.lo[u] = std::max({s.lo[u], duv - value, value - duv});
      s.hi[u] = std::min(s.hi[u], value + duv);
      if (s.lo[u] > s.hi[u]) return false;
    }
    // Fixed point: f(x) <= max(0, max_{y != x} d(x,y) - lo(y)); an assigned
    // x > 0 meets the bound only if some y can still be tight with it.
    for (Vertex x = 0; x < n_; ++x) {
      int cap = 0;
      for (Vertex y = 0; y < n_; ++y)
        if (y != x) cap = std::max(cap, d_(x, y) - s.lo[y]);
      s.hi[x] = std::min(s.hi[x], cap);
      if (s.lo[x] > s.hi[x]) return false;
    }
    return true;
  }

  void dfs(const State& s, std::vector<RadiusFunction>& out) const {
    Vertex v = pick(s);
    if (v < 0) {
      out.push_back(s.lo);
      return;
    }
    for (int value = s.lo[v]; value <= s.hi[v]; ++value) {
      State next = s;
      if (assign(next, v, value)) dfs(next, out);
    }
  }

  std::vector<RadiusFunction> subtree(const State& s, Vertex v, int value) const {
    std::vector<RadiusFunction> out;
    State next = s;
    if (assign(next, v, value)) dfs(next, out);
    return out;
  }

 private:
  const DistMatrix& d_;
  Vertex n_;
};

std::vector<RadiusFunction> extremal_impl(const Graph& g, const DistMatrix& d,
                                          const HellyOptions& opt, bool parallel) {
  check_bound(g.size(), opt.max_vertices, "extremal function enumeration");
  ExtremalSearch search(d);
  auto root = search.root();
  const Vertex first = search.pick(root);
  const int lo = root.lo[first], count = root.hi[first] - root.lo[first] + 1;
  std::vector<std::vector<RadiusFunction>> parts(count);
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) parts[i] = search.subtree(root, first, lo + i);
  } else {
    for (int i = 0; i < count; ++i) parts[i] = search.subtree(root, first, lo + i);
  }
  std::vector<RadiusFunction> out;
  for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  std::sort(out.begin(), out.end());
  return out;
}

RadiusFunction distance_function(const DistMatrix& d, Vertex x) {
  auto r = d.row(x);
  return RadiusFunction(r.begin(), r.end());
}

RadiusFamily family_of(const RadiusFunction& f) {
  RadiusFamily fam;
  for (std::size_t v = 0; v < f.size(); ++v) fam.balls.emplace_back(static_cast<Vertex>(v), f[v]);
  return fam;
}

// Smallest uniform inflation making the balls B_{f(v)}(v) meet.
int coarse_defect(const DistMatrix& d, const RadiusFunction& f) {
  int best = std::numeric_limits<int>::max();
  for (Vertex x = 0; x < d.size(); ++x) {
    int worst = 0;
    for (Vertex v = 0; v < d.size(); ++v) worst = std::max(worst, d(x, v) - f[v]);
    best = std::min(best, worst);
  }
  return best;
}

}  // namespace

std::vector<RadiusFunction> extremal_functions(const Graph& g, const DistMatrix& d,
                                               const HellyOptions& opt) {
  return extremal_impl(g, d, opt, true);
}

std::vector<RadiusFunction> extremal_functions_serial(const Graph& g, const DistMatrix& d,
                                                      const HellyOptions& opt) {
  return extremal_impl(g, d, opt, false);
}

bool is_extremal(const DistMatrix& d, const RadiusFunction& f) {
  if (f.size() != static_cast<std::size_t>(d.size())) return false;
  for (Vertex v = 0; v < d.size(); ++v) {
    int m = std::numeric_limits<int>::min();
    for (Vertex u = 0; u < d.size(); ++u) m = std::max(m, d(u, v) - f[u]);
    if (m != f[v]) return false;
  }
  return true;
}

// Helly iff every extremal function is a distance function d(x,.).
//
// Suppose every extremal f equals some d(x,.), and let {B_r(s)(s)} be a
// pairwise intersecting family, so r(s) + r(t) >= d(s,t). Put
// g(v) = min_s (r(s) + d(v,s)). Then g(u) + g(v) >= r(s) + r(t) + d(u,s) +
// d(v,t) >= d(u,v), so g is feasible and some extremal f <= g exists. With
// f = d(x,.) we get d(x,s) <= g(s) <= r(s), so x lies in every ball.
//
// Conversely, if an extremal f is not a distance function, the balls
// B_f(v)(v) intersect pairwise (integral radii in a graph), and a common
// point x would give a feasible d(x,.) <= f, forcing f = d(x,.) by minimality.
// That family is the witness.
HellyCheck is_helly(const Graph& g, const DistMatrix& d, const HellyOptions& opt) {
  auto fs = extremal_functions(g, d, opt);
  for (const auto& f : fs) {
    bool is_distance = false;
    for (Vertex x = 0; x < g.size() && !is_distance; ++x)
      if (f[x] == 0) is_distance = f == distance_function(d, x);
    if (!is_distance) return {false, family_of(f)};
  }
  return {};
}

HellyCheck is_helly(const Graph& g, const HellyOptions& opt) {
  return is_helly(g, distance_matrix(g), opt);
}

bool helly_oracle_bruteforce(const Graph& g, int max_centers, Vertex max_vertices) {
  check_bound(g.size(), max_vertices, "brute-force Helly oracle");
  check_bound(g.size(), 64, "brute-force Helly oracle");
  const Vertex n = g.size();
  if (max_centers < 0) max_centers = n;
  // balls[v][r] as bitmasks, from a BFS local to the oracle.
  std::vector<std::vector<std::uint64_t>> balls(n);
  for (Vertex v = 0; v < n; ++v) {
    std::vector<int> dist(n, -1);
    std::vector<Vertex> queue{v};
    dist[v] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (Vertex w : g.neighbors(queue[h]))
        if (dist[w] < 0) {
          dist[w] = dist[queue[h]] + 1;
          queue.push_back(w);
        }
    int ecc = 0;
    for (int x : dist) {
      if (x < 0) throw Error("graph not connected");
      ecc = std::max(ecc, x);
    }
    // A radius reaching the eccentricity covers everything; such balls
    // never cause a failure and are skipped.
    for (int r = 0; r < ecc; ++r) {
      std::uint64_t mask = 0;
      for (Vertex u = 0; u < n; ++u)
        if (dist[u] <= r) mask |= std::uint64_t{1} << u;
      balls[v].push_back(mask);
    }
  }
  std::vector<std::uint64_t> chosen;
  bool ok = true;
  auto rec = [&](auto&& self, Vertex v, std::uint64_t common) -> void {
    if (!ok || v == n) return;
    self(self, v + 1, common);
    if (static_cast<int>(chosen.size()) >= max_centers) return;
    for (std::uint64_t b : balls[v]) {
      if (!ok) return;
      bool pairwise = std::all_of(chosen.begin(), chosen.end(), [&](std::uint64_t c) { return (c & b) != 0; });
      if (!pairwise) continue;
      if ((common & b) == 0) {
        ok = false;
        return;
      }
      chosen.push_back(b);
      self(self, v + 1, common & b);
      chosen.pop_back();
    }
  };
  rec(rec, 0, n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  return ok;
}

int coarse_helly_constant(const Graph& g, const DistMatrix& d, const HellyOptions& opt) {
  auto fs = extremal_functions(g, d, opt);
  int xi = 0;
  const int count = static_cast<int>(fs.size());
#pragma omp parallel for schedule(dynamic) reduction(max : xi)
  for (int i = 0; i < count; ++i) xi = std::max(xi, coarse_defect(d, fs[i]));
  return xi;
}

int coarse_helly_constant_serial(const Graph& g, const DistMatrix& d, const HellyOptions& opt) {
  int xi = 0;
  for (const auto& f : extremal_functions_serial(g, d, opt)) xi = std::max(xi, coarse_defect(d, f));
  return xi;
}

int coarse_helly_constant(const Graph& g, const HellyOptions& opt) {
  return coarse_helly_constant(g, distance_matrix(g), opt);
}

PseudoModularCheck is_pseudo_modular(const Graph& g, const DistMatrix& d, const HellyOptions& opt) {
  check_bound(g.size(), opt.pseudo_modular_max, "pseudo-modularity check");
  const Vertex n = g.size();
  // Only the smallest third radius compatible with the first two matters:
  // enlarging a ball cannot destroy a common point.
  for (Vertex a = 0; a < n; ++a)
    for (int ra = 0; ra <= d.eccentricity(a); ++ra)
      for (Vertex b = a + 1; b < n; ++b)
        for (int rb = std::max(0, d(a, b) - ra); rb <= d.eccentricity(b); ++rb)
          for (Vertex c = b + 1; c < n; ++c) {
            const int rc = std::max({0, d(a, c) - ra, d(b, c) - rb});
            bool common = false;
            for (Vertex v = 0; v < n && !common; ++v)
              common = d(v, a) <= ra && d(v, b) <= rb && d(v, c) <= rc;
            if (!common) return {false, RadiusFamily{{{a, ra}, {b, rb}, {c, rc}}}};
          }
  return {};
}

int stable_interval_constant(const Graph& g, const DistMatrix& d) {
  const Vertex n = g.size();
  int beta = 0;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b) {
      auto iab = interval(d, a, b);
      for (Vertex u : g.neighbors(a)) {
        auto iub = interval(d, u, b);
        for (Vertex w : iab) {
          int best = std::numeric_limits<int>::max();
          for (Vertex z : iub) best = std::min(best, d(w, z));
          beta = std::max(beta, best);
        }
      }
    }
  return std::max(beta, 1);
}

Hellyfication hellyfication(const Graph& g, const HellyficationOptions& opt) {
  auto d = distance_matrix(g);
  Hellyfication out;
  out.points = extremal_functions(g, d, opt.input);
  const auto& pts = out.points;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      int linf = 0;
      for (Vertex v = 0; v < g.size(); ++v) linf = std::max(linf, std::abs(pts[i][v] - pts[j][v]));
      if (linf == 1) edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
  out.graph = Graph(static_cast<Vertex>(pts.size()), edges);
  for (Vertex x = 0; x < g.size(); ++x) {
    auto it = std::lower_bound(pts.begin(), pts.end(), distance_function(d, x));
    if (it == pts.end() || *it != distance_function(d, x))
      throw Error("hellyfication postcondition violated: distance function missing");
    out.embedding.push_back(static_cast<Vertex>(it - pts.begin()));
  }
  if (!opt.check_postconditions) return out;
  if (!is_helly(out.graph, opt.output).is_helly)
    throw Error("hellyfication postcondition violated: output is not Helly");
  if (!is_isometric_subgraph(g, out.embedding, out.graph).isometric)
    throw Error("hellyfication postcondition violated: embedding is not isometric");
  if (is_helly(g, d, opt.input).is_helly && out.graph.size() != g.size())
    throw Error("hellyfication postcondition violated: Helly input not reproduced");
  return out;
}

HellyReport analyze_graph(const Graph& g, const HellyOptions& opt) {
  auto d = distance_matrix(g);
  HellyReport rep;
  auto h = is_helly(g, d, opt);
  rep.is_helly = h.is_helly;
  rep.witness = h.witness;
  rep.xi = coarse_helly_constant(g, d, opt);
  auto pm = is_pseudo_modular(g, d, opt);
  rep.pseudo_modular = pm.pseudo_modular;
  rep.pseudo_modular_witness = pm.witness;
  rep.beta = stable_interval_constant(g, d);
  return rep;
}

}  // namespace hellyrel
