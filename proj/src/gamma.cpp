#include "hellyrel/gamma.hpp"

#include <algorithm>
#include <deque>

#include "hellyrel/rng.hpp"

namespace hellyrel {

GammaVertex GammaVertex::free(GroupElement g) {
  GammaVertex v;
  v.kind = VertexKind::Free;
  v.g = std::move(g);
  return v;
}

GammaVertex GammaVertex::medial(const GroupSpec& spec, const GroupElement& g, int x) {
  GammaVertex v;
  v.kind = VertexKind::Medial;
  auto other = spec.multiply(spec.letter_element(x), g);
  const int y = spec.iota(x);
  if (std::tie(other, y) < std::tie(g, x)) {
    v.g = std::move(other);
    v.x = y;
  } else {
    v.g = g;
    v.x = x;
  }
  return v;
}

GammaVertex GammaVertex::internal(const GroupSpec& spec, int j, const GroupElement& g, FactorElem u) {
  if (j < 0 || j >= spec.factor_count() || !spec.factor(j).valid(u)) throw Error("invalid internal vertex");
  GammaVertex v;
  v.kind = VertexKind::Internal;
  v.j = j;
  v.g = coset_representative(g, j);
  v.u = std::move(u);
  return v;
}

std::size_t GammaVertexHash::operator()(const GammaVertex& v) const {
  std::size_t h = GroupElementHash{}(v.g);
  auto mix = [&](std::uint64_t x) { h = splitmix64(h ^ x); };
  mix(static_cast<std::uint64_t>(v.kind));
  mix(static_cast<std::uint64_t>(v.x + 7));
  mix(static_cast<std::uint64_t>(v.j + 11));
  for (auto c : v.u) mix(static_cast<std::uint64_t>(c));
  return h;
}

GroupElement coset_representative(const GroupElement& g, int j) {
  if (g.syllables.empty() || g.syllables.front().factor != j) return g;
  GroupElement r;
  r.syllables.assign(g.syllables.begin() + 1, g.syllables.end());
  return r;
}

int quotient_radius(const Graph& quotient, Vertex base) {
  if (!quotient.valid(base)) throw Error("quotient basepoint out of range");
  auto d = bfs_distances(quotient, base);
  int r = 0;
  for (int x : d) {
    if (x < 0) throw Error("graph not connected");
    r = std::max(r, x);
  }
  return std::max(r, 1);
}

int min_N_quotient(const GammaConfig& config) {
  // Each factor acts simply transitively on its Cayley graph: the quotient is
  // a single vertex.
  (void)config;
  return quotient_radius(Graph(1, {}), 0);
}

int min_N_short_loops(const GroupSpec& spec) {
  struct Letter {
    GroupElement value;
    int j = -1;  // factor of an H-letter, -1 for X-letters
    int length = 0;
  };
  std::vector<Letter> alphabet;
  for (int x = 0; x < static_cast<int>(spec.x_letters().size()); ++x) alphabet.push_back({spec.letter_element(x), -1, 0});
  // An H-letter of such a loop is a product of at most two X-letters of its
  // factor, so x-length <= 2 exhausts the candidates.
  for (int j = 0; j < spec.factor_count(); ++j)
    for (const auto& h : spec.factor(j).ball(2))
      if (!spec.factor(j).is_identity(h))
        alphabet.push_back({spec.parabolic(j, h), j, spec.factor(j).word_length(h)});
  const int a = static_cast<int>(alphabet.size());
  int best = 1;
  auto check = [&](const std::vector<int>& word) {
    const int n = static_cast<int>(word.size());
    std::vector<GroupElement> v{spec.identity()};
    for (int i : word) v.push_back(spec.multiply(alphabet[i].value, v.back()));
    if (!v.back().is_identity()) return;
    for (int i = 0; i < n; ++i) {
      const auto& y = alphabet[word[i]];
      const auto& z = alphabet[word[(i + 1) % n]];
      if (y.j >= 0 && y.j == z.j) return;  // component longer than one letter
    }
    for (int i = 0; i < n; ++i)
      for (int k = i + 1; k < n; ++k) {
        int j = alphabet[word[i]].j;
        if (j >= 0 && j == alphabet[word[k]].j && spec.in_parabolic(spec.multiply(v[i], spec.invert(v[k])), j))
          return;  // backtracks
      }
    for (int i : word)
      if (alphabet[i].j >= 0) best = std::max(best, alphabet[i].length);
  };
  for (int n = 2; n <= 3; ++n) {
    std::vector<int> word(n, 0);
    while (true) {
      check(word);
      int i = n - 1;
      while (i >= 0 && word[i] == a - 1) word[i--] = 0;
      if (i < 0) break;
      ++word[i];
    }
  }
  return best;
}

int certified_min_N(const GroupSpec& spec) {
  return std::max(min_N_quotient(GammaConfig{spec, 1}), min_N_short_loops(spec));
}

void validate_config(const GammaConfig& config) {
  if (config.N < 1) throw Error("N must be at least 1");
  if (config.N > 64) throw Error("N too large");
  if (!config.allow_small_N && config.N < min_N_quotient(config))
    throw Error("N below the quotient bound; pass the override to allow it");
}

std::vector<GammaVertex> neighbors(const GammaConfig& config, const GammaVertex& v) {
  const auto& spec = config.spec;
  std::vector<GammaVertex> out;
  switch (v.kind) {
    case VertexKind::Free:
      for (int x = 0; x < static_cast<int>(spec.x_letters().size()); ++x)
        out.push_back(GammaVertex::medial(spec, v.g, x));
      for (int j = 0; j < spec.factor_count(); ++j)
        out.push_back(GammaVertex::internal(spec, j, v.g, spec.project_parabolic(v.g, j)));
      break;
    case VertexKind::Medial:
      out.push_back(GammaVertex::free(v.g));
      out.push_back(GammaVertex::free(spec.multiply(spec.letter_element(v.x), v.g)));
      break;
    case VertexKind::Internal: {
      // the free vertex g' = h r of this coset with pi_j(g') = u
      const auto& f = spec.factor(v.j);
      auto h = f.multiply(v.u, f.inverse(spec.project_parabolic(v.g, v.j)));
      out.push_back(GammaVertex::free(spec.multiply(spec.parabolic(v.j, h), v.g)));
      for (auto& u : f.sphere_upto(v.u, config.N)) {
        GammaVertex w;
        w.kind = VertexKind::Internal;
        w.j = v.j;
        w.g = v.g;
        w.u = std::move(u);
        out.push_back(std::move(w));
      }
      break;
    }
  }
  return out;
}

EdgeKind edge_kind(const GammaVertex& a, const GammaVertex& b) {
  if (a.kind == VertexKind::Medial || b.kind == VertexKind::Medial) return EdgeKind::Free;
  if (a.kind == VertexKind::Internal && b.kind == VertexKind::Internal) return EdgeKind::Internal;
  return EdgeKind::Connecting;
}

int GammaWindow::find(const GammaVertex& v) const {
  auto it = index.find(v);
  return it == index.end() ? -1 : it->second;
}

GammaWindow build_window(const GammaConfig& config, int radius, std::size_t guard) {
  validate_config(config);
  if (radius < 0) throw Error("radius must be non-negative");
  GammaWindow w{config, radius, {}, {}, {}, {}};
  auto add = [&](GammaVertex v, int d) {
    auto [it, fresh] = w.index.emplace(v, static_cast<int>(w.vertices.size()));
    if (fresh) {
      if (w.vertices.size() >= guard) throw BoundExceeded("window exceeds the vertex guard");
      w.vertices.push_back(std::move(v));
      w.dist_from_base.push_back(d);
    }
    return it->second;
  };
  add(GammaVertex::free(config.spec.identity()), 0);
  std::vector<Edge> edges;
  for (std::size_t head = 0; head < w.vertices.size(); ++head) {
    const int d = w.dist_from_base[head];
    const auto nb = neighbors(config, w.vertices[head]);
    for (const auto& n : nb) {
      int id;
      if (d < radius) {
        id = add(n, d + 1);
      } else {
        id = w.find(n);
        if (id < 0) continue;
      }
      if (static_cast<int>(head) < id || d == radius) edges.emplace_back(static_cast<Vertex>(head), id);
    }
  }
  w.graph = Graph(static_cast<Vertex>(w.vertices.size()), edges);
  return w;
}

std::vector<int> window_distances(const GammaWindow& w, int u) { return bfs_distances(w.graph, u); }

WindowDistance window_distance(const GammaWindow& w, int u, int v) {
  if (!w.graph.valid(u) || !w.graph.valid(v)) throw Error("vertex not in window");
  WindowDistance out;
  out.distance = window_distances(w, u)[v];
  out.certified =
      out.distance >= 0 && std::min(w.dist_from_base[u], w.dist_from_base[v]) + out.distance <= w.radius;
  return out;
}

bool is_window_path(const GammaWindow& w, const GammaPath& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!w.graph.valid(p[i])) return false;
    if (i > 0 && !w.graph.adjacent(p[i - 1], p[i])) return false;
  }
  return true;
}

namespace {

// Maximal runs [s, e] of internal vertices in p.
std::vector<std::pair<int, int>> internal_runs(const GammaWindow& w, const GammaPath& p) {
  std::vector<std::pair<int, int>> runs;
  const int n = static_cast<int>(p.size());
  for (int i = 0; i < n;) {
    if (w.vertices[p[i]].kind != VertexKind::Internal) {
      ++i;
      continue;
    }
    int e = i;
    while (e + 1 < n && w.vertices[p[e + 1]].kind == VertexKind::Internal) ++e;
    runs.emplace_back(i, e);
    i = e + 1;
  }
  return runs;
}

}  // namespace

std::vector<Shortening> parabolic_shortenings(const GammaWindow& w, const GammaPath& p) {
  if (!is_window_path(w, p)) throw Error("not a path in the window");
  std::vector<Shortening> out;
  const int n_step = w.config.N;
  for (auto [s, e] : internal_runs(w, p)) {
    const auto& a = w.vertices[p[s]];
    const auto& b = w.vertices[p[e]];
    const int d = w.config.spec.factor(a.j).distance(a.u, b.u);
    const int copy = (d + n_step - 1) / n_step;
    if (e - s > copy) out.push_back({s, e, e - s, copy});
  }
  return out;
}

std::vector<Penetration> penetration_profile(const GammaWindow& w, const GammaPath& p) {
  if (!is_window_path(w, p)) throw Error("not a path in the window");
  std::vector<Penetration> out;
  for (auto [s, e] : internal_runs(w, p)) {
    const auto& a = w.vertices[p[s]];
    out.push_back({a.j, a.g, p[s], p[e]});
  }
  return out;
}

GeodesicSet geodesics_in_window(const GammaWindow& w, int u, int v, std::size_t cap) {
  auto wd = window_distance(w, u, v);
  if (!wd.certified) throw Error("window distance not certified; enlarge the window");
  const auto to_v = window_distances(w, v);
  GeodesicSet out;
  GammaPath cur{u};
  auto rec = [&](auto&& self, int x) -> bool {
    if (x == v) {
      if (out.paths.size() == cap) {
        out.truncated = true;
        return false;
      }
      out.paths.push_back(cur);
      return true;
    }
    for (Vertex y : w.graph.neighbors(x)) {
      if (to_v[y] != to_v[x] - 1) continue;
      cur.push_back(y);
      bool go_on = self(self, y);
      cur.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  rec(rec, u);
  return out;
}

GammaPath random_window_geodesic(const GammaWindow& w, int u, const std::vector<int>& dist_to_v,
                                 std::mt19937_64& rng) {
  if (dist_to_v[u] < 0) throw Error("target unreachable in window");
  GammaPath p{u};
  while (dist_to_v[p.back()] > 0) {
    std::vector<int> next;
    for (Vertex y : w.graph.neighbors(p.back()))
      if (dist_to_v[y] == dist_to_v[p.back()] - 1) next.push_back(y);
    p.push_back(next[uniform_below(rng, next.size())]);
  }
  return p;
}

WindowSummary summarize(const GammaWindow& w) {
  WindowSummary s;
  for (const auto& v : w.vertices) {
    if (v.kind == VertexKind::Free) ++s.free;
    if (v.kind == VertexKind::Medial) ++s.medial;
    if (v.kind == VertexKind::Internal) ++s.internal;
  }
  for (const auto& [a, b] : w.graph.edges()) {
    switch (edge_kind(w.vertices[a], w.vertices[b])) {
      case EdgeKind::Free: ++s.free_edges; break;
      case EdgeKind::Connecting: ++s.connecting_edges; break;
      case EdgeKind::Internal: ++s.internal_edges; break;
    }
  }
  return s;
}

std::string vertex_kind_name(VertexKind k) {
  switch (k) {
    case VertexKind::Free: return "free";
    case VertexKind::Medial: return "medial";
    case VertexKind::Internal: return "internal";
  }
  return "";
}

std::string format_vertex(const GroupSpec& spec, const GammaVertex& v) {
  switch (v.kind) {
    case VertexKind::Free: return spec.format(v.g);
    case VertexKind::Medial: return "[" + spec.format(v.g) + ", x" + std::to_string(v.x) + "]";
    case VertexKind::Internal:
      return "(H" + std::to_string(v.j) + " " + spec.format(v.g) + ", " + spec.factor(v.j).format(v.u) + ")";
  }
  return "";
}

nlohmann::ordered_json vertex_to_json(const GroupSpec& spec, const GammaVertex& v) {
  nlohmann::ordered_json j;
  j["kind"] = vertex_kind_name(v.kind);
  switch (v.kind) {
    case VertexKind::Free: j["g"] = spec.element_to_json(v.g); break;
    case VertexKind::Medial:
      j["g"] = spec.element_to_json(v.g);
      j["x"] = v.x;
      break;
    case VertexKind::Internal:
      j["j"] = v.j;
      j["coset"] = spec.element_to_json(v.g);
      j["u"] = v.u;
      break;
  }
  return j;
}

nlohmann::ordered_json window_to_json(const GammaWindow& w) {
  const auto& spec = w.config.spec;
  nlohmann::ordered_json j;
  j["schema"] = "hellyrel.gamma_window";
  j["version"] = 1;
  j["group"] = spec.to_json();
  j["N"] = w.config.N;
  j["N_override"] = w.config.allow_small_N;
  j["radius"] = w.radius;
  auto s = summarize(w);
  j["summary"] = {{"vertices", w.vertices.size()}, {"edges", w.graph.edge_count()},
                  {"free", s.free},            {"medial", s.medial},
                  {"internal", s.internal},    {"free_edges", s.free_edges},
                  {"connecting_edges", s.connecting_edges}, {"internal_edges", s.internal_edges}};
  auto verts = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < w.vertices.size(); ++i) {
    auto v = vertex_to_json(spec, w.vertices[i]);
    v["id"] = i;
    v["dist"] = w.dist_from_base[i];
    verts.push_back(std::move(v));
  }
  j["vertices"] = std::move(verts);
  auto edges = nlohmann::ordered_json::array();
  for (const auto& [a, b] : w.graph.edges()) edges.push_back({a, b});
  j["edges"] = std::move(edges);
  return j;
}

LabeledGraph window_labeled_graph(const GammaWindow& w) {
  LabeledGraph out{w.graph, {}};
  for (std::size_t i = 0; i < w.vertices.size(); ++i)
    out.labels[static_cast<Vertex>(i)] = format_vertex(w.config.spec, w.vertices[i]);
  return out;
}

}  // namespace hellyrel
