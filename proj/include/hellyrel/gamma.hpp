#pragma once

#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "hellyrel/graph.hpp"
#include "hellyrel/graph_io.hpp"
#include "hellyrel/group.hpp"

namespace hellyrel {

enum class VertexKind { Free, Medial, Internal };
enum class EdgeKind { Free, Connecting, Internal };

// Vertex of Gamma(N).
//   Free:     g
//   Medial:   the class {(g, x), (eps(x) g, iota(x))}, stored as its least pair
//   Internal: (H_j g, u) with g the coset representative and u in H_j
struct GammaVertex {
  VertexKind kind = VertexKind::Free;
  GroupElement g;
  int x = -1;
  int j = -1;
  FactorElem u;

  static GammaVertex free(GroupElement g);
  static GammaVertex medial(const GroupSpec& spec, const GroupElement& g, int x);
  static GammaVertex internal(const GroupSpec& spec, int j, const GroupElement& g, FactorElem u);
  auto operator<=>(const GammaVertex&) const = default;
};

struct GammaVertexHash {
  std::size_t operator()(const GammaVertex& v) const;
};

// Representative of H_j g: g with a leading j-syllable removed.
GroupElement coset_representative(const GroupElement& g, int j);

// Parabolic models are the Cayley graphs of the factors with basepoint the
// identity, so every action is simply transitive.
struct GammaConfig {
  GroupSpec spec;
  int N = 1;
  bool allow_small_N = false;  // accept N below the computed lower bound
};

// Least N with every vertex of the quotient graph within N of `base`.
int quotient_radius(const Graph& quotient, Vertex base);
// Assumption on the quotient: 1 for simply transitive models.
int min_N_quotient(const GammaConfig& config);
// Least N such that every H-letter h of a non-backtracking cyclic word of
// length <= 3 with single-letter components has d(v_j, v_j h) <= N.
int min_N_short_loops(const GroupSpec& spec);
// max of the two bounds above.
int certified_min_N(const GroupSpec& spec);
// Throws unless N passes the quotient bound or the override is set.
void validate_config(const GammaConfig& config);

std::vector<GammaVertex> neighbors(const GammaConfig& config, const GammaVertex& v);
EdgeKind edge_kind(const GammaVertex& a, const GammaVertex& b);

struct GammaWindow {
  GammaConfig config;
  int radius = 0;
  std::vector<GammaVertex> vertices;  // BFS order from the base
  std::vector<int> dist_from_base;
  Graph graph;                        // full subgraph on the window vertices
  std::unordered_map<GammaVertex, int, GammaVertexHash> index;

  int find(const GammaVertex& v) const;  // -1 if absent
  int base() const { return 0; }
};

GammaWindow build_window(const GammaConfig& config, int radius, std::size_t guard = 2'000'000);

struct WindowDistance {
  int distance = -1;
  bool certified = false;
};

WindowDistance window_distance(const GammaWindow& w, int u, int v);
// Window BFS distances from u (-1 when unreachable).
std::vector<int> window_distances(const GammaWindow& w, int u);

using GammaPath = std::vector<int>;  // indices into the window

bool is_window_path(const GammaWindow& w, const GammaPath& p);

struct Shortening {
  int start = 0;  // positions in the path
  int end = 0;
  int length = 0;
  int copy_distance = 0;
};

// Maximal all-internal subpaths longer than their copy distance.
std::vector<Shortening> parabolic_shortenings(const GammaWindow& w, const GammaPath& p);

struct Penetration {
  int j = -1;
  GroupElement coset;
  int enter = 0;  // window vertex ids
  int leave = 0;
};

std::vector<Penetration> penetration_profile(const GammaWindow& w, const GammaPath& p);

struct GeodesicSet {
  std::vector<GammaPath> paths;
  bool truncated = false;
};

// Geodesics u -> v inside the window; requires a certified distance.
GeodesicSet geodesics_in_window(const GammaWindow& w, int u, int v, std::size_t cap = 10000);
// Uniformly random neighbour steps along a geodesic towards v.
GammaPath random_window_geodesic(const GammaWindow& w, int u, const std::vector<int>& dist_to_v,
                                 std::mt19937_64& rng);

struct WindowSummary {
  std::size_t free = 0, medial = 0, internal = 0;
  std::size_t free_edges = 0, connecting_edges = 0, internal_edges = 0;
};

WindowSummary summarize(const GammaWindow& w);

std::string vertex_kind_name(VertexKind k);
std::string format_vertex(const GroupSpec& spec, const GammaVertex& v);
nlohmann::ordered_json vertex_to_json(const GroupSpec& spec, const GammaVertex& v);
nlohmann::ordered_json window_to_json(const GammaWindow& w);
LabeledGraph window_labeled_graph(const GammaWindow& w);

}  // namespace hellyrel
