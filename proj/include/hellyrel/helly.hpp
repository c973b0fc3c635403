#pragma once

#include <optional>
#include <vector>

#include "hellyrel/graph.hpp"

namespace hellyrel {

// Integral radius function on all vertices.
using RadiusFunction = std::vector<int>;

// Ball family as (center, radius) pairs, sorted by center.
struct RadiusFamily {
  std::vector<std::pair<Vertex, int>> balls;

  bool operator==(const RadiusFamily&) const = default;
};

struct HellyOptions {
  Vertex max_vertices = 14;        // extremal-function enumeration guard
  Vertex pseudo_modular_max = 40;  // triple enumeration guard
};

// All integral extremal functions, sorted lexicographically. The search
// assigns vertices one at a time and keeps, for every unassigned u, a window
// [lo(u), hi(u)] implied by feasibility, 1-Lipschitz continuity, f <= ecc,
// and the fixed-point identity f(v) = max_u (d(u,v) - f(u)). A branch dies
// when a window empties or an assigned w > 0 has no remaining tight partner.
std::vector<RadiusFunction> extremal_functions(const Graph& g, const DistMatrix& d,
                                               const HellyOptions& opt = {});
std::vector<RadiusFunction> extremal_functions_serial(const Graph& g, const DistMatrix& d,
                                                      const HellyOptions& opt = {});

bool is_extremal(const DistMatrix& d, const RadiusFunction& f);

struct HellyCheck {
  bool is_helly = true;
  std::optional<RadiusFamily> witness;
};

HellyCheck is_helly(const Graph& g, const HellyOptions& opt = {});
HellyCheck is_helly(const Graph& g, const DistMatrix& d, const HellyOptions& opt = {});

// Independent check by enumerating ball families directly. max_centers < 0
// means no limit on the family size.
bool helly_oracle_bruteforce(const Graph& g, int max_centers = -1, Vertex max_vertices = 8);

int coarse_helly_constant(const Graph& g, const DistMatrix& d, const HellyOptions& opt = {});
int coarse_helly_constant_serial(const Graph& g, const DistMatrix& d, const HellyOptions& opt = {});
int coarse_helly_constant(const Graph& g, const HellyOptions& opt = {});

struct PseudoModularCheck {
  bool pseudo_modular = true;
  std::optional<RadiusFamily> witness;  // three balls in search order
};

PseudoModularCheck is_pseudo_modular(const Graph& g, const DistMatrix& d,
                                     const HellyOptions& opt = {});

int stable_interval_constant(const Graph& g, const DistMatrix& d);

struct Hellyfication {
  Graph graph;
  std::vector<Vertex> embedding;        // input vertex -> output vertex
  std::vector<RadiusFunction> points;   // output vertex -> extremal function
};

struct HellyficationOptions {
  HellyOptions input;
  HellyOptions output{64, 40};
  bool check_postconditions = true;
};

// Throws Error if a postcondition fails.
Hellyfication hellyfication(const Graph& g, const HellyficationOptions& opt = {});

struct HellyReport {
  bool is_helly = true;
  int xi = 0;
  bool pseudo_modular = true;
  int beta = 1;
  std::optional<RadiusFamily> witness;
  std::optional<RadiusFamily> pseudo_modular_witness;
};

HellyReport analyze_graph(const Graph& g, const HellyOptions& opt = {});

}  // namespace hellyrel
