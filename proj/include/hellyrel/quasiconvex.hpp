#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hellyrel/graph.hpp"
#include "hellyrel/helly.hpp"

namespace hellyrel {

struct OrbitSpec {
  Graph ambient;
  VertexSet W;  // sorted, nonempty
  int k = 1;

  void validate() const;
};

struct QuasiconvexityOptions {
  std::size_t cap = 1'000'000;  // DFS nodes per start vertex
  bool fast_path = true;        // closed form for lambda = 1
};

// Least k with every enumerated (lambda, c)-quasigeodesic between points of
// W inside the k-neighbourhood of W. `k` is exact unless `capped`; `k_upper`
// bounds it from the vertices y with d(w, y) + d(y, w') <= lambda d(w, w') + c.
struct Quasiconvexity {
  int k = 0;
  int k_upper = 0;
  bool capped = false;
  std::size_t explored = 0;
  std::size_t cap = 0;

  bool exact() const { return !capped || k == k_upper; }
  int certified_bound() const { return exact() ? k : k_upper; }
};

Quasiconvexity quasiconvexity_k(const Graph& g, const DistMatrix& d, const VertexSet& W, const QGParams& q,
                                const QuasiconvexityOptions& opt = {});
Quasiconvexity quasiconvexity_k_serial(const Graph& g, const DistMatrix& d, const VertexSet& W, const QGParams& q,
                                       const QuasiconvexityOptions& opt = {});
Quasiconvexity quasiconvexity_k(const Graph& g, const VertexSet& W, const QGParams& q,
                                const QuasiconvexityOptions& opt = {});

// Full subgraph of Gamma_k on the vertices within k of W.
struct Delta {
  Graph gamma_k;
  Subgraph delta;  // delta.to_parent embeds it in gamma_k
};

Delta build_delta(const OrbitSpec& spec);

enum class LemmaStatus { Verified, Violated, Skipped };

struct LemmaCheck {
  LemmaStatus status = LemmaStatus::Skipped;
  std::string reason;  // why skipped
  int measured = 0;
  int bound = 0;
};

struct OrbitLemmaOptions {
  QuasiconvexityOptions qc;
  HellyOptions helly{20, 40};
};

struct OrbitLemmaReport {
  int n = 0;
  std::size_t orbit_size = 0;
  int k = 1;
  int xi = 0;           // claimed
  int xi_measured = -1; // -1 when the ambient is too large to measure
  bool pseudo_modular = false;
  Quasiconvexity qc_coarse;     // (1, 2 xi)
  Quasiconvexity qc_isometric;  // (5, 0); untouched unless pseudo-modular
  std::size_t delta_vertices = 0;
  LemmaCheck coarse_helly;
  LemmaCheck isometric;

  std::size_t violations() const {
    return (coarse_helly.status == LemmaStatus::Violated) + (isometric.status == LemmaStatus::Violated);
  }
};

OrbitLemmaReport verify_orbit_lemmas(const OrbitSpec& spec, int xi_ambient, const OrbitLemmaOptions& opt = {});

std::string lemma_status_name(LemmaStatus s);
nlohmann::ordered_json quasiconvexity_to_json(const Quasiconvexity& q);
nlohmann::ordered_json orbit_lemmas_to_json(const OrbitLemmaReport& r);

}  // namespace hellyrel
