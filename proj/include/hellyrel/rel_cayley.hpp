#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "hellyrel/graph.hpp"
#include "hellyrel/group.hpp"

namespace hellyrel {

// Letter of X u H: an X-letter (index into GroupSpec::x_letters) or a
// nontrivial element h of one factor.
struct RelLetter {
  int x = -1;
  int factor = -1;
  FactorElem h;

  static RelLetter x_letter(int x) { return {x, -1, {}}; }
  static RelLetter h_letter(int j, FactorElem h) { return {-1, j, std::move(h)}; }
  bool is_h() const { return x < 0; }
  auto operator<=>(const RelLetter&) const = default;
};

// Path in Cay(G, X u H) starting at `base`; letter y moves g to eps(y) g.
struct RelWord {
  GroupElement base;
  std::vector<RelLetter> letters;

  std::size_t size() const { return letters.size(); }
  bool operator==(const RelWord&) const = default;
};

GroupElement letter_value(const GroupSpec& spec, const RelLetter& y);
RelLetter inverse_letter(const GroupSpec& spec, const RelLetter& y);
void validate_word(const GroupSpec& spec, const RelWord& w);
// Vertices v_0 = base, ..., v_n.
std::vector<GroupElement> word_vertices(const GroupSpec& spec, const RelWord& w);
GroupElement word_end(const GroupSpec& spec, const RelWord& w);
// The path followed backwards.
RelWord reverse_word(const GroupSpec& spec, const RelWord& w);
std::string format_word(const GroupSpec& spec, const RelWord& w);

int d_x(const GroupSpec& spec, const GroupElement& g, const GroupElement& h);
int d_rel(const GroupSpec& spec, const GroupElement& g, const GroupElement& h);

// Maximal H_j-subword; letters start_index..end_index inclusive.
struct Component {
  int j = -1;
  int start_index = 0;
  int end_index = 0;
  GroupElement start_vertex;
  GroupElement end_vertex;
};

std::vector<Component> decompose_components(const GroupSpec& spec, const RelWord& w);
bool connected(const GroupSpec& spec, const Component& a, const Component& b);

struct WordAnalysis {
  std::vector<GroupElement> vertices;
  std::vector<Component> components;
  bool backtracks = false;
  bool vertex_backtracks = false;
  std::vector<int> isolated_components;  // indices into components
  std::vector<int> phase_vertices;       // indices into vertices
};

WordAnalysis analyze_word(const GroupSpec& spec, const RelWord& w);

bool is_rel_geodesic(const GroupSpec& spec, const RelWord& w);
bool is_rel_quasigeodesic(const GroupSpec& spec, const RelWord& w, const QGParams& q);
bool is_k_local_rel_geodesic(const GroupSpec& spec, const RelWord& w, int k);
bool k_similar(const GroupSpec& spec, const RelWord& p, const RelWord& q, int k);

// Geodesic word from `start` to `end` read off the normal form of
// end start^-1. With an rng, syllables that are generators are written as
// X-letters or H-letters at random.
RelWord normal_form_word(const GroupSpec& spec, const GroupElement& start, const GroupElement& end,
                         std::mt19937_64* rng = nullptr);

struct SamplerOptions {
  int radius = 6;        // relative radius of sampled endpoints
  int window = 2;        // x-length bound for sampled infinite-factor syllables
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  int k = 1;             // similarity constant for bigons
  bool quasi = false;    // perturb geodesics into quasigeodesics
  int detours = 2;       // maximum perturbations per word
  QGParams qg{Rational(2), Rational(2), 2};
};

// Random element with rel_length <= radius.
GroupElement random_rel_element(const GroupSpec& spec, std::mt19937_64& rng, int radius, int window);
RelWord sample_geodesic(const GroupSpec& spec, std::mt19937_64& rng, const GroupElement& start,
                        const GroupElement& end);
// Detours applied to a geodesic: splitting an H-letter, expanding a short
// H-letter into X-letters, inserting x iota(x). Not filtered.
RelWord perturb_word(const GroupSpec& spec, std::mt19937_64& rng, RelWord w, int detours, int window);

// Empirical maxima only; `estimate` is always true.
struct ConstantReport {
  std::string what;
  std::optional<int> epsilon_hat, nu_hat, mu_hat, zeta_hat, delta_hat;
  std::vector<std::pair<std::string, int>> clauses;  // per-clause maxima
  std::size_t requested = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  SamplerOptions params;
  bool estimate = true;
};

struct BigonDefects {
  int phase = 0;        // clause (i)
  int unmatched = 0;    // clause (ii): d_X across components with no partner
  int endpoints = 0;    // clause (iii)
  int max() const { return std::max({phase, unmatched, endpoints}); }
};

// Defects of the bounded coset penetration clauses for (p, q) in both orders.
BigonDefects bcp_defects(const GroupSpec& spec, const RelWord& p, const RelWord& q);

struct TriangleDefects {
  int phase = 0;       // (i)
  int unmatched = 0;   // (ii)
  int one_side = 0;    // (iii)
  int two_sides = 0;   // (iv)
  int max() const { return std::max({phase, unmatched, one_side, two_sides}); }
};

// Sides p: a -> b, q: b -> c, r: c -> a; all rotations and the reversed triangle.
TriangleDefects triangle_defects(const GroupSpec& spec, const RelWord& p, const RelWord& q, const RelWord& r);
// Max over sides u of min d_X from u to the other two sides.
int triangle_nu(const GroupSpec& spec, const RelWord& p, const RelWord& q, const RelWord& r);
// Same with the relative metric.
int triangle_slim(const GroupSpec& spec, const RelWord& p, const RelWord& q, const RelWord& r);
// Hausdorff distance in the relative metric between the vertex sets.
int rel_hausdorff(const GroupSpec& spec, const RelWord& p, const RelWord& q);

// Bigons: epsilon_hat, and zeta_hat when opt.quasi.
ConstantReport measure_bcp(const GroupSpec& spec, const SamplerOptions& opt);
ConstantReport measure_bcp_serial(const GroupSpec& spec, const SamplerOptions& opt);
// Triangles: nu_hat and delta_hat on geodesic triangles, mu_hat on
// perturbed triangles (geodesic ones when !opt.quasi).
ConstantReport measure_triangles(const GroupSpec& spec, const SamplerOptions& opt);
ConstantReport measure_triangles_serial(const GroupSpec& spec, const SamplerOptions& opt);

std::string format_rational(const Rational& r);
Rational parse_rational(const std::string& s);
nlohmann::ordered_json sampler_to_json(const SamplerOptions& opt);
nlohmann::ordered_json report_to_json(const GroupSpec& spec, const ConstantReport& rep);

}  // namespace hellyrel
