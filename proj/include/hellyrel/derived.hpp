#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hellyrel/gamma.hpp"
#include "hellyrel/rel_cayley.hpp"

namespace hellyrel {

// Shortest path from v to a free vertex; ties go to the least window id.
GammaPath z_path(const GammaWindow& w, int v);

struct DerivedSegment {
  GammaPath source;                 // P_i
  std::optional<RelLetter> letter;  // empty when the endpoints coincide
};

struct DerivedResult {
  RelWord word;
  std::vector<DerivedSegment> segments;
  bool extended_first = false;
  bool extended_last = false;
};

DerivedResult derive(const GammaWindow& w, const GammaPath& p);

struct DeriveOptions {
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  bool local = false;    // sample 5-local geodesic walks instead of geodesics
  int walk_length = 12;  // for local walks
  int attempts = 64;     // endpoint draws per sample before it is rejected
};

struct DerivationReport {
  std::size_t requested = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;                 // no certified endpoints found
  std::size_t excluded_by_shortenings = 0;
  std::size_t two_local_violations = 0;     // length-2 subwords not rel-geodesic
  std::size_t endpoint_mismatches = 0;
  std::size_t length_violations = 0;        // |P^| < d_{X u H}
  std::size_t vertex_backtracking = 0;      // recorded, not asserted
  std::size_t max_derived_length = 0;
  Rational lambda_hat{1};                   // max |P^| / d over d > 0
  int c_hat = 0;                            // max |P^| - d
  DeriveOptions params;

  std::size_t violations() const { return two_local_violations + endpoint_mismatches + length_violations; }
};

DerivationReport verify_derivation_theorems(const GammaWindow& w, const DeriveOptions& opt);
DerivationReport verify_derivation_theorems_serial(const GammaWindow& w, const DeriveOptions& opt);

// Closed paths at the base realising closed words of length <= 3 over
// X and the H-letters of x-length <= h_length, with copy segments geodesic.
struct ShortLoopCheck {
  std::size_t loops = 0;
  std::size_t isolated = 0;    // isolated single-letter components examined
  std::size_t violations = 0;  // isolated components with |P_i| > 3
  std::vector<std::string> witnesses;
};

ShortLoopCheck check_short_loops(const GammaWindow& w, int h_length = 2);

nlohmann::ordered_json derived_to_json(const GammaWindow& w, const DerivedResult& r);
nlohmann::ordered_json derivation_report_to_json(const GammaWindow& w, const DerivationReport& r);

}  // namespace hellyrel
