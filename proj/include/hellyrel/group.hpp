#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hellyrel/graph.hpp"

namespace hellyrel {

// Element of one factor: {index} for finite factors, coordinates for Z^n.
using FactorElem = std::vector<std::int64_t>;

enum class FactorKind { Cyclic, Finite, FreeAbelian };
enum class AbelianGenerators { Square, King };

// One free factor H_j together with its generating set and the graph model
// Gamma_j: the Cayley graph with basepoint at the identity and H_j acting by
// right multiplication, so d(u, w) = |w u^-1|.
class Factor {
 public:
  static Factor cyclic(int order);
  // table[a][b] = a*b with identity 0; inverses of generators are added.
  static Factor finite(std::vector<std::vector<int>> table, std::vector<int> generators);
  static Factor free_abelian(int rank, AbelianGenerators generators);

  FactorKind kind() const { return kind_; }
  bool is_finite() const { return kind_ != FactorKind::FreeAbelian; }
  std::size_t order() const { return table_.size(); }  // 0 when infinite
  int rank() const { return rank_; }
  AbelianGenerators abelian_generators() const { return abelian_; }

  FactorElem identity() const;
  bool is_identity(const FactorElem& a) const;
  bool valid(const FactorElem& a) const;
  FactorElem multiply(const FactorElem& a, const FactorElem& b) const;
  FactorElem inverse(const FactorElem& a) const;
  int word_length(const FactorElem& a) const;
  int distance(const FactorElem& u, const FactorElem& w) const {
    return word_length(multiply(w, inverse(u)));
  }
  // Symmetric, identity-free, sorted.
  const std::vector<FactorElem>& generators() const { return generators_; }
  // Elements of word length <= radius, sorted.
  std::vector<FactorElem> ball(int radius) const;
  // Neighbours of u in Gamma_j at distance 1..n_steps (n_steps >= 1), sorted.
  std::vector<FactorElem> sphere_upto(const FactorElem& u, int n_steps) const;

  std::string format(const FactorElem& a) const;
  nlohmann::ordered_json to_json() const;
  static Factor from_json(const nlohmann::json& j);

  bool operator==(const Factor&) const = default;

 private:
  FactorKind kind_ = FactorKind::Cyclic;
  int rank_ = 0;
  AbelianGenerators abelian_ = AbelianGenerators::King;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::vector<int> length_;
  std::vector<FactorElem> generators_;
  std::vector<int> generator_input_;  // generators as given, for serialisation
};

// Syllable of a free-product normal form. factor < 0 marks a reduced free
// word whose letters are codes +-(i+1).
struct Syllable {
  int factor = -1;
  std::vector<std::int64_t> value;

  auto operator<=>(const Syllable&) const = default;
};

struct GroupElement {
  std::vector<Syllable> syllables;  // empty = identity

  bool is_identity() const { return syllables.empty(); }
  auto operator<=>(const GroupElement&) const = default;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const;
};

// Letter of X: a free generator (factor < 0, value {+-(i+1)}) or a generator
// of one factor.
struct XLetter {
  int factor = -1;
  FactorElem value;

  auto operator<=>(const XLetter&) const = default;
};

enum class Metric { Relative, Absolute };

class GroupSpec {
 public:
  GroupSpec(std::vector<Factor> factors, int free_rank);

  const std::vector<Factor>& factors() const { return factors_; }
  const Factor& factor(int j) const { return factors_.at(j); }
  int factor_count() const { return static_cast<int>(factors_.size()); }
  int free_rank() const { return free_rank_; }

  // X = free letters then factor generators; iota(x) is the inverse letter.
  const std::vector<XLetter>& x_letters() const { return x_letters_; }
  int iota(int x) const { return iota_[x]; }
  GroupElement letter_element(int x) const;
  int find_x_letter(int factor, const FactorElem& value) const;  // -1 if absent

  GroupElement identity() const { return {}; }
  GroupElement parabolic(int j, const FactorElem& h) const;
  GroupElement free_word(const std::vector<std::int64_t>& codes) const;

  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement invert(const GroupElement& g) const;
  FactorElem project_parabolic(const GroupElement& g, int j) const;
  bool in_parabolic(const GroupElement& g, int j) const;
  int rel_length(const GroupElement& g) const;
  int x_length(const GroupElement& g) const;
  // Throws if g is not a normal form for this spec.
  void validate(const GroupElement& g) const;

  // All elements of length <= radius. For the relative metric, parabolic
  // syllables of infinite factors are limited to x-length <= parabolic_window.
  std::vector<GroupElement> enumerate_ball(int radius, Metric metric, int parabolic_window = 2,
                                           std::size_t guard = 1'000'000) const;

  std::string format(const GroupElement& g) const;
  nlohmann::ordered_json element_to_json(const GroupElement& g) const;
  GroupElement element_from_json(const nlohmann::json& j) const;

  nlohmann::ordered_json to_json() const;
  static GroupSpec from_json(const nlohmann::json& j);
  static GroupSpec load(const std::string& path);

  bool operator==(const GroupSpec& o) const {
    return factors_ == o.factors_ && free_rank_ == o.free_rank_;
  }

 private:
  void push(GroupElement& g, Syllable s) const;

  std::vector<Factor> factors_;
  int free_rank_ = 0;
  std::vector<XLetter> x_letters_;
  std::vector<int> iota_;
};

}  // namespace hellyrel
