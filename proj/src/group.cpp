#include "hellyrel/group.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>

namespace hellyrel {

namespace {

void fail(const std::string& what) { throw Error(what); }

std::int64_t norm(const FactorElem& a, AbelianGenerators gens) {
  std::int64_t n = 0;
  for (auto x : a) n = gens == AbelianGenerators::Square ? n + std::abs(x) : std::max<std::int64_t>(n, std::abs(x));
  return n;
}

// All integer vectors of the given rank with coordinates in [-r, r].
std::vector<FactorElem> cube(int rank, std::int64_t r) {
  std::vector<FactorElem> out{FactorElem{}};
  for (int i = 0; i < rank; ++i) {
    std::vector<FactorElem> next;
    for (const auto& v : out)
      for (std::int64_t x = -r; x <= r; ++x) {
        auto w = v;
        w.push_back(x);
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

Factor Factor::cyclic(int order) {
  if (order < 2) fail("cyclic factor order must be at least 2");
  if (order > 100000) fail("cyclic factor order too large");
  std::vector<std::vector<int>> table(order, std::vector<int>(order));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) table[a][b] = (a + b) % order;
  Factor f = finite(std::move(table), {1});
  f.kind_ = FactorKind::Cyclic;
  return f;
}

Factor Factor::finite(std::vector<std::vector<int>> table, std::vector<int> generators) {
  const int n = static_cast<int>(table.size());
  if (n < 2) fail("finite factor needs at least 2 elements");
  if (n > 5000) fail("finite factor table too large");
  for (const auto& row : table)
    if (static_cast<int>(row.size()) != n) fail("multiplication table must be square");
  for (int a = 0; a < n; ++a) {
    if (table[0][a] != a || table[a][0] != a) fail("element 0 must be the identity");
    std::vector<char> seen_row(n, 0), seen_col(n, 0);
    for (int b = 0; b < n; ++b) {
      int x = table[a][b], y = table[b][a];
      if (x < 0 || x >= n || y < 0 || y >= n) fail("multiplication table entry out of range");
      if (seen_row[x]++ || seen_col[y]++) fail("multiplication table is not a Latin square");
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]]) fail("multiplication table is not associative");
  Factor f;
  f.kind_ = FactorKind::Finite;
  f.table_ = std::move(table);
  f.inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (f.table_[a][b] == 0) f.inverse_[a] = b;
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  f.generator_input_ = generators;
  std::set<int> gens;
  for (int s : generators) {
    if (s <= 0 || s >= n) fail("generator must be a non-identity element of the table");
    gens.insert(s);
    gens.insert(f.inverse_[s]);
  }
  for (int s : gens) f.generators_.push_back({s});
  // word lengths by BFS from the identity
  f.length_.assign(n, -1);
  f.length_[0] = 0;
  std::vector<int> queue{0};
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (int s : gens) {
      int w = f.table_[s][queue[h]];
      if (f.length_[w] < 0) {
        f.length_[w] = f.length_[queue[h]] + 1;
        queue.push_back(w);
      }
    }
  if (std::find(f.length_.begin(), f.length_.end(), -1) != f.length_.end())
    fail("generators do not generate the finite factor");
  return f;
}

Factor Factor::free_abelian(int rank, AbelianGenerators generators) {
  if (rank < 1 || rank > 4) fail("free abelian rank must be between 1 and 4");
  Factor f;
  f.kind_ = FactorKind::FreeAbelian;
  f.rank_ = rank;
  f.abelian_ = generators;
  for (auto& v : cube(rank, 1))
    if (norm(v, generators) == 1) f.generators_.push_back(v);
  std::sort(f.generators_.begin(), f.generators_.end());
  return f;
}

FactorElem Factor::identity() const {
  return is_finite() ? FactorElem{0} : FactorElem(rank_, 0);
}

bool Factor::is_identity(const FactorElem& a) const {
  return std::all_of(a.begin(), a.end(), [](std::int64_t x) { return x == 0; });
}

bool Factor::valid(const FactorElem& a) const {
  if (is_finite()) return a.size() == 1 && a[0] >= 0 && a[0] < static_cast<std::int64_t>(table_.size());
  return static_cast<int>(a.size()) == rank_;
}

FactorElem Factor::multiply(const FactorElem& a, const FactorElem& b) const {
  if (is_finite()) return {table_[a[0]][b[0]]};
  FactorElem c(rank_);
  for (int i = 0; i < rank_; ++i) c[i] = a[i] + b[i];
  return c;
}

FactorElem Factor::inverse(const FactorElem& a) const {
  if (is_finite()) return {inverse_[a[0]]};
  FactorElem c(rank_);
  for (int i = 0; i < rank_; ++i) c[i] = -a[i];
  return c;
}

int Factor::word_length(const FactorElem& a) const {
  if (is_finite()) return length_[a[0]];
  return static_cast<int>(norm(a, abelian_));
}

std::vector<FactorElem> Factor::ball(int radius) const {
  std::vector<FactorElem> out;
  if (is_finite()) {
    for (int a = 0; a < static_cast<int>(table_.size()); ++a)
      if (length_[a] <= radius) out.push_back({a});
    return out;
  }
  for (auto& v : cube(rank_, radius))
    if (norm(v, abelian_) <= radius) out.push_back(std::move(v));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FactorElem> Factor::sphere_upto(const FactorElem& u, int n_steps) const {
  std::vector<FactorElem> out;
  for (const auto& b : ball(n_steps))
    if (!is_identity(b)) out.push_back(multiply(b, u));
  std::sort(out.begin(), out.end());
  return out;
}

std::string Factor::format(const FactorElem& a) const {
  if (is_finite()) return std::to_string(a[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s + ")";
}

nlohmann::ordered_json Factor::to_json() const {
  nlohmann::ordered_json j;
  switch (kind_) {
    case FactorKind::Cyclic:
      j["kind"] = "cyclic";
      j["order"] = table_.size();
      break;
    case FactorKind::Finite:
      j["kind"] = "finite";
      j["table"] = table_;
      j["generators"] = generator_input_;
      break;
    case FactorKind::FreeAbelian:
      j["kind"] = "free_abelian";
      j["rank"] = rank_;
      j["generators"] = abelian_ == AbelianGenerators::King ? "king" : "square";
      break;
  }
  return j;
}

Factor Factor::from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "cyclic") return cyclic(j.at("order").get<int>());
    if (kind == "finite")
      return finite(j.at("table").get<std::vector<std::vector<int>>>(), j.at("generators").get<std::vector<int>>());
    if (kind == "free_abelian") {
      std::string gens = j.value("generators", std::string("king"));
      if (gens != "king" && gens != "square") fail("free_abelian generators must be king or square");
      return free_abelian(j.at("rank").get<int>(),
                          gens == "king" ? AbelianGenerators::King : AbelianGenerators::Square);
    }
    fail("unknown factor kind " + kind);
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("malformed factor spec: ") + e.what());
  }
  return cyclic(2);
}

std::size_t GroupElementHash::operator()(const GroupElement& g) const {
  std::size_t h = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t x) { h = (h ^ x) * 1099511628211ULL; };
  for (const auto& s : g.syllables) {
    mix(static_cast<std::uint64_t>(s.factor) + 0x9e37);
    for (auto v : s.value) mix(static_cast<std::uint64_t>(v));
    mix(0xabcdef);
  }
  return h;
}

GroupSpec::GroupSpec(std::vector<Factor> factors, int free_rank)
    : factors_(std::move(factors)), free_rank_(free_rank) {
  if (free_rank_ < 0) fail("free rank must be non-negative");
  if (factors_.empty() && free_rank_ == 0) fail("group needs at least one factor or free generator");
  for (int i = 0; i < free_rank_; ++i) {
    x_letters_.push_back({-1, {i + 1}});
    x_letters_.push_back({-1, {-(i + 1)}});
  }
  for (int j = 0; j < factor_count(); ++j)
    for (const auto& s : factors_[j].generators()) x_letters_.push_back({j, s});
  for (std::size_t x = 0; x < x_letters_.size(); ++x) {
    const auto& l = x_letters_[x];
    int inv = l.factor < 0 ? find_x_letter(-1, {-l.value[0]}) : find_x_letter(l.factor, factors_[l.factor].inverse(l.value));
    if (inv < 0) fail("generating set is not symmetric");
    iota_.push_back(inv);
  }
}

int GroupSpec::find_x_letter(int factor, const FactorElem& value) const {
  for (std::size_t x = 0; x < x_letters_.size(); ++x)
    if (x_letters_[x].factor == factor && x_letters_[x].value == value) return static_cast<int>(x);
  return -1;
}

GroupElement GroupSpec::letter_element(int x) const {
  const auto& l = x_letters_.at(x);
  return l.factor < 0 ? free_word(l.value) : parabolic(l.factor, l.value);
}

GroupElement GroupSpec::parabolic(int j, const FactorElem& h) const {
  if (j < 0 || j >= factor_count() || !factors_[j].valid(h)) fail("invalid parabolic element");
  GroupElement g;
  push(g, Syllable{j, h});
  return g;
}

GroupElement GroupSpec::free_word(const std::vector<std::int64_t>& codes) const {
  GroupElement g;
  for (auto c : codes) {
    if (c == 0 || std::abs(c) > free_rank_) fail("free letter out of range");
    push(g, Syllable{-1, {c}});
  }
  return g;
}

void GroupSpec::push(GroupElement& g, Syllable s) const {
  if (s.factor >= 0 ? factors_[s.factor].is_identity(s.value) : s.value.empty()) return;
  if (g.syllables.empty() || g.syllables.back().factor != s.factor) {
    g.syllables.push_back(std::move(s));
    return;
  }
  auto& back = g.syllables.back();
  if (s.factor >= 0) {
    back.value = factors_[s.factor].multiply(back.value, s.value);
    if (factors_[s.factor].is_identity(back.value)) g.syllables.pop_back();
    return;
  }
  for (auto c : s.value) {
    if (!back.value.empty() && back.value.back() == -c)
      back.value.pop_back();
    else
      back.value.push_back(c);
  }
  if (back.value.empty()) g.syllables.pop_back();
}

GroupElement GroupSpec::multiply(const GroupElement& a, const GroupElement& b) const {
  GroupElement out = a;
  for (const auto& s : b.syllables) push(out, s);
  return out;
}

GroupElement GroupSpec::invert(const GroupElement& g) const {
  GroupElement out;
  for (auto it = g.syllables.rbegin(); it != g.syllables.rend(); ++it) {
    Syllable s{it->factor, {}};
    if (s.factor >= 0) {
      s.value = factors_[s.factor].inverse(it->value);
    } else {
      for (auto c = it->value.rbegin(); c != it->value.rend(); ++c) s.value.push_back(-*c);
    }
    out.syllables.push_back(std::move(s));
  }
  return out;
}

FactorElem GroupSpec::project_parabolic(const GroupElement& g, int j) const {
  if (j < 0 || j >= factor_count()) fail("factor index out of range");
  FactorElem acc = factors_[j].identity();
  for (const auto& s : g.syllables)
    if (s.factor == j) acc = factors_[j].multiply(acc, s.value);
  return acc;
}

bool GroupSpec::in_parabolic(const GroupElement& g, int j) const {
  return g.syllables.empty() || (g.syllables.size() == 1 && g.syllables[0].factor == j);
}

int GroupSpec::rel_length(const GroupElement& g) const {
  int n = 0;
  for (const auto& s : g.syllables) n += s.factor >= 0 ? 1 : static_cast<int>(s.value.size());
  return n;
}

int GroupSpec::x_length(const GroupElement& g) const {
  int n = 0;
  for (const auto& s : g.syllables)
    n += s.factor >= 0 ? factors_[s.factor].word_length(s.value) : static_cast<int>(s.value.size());
  return n;
}

void GroupSpec::validate(const GroupElement& g) const {
  for (std::size_t i = 0; i < g.syllables.size(); ++i) {
    const auto& s = g.syllables[i];
    if (i > 0 && g.syllables[i - 1].factor == s.factor) fail("adjacent syllables share a factor");
    if (s.factor >= 0) {
      if (s.factor >= factor_count() || !factors_[s.factor].valid(s.value)) fail("invalid parabolic syllable");
      if (factors_[s.factor].is_identity(s.value)) fail("trivial parabolic syllable");
    } else {
      if (s.factor != -1 || s.value.empty()) fail("invalid free syllable");
      for (std::size_t k = 0; k < s.value.size(); ++k) {
        auto c = s.value[k];
        if (c == 0 || std::abs(c) > free_rank_) fail("free letter out of range");
        if (k > 0 && s.value[k - 1] == -c) fail("free word not reduced");
      }
    }
  }
}

std::vector<GroupElement> GroupSpec::enumerate_ball(int radius, Metric metric, int parabolic_window,
                                                    std::size_t guard) const {
  if (radius < 0) fail("radius must be non-negative");
  // candidate syllables per factor with their cost
  std::vector<std::vector<std::pair<FactorElem, int>>> options(factor_count());
  for (int j = 0; j < factor_count(); ++j) {
    const auto& f = factors_[j];
    const int reach = metric == Metric::Absolute ? radius : (f.is_finite() ? 1 << 20 : parabolic_window);
    std::vector<FactorElem> elems;
    if (f.is_finite()) {
      for (std::int64_t a = 1; a < static_cast<std::int64_t>(f.order()); ++a)
        if (f.word_length({a}) <= reach) elems.push_back({a});
    } else {
      for (auto& h : f.ball(reach))
        if (!f.is_identity(h)) elems.push_back(h);
    }
    for (auto& h : elems) options[j].emplace_back(h, metric == Metric::Absolute ? f.word_length(h) : 1);
  }
  std::vector<GroupElement> out;
  GroupElement cur;
  auto emit = [&] {
    if (out.size() >= guard) throw BoundExceeded("ball enumeration exceeded the explosion guard");
    out.push_back(cur);
  };
  auto rec = [&](auto&& self, int budget, int last) -> void {
    for (int j = 0; j < factor_count(); ++j) {
      if (j == last) continue;
      for (const auto& [h, cost] : options[j]) {
        if (cost > budget) continue;
        cur.syllables.push_back(Syllable{j, h});
        emit();
        self(self, budget - cost, j);
        cur.syllables.pop_back();
      }
    }
    if (last == -1 || free_rank_ == 0) return;
    // reduced free words, extended one letter at a time
    auto words = [&](auto&& wself, std::vector<std::int64_t>& w, int left) -> void {
      for (std::int64_t c = -free_rank_; c <= free_rank_; ++c) {
        if (c == 0 || (!w.empty() && w.back() == -c) || left < 1) continue;
        w.push_back(c);
        cur.syllables.push_back(Syllable{-1, w});
        emit();
        self(self, left - 1, -1);
        cur.syllables.pop_back();
        wself(wself, w, left - 1);
        w.pop_back();
      }
    };
    std::vector<std::int64_t> w;
    words(words, w, budget);
  };
  emit();
  rec(rec, radius, -2);
  std::sort(out.begin(), out.end());
  return out;
}

std::string GroupSpec::format(const GroupElement& g) const {
  if (g.syllables.empty()) return "1";
  std::string s;
  for (const auto& syl : g.syllables) {
    if (!s.empty()) s += " ";
    if (syl.factor >= 0) {
      s += "h" + std::to_string(syl.factor) + ":" + factors_[syl.factor].format(syl.value);
    } else {
      for (std::size_t k = 0; k < syl.value.size(); ++k) {
        auto c = syl.value[k];
        s += (k ? " " : "") + std::string(c > 0 ? "t" : "T") + std::to_string(std::abs(c));
      }
    }
  }
  return s;
}

nlohmann::ordered_json GroupSpec::element_to_json(const GroupElement& g) const {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& s : g.syllables) {
    nlohmann::ordered_json js;
    js["factor"] = s.factor;
    js["value"] = s.value;
    arr.push_back(js);
  }
  return arr;
}

GroupElement GroupSpec::element_from_json(const nlohmann::json& j) const {
  GroupElement g;
  try {
    for (const auto& js : j)
      g.syllables.push_back(Syllable{js.at("factor").get<int>(), js.at("value").get<std::vector<std::int64_t>>()});
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("malformed group element: ") + e.what());
  }
  validate(g);
  return g;
}

nlohmann::ordered_json GroupSpec::to_json() const {
  nlohmann::ordered_json j;
  auto fs = nlohmann::ordered_json::array();
  for (const auto& f : factors_) fs.push_back(f.to_json());
  j["factors"] = fs;
  j["free_rank"] = free_rank_;
  return j;
}

GroupSpec GroupSpec::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("factors")) fail("group spec needs \"factors\"");
  std::vector<Factor> factors;
  for (const auto& f : j.at("factors")) factors.push_back(Factor::from_json(f));
  int free_rank = 0;
  try {
    free_rank = j.value("free_rank", 0);
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("malformed free_rank: ") + e.what());
  }
  return GroupSpec(std::move(factors), free_rank);
}

GroupSpec GroupSpec::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("malformed group spec JSON: ") + e.what());
  }
  return from_json(j);
}

}  // namespace hellyrel
