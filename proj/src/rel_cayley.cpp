#include "hellyrel/rel_cayley.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "hellyrel/rng.hpp"
#include "parallel.hpp"

namespace hellyrel {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

// Nontrivial elements a sampler may use as one syllable of factor j.
std::vector<FactorElem> syllable_candidates(const Factor& f, int window) {
  std::vector<FactorElem> out;
  if (f.is_finite()) {
    for (std::int64_t a = 1; a < static_cast<std::int64_t>(f.order()); ++a) out.push_back({a});
  } else {
    for (auto& h : f.ball(window))
      if (!f.is_identity(h)) out.push_back(std::move(h));
  }
  return out;
}

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
  return v[uniform_below(rng, v.size())];
}

}  // namespace

GroupElement letter_value(const GroupSpec& spec, const RelLetter& y) {
  return y.is_h() ? spec.parabolic(y.factor, y.h) : spec.letter_element(y.x);
}

RelLetter inverse_letter(const GroupSpec& spec, const RelLetter& y) {
  if (!y.is_h()) return RelLetter::x_letter(spec.iota(y.x));
  return RelLetter::h_letter(y.factor, spec.factor(y.factor).inverse(y.h));
}

void validate_word(const GroupSpec& spec, const RelWord& w) {
  spec.validate(w.base);
  for (const auto& y : w.letters) {
    if (!y.is_h()) {
      if (y.x >= static_cast<int>(spec.x_letters().size())) throw Error("X-letter out of range");
      continue;
    }
    if (y.factor < 0 || y.factor >= spec.factor_count()) throw Error("H-letter factor out of range");
    const auto& f = spec.factor(y.factor);
    if (!f.valid(y.h) || f.is_identity(y.h)) throw Error("H-letter must be a nontrivial factor element");
  }
}

std::vector<GroupElement> word_vertices(const GroupSpec& spec, const RelWord& w) {
  std::vector<GroupElement> v{w.base};
  v.reserve(w.letters.size() + 1);
  for (const auto& y : w.letters) v.push_back(spec.multiply(letter_value(spec, y), v.back()));
  return v;
}

GroupElement word_end(const GroupSpec& spec, const RelWord& w) {
  GroupElement g = w.base;
  for (const auto& y : w.letters) g = spec.multiply(letter_value(spec, y), g);
  return g;
}

RelWord reverse_word(const GroupSpec& spec, const RelWord& w) {
  RelWord out{word_end(spec, w), {}};
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back(inverse_letter(spec, *it));
  return out;
}

std::string format_word(const GroupSpec& spec, const RelWord& w) {
  if (w.letters.empty()) return "(empty)";
  std::string s;
  for (const auto& y : w.letters) {
    if (!s.empty()) s += " ";
    if (y.is_h()) {
      s += "h" + std::to_string(y.factor) + ":" + spec.factor(y.factor).format(y.h);
      continue;
    }
    const auto& l = spec.x_letters()[y.x];
    if (l.factor < 0)
      s += (l.value[0] > 0 ? "t" : "T") + std::to_string(std::abs(l.value[0]));
    else
      s += "x" + std::to_string(l.factor) + ":" + spec.factor(l.factor).format(l.value);
  }
  return s;
}

int d_x(const GroupSpec& spec, const GroupElement& g, const GroupElement& h) {
  return spec.x_length(spec.multiply(h, spec.invert(g)));
}

int d_rel(const GroupSpec& spec, const GroupElement& g, const GroupElement& h) {
  return spec.rel_length(spec.multiply(h, spec.invert(g)));
}

std::vector<Component> decompose_components(const GroupSpec& spec, const RelWord& w) {
  auto v = word_vertices(spec, w);
  std::vector<Component> out;
  const int n = static_cast<int>(w.letters.size());
  for (int i = 0; i < n;) {
    if (!w.letters[i].is_h()) {
      ++i;
      continue;
    }
    int j = w.letters[i].factor, e = i;
    while (e + 1 < n && w.letters[e + 1].is_h() && w.letters[e + 1].factor == j) ++e;
    out.push_back({j, i, e, v[i], v[e + 1]});
    i = e + 1;
  }
  return out;
}

bool connected(const GroupSpec& spec, const Component& a, const Component& b) {
  return a.j == b.j && spec.in_parabolic(spec.multiply(a.start_vertex, spec.invert(b.start_vertex)), a.j);
}

WordAnalysis analyze_word(const GroupSpec& spec, const RelWord& w) {
  WordAnalysis out;
  out.vertices = word_vertices(spec, w);
  out.components = decompose_components(spec, w);
  const int nc = static_cast<int>(out.components.size());
  std::vector<char> isolated(nc, 1);
  for (int a = 0; a < nc; ++a)
    for (int b = a + 1; b < nc; ++b)
      if (connected(spec, out.components[a], out.components[b])) isolated[a] = isolated[b] = 0;
  for (int a = 0; a < nc; ++a)
    if (isolated[a])
      out.isolated_components.push_back(a);
    else
      out.backtracks = true;
  const int n = static_cast<int>(w.letters.size());
  for (int i = 0; i < n && !out.vertex_backtracks; ++i) {
    const auto inv = spec.invert(out.vertices[i]);
    for (int e = i + 2; e <= n && !out.vertex_backtracks; ++e) {
      auto g = spec.multiply(out.vertices[e], inv);
      if (g.syllables.size() <= 1 && (g.is_identity() || g.syllables[0].factor >= 0)) out.vertex_backtracks = true;
    }
  }
  std::vector<char> interior(n + 1, 0);
  for (const auto& c : out.components)
    for (int i = c.start_index + 1; i <= c.end_index; ++i) interior[i] = 1;
  for (int i = 0; i <= n; ++i)
    if (!interior[i]) out.phase_vertices.push_back(i);
  return out;
}

bool is_rel_geodesic(const GroupSpec& spec, const RelWord& w) {
  return static_cast<int>(w.letters.size()) == d_rel(spec, w.base, word_end(spec, w));
}

bool is_rel_quasigeodesic(const GroupSpec& spec, const RelWord& w, const QGParams& q) {
  q.validate();
  auto v = word_vertices(spec, w);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t e = i + 1; e < v.size(); ++e)
      if (Rational(static_cast<std::int64_t>(e - i)) > q.lambda * d_rel(spec, v[i], v[e]) + q.c) return false;
  return true;
}

bool is_k_local_rel_geodesic(const GroupSpec& spec, const RelWord& w, int k) {
  auto v = word_vertices(spec, w);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t e = i + 1; e < v.size() && static_cast<int>(e - i) <= k; ++e)
      if (d_rel(spec, v[i], v[e]) != static_cast<int>(e - i)) return false;
  return true;
}

bool k_similar(const GroupSpec& spec, const RelWord& p, const RelWord& q, int k) {
  return d_x(spec, p.base, q.base) <= k && d_x(spec, word_end(spec, p), word_end(spec, q)) <= k;
}

RelWord normal_form_word(const GroupSpec& spec, const GroupElement& start, const GroupElement& end,
                         std::mt19937_64* rng) {
  RelWord w{start, {}};
  const auto e = spec.multiply(end, spec.invert(start));
  for (auto it = e.syllables.rbegin(); it != e.syllables.rend(); ++it) {
    if (it->factor < 0) {
      for (auto c = it->value.rbegin(); c != it->value.rend(); ++c)
        w.letters.push_back(RelLetter::x_letter(spec.find_x_letter(-1, {*c})));
      continue;
    }
    int x = spec.find_x_letter(it->factor, it->value);
    if (x >= 0 && rng && uniform_below(*rng, 2) == 0)
      w.letters.push_back(RelLetter::x_letter(x));
    else
      w.letters.push_back(RelLetter::h_letter(it->factor, it->value));
  }
  return w;
}

GroupElement random_rel_element(const GroupSpec& spec, std::mt19937_64& rng, int radius, int window) {
  std::vector<std::vector<FactorElem>> cand(spec.factor_count());
  for (int j = 0; j < spec.factor_count(); ++j) cand[j] = syllable_candidates(spec.factor(j), window);
  const int target = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(radius) + 1));
  GroupElement g;
  for (int len = 0; len < target; ++len) {
    const int last = g.syllables.empty() ? -2 : g.syllables.back().factor;
    std::vector<int> kinds;  // factor index, or -1 for a free letter
    for (int j = 0; j < spec.factor_count(); ++j)
      if (j != last) kinds.push_back(j);
    if (spec.free_rank() > 0) kinds.push_back(-1);
    if (kinds.empty()) break;
    const int kind = pick(rng, kinds);
    if (kind >= 0) {
      g = spec.multiply(g, spec.parabolic(kind, pick(rng, cand[kind])));
      continue;
    }
    std::vector<std::int64_t> codes;
    for (std::int64_t c = -spec.free_rank(); c <= spec.free_rank(); ++c)
      if (c != 0 && !(last == -1 && g.syllables.back().value.back() == -c)) codes.push_back(c);
    g = spec.multiply(g, spec.free_word({pick(rng, codes)}));
  }
  return g;
}

RelWord sample_geodesic(const GroupSpec& spec, std::mt19937_64& rng, const GroupElement& start,
                        const GroupElement& end) {
  return normal_form_word(spec, start, end, &rng);
}

RelWord perturb_word(const GroupSpec& spec, std::mt19937_64& rng, RelWord w, int detours, int window) {
  const int ops = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(std::max(detours, 0)) + 1));
  for (int op = 0; op < ops; ++op) {
    std::vector<int> h_pos, short_pos;
    for (int i = 0; i < static_cast<int>(w.letters.size()); ++i)
      if (w.letters[i].is_h()) {
        h_pos.push_back(i);
        if (spec.factor(w.letters[i].factor).word_length(w.letters[i].h) <= 3) short_pos.push_back(i);
      }
    const auto kind = uniform_below(rng, 3);
    if (kind == 0 && !h_pos.empty()) {
      // split h into h1 then h h1^-1
      int i = pick(rng, h_pos);
      const auto& f = spec.factor(w.letters[i].factor);
      auto h1 = pick(rng, syllable_candidates(f, window));
      auto h2 = f.multiply(w.letters[i].h, f.inverse(h1));
      if (f.is_identity(h2)) continue;
      int j = w.letters[i].factor;
      w.letters[i] = RelLetter::h_letter(j, h1);
      w.letters.insert(w.letters.begin() + i + 1, RelLetter::h_letter(j, h2));
    } else if (kind == 1 && !short_pos.empty()) {
      // spell h as a geodesic word over the factor's generators
      int i = pick(rng, short_pos);
      const int j = w.letters[i].factor;
      const auto& f = spec.factor(j);
      FactorElem rest = w.letters[i].h;
      std::vector<RelLetter> spelled;
      while (!f.is_identity(rest)) {
        std::vector<FactorElem> steps;
        for (const auto& s : f.generators())
          if (f.word_length(f.multiply(f.inverse(s), rest)) == f.word_length(rest) - 1) steps.push_back(s);
        const auto& s = pick(rng, steps);
        spelled.push_back(RelLetter::x_letter(spec.find_x_letter(j, s)));
        rest = f.multiply(f.inverse(s), rest);
      }
      std::reverse(spelled.begin(), spelled.end());
      w.letters.erase(w.letters.begin() + i);
      w.letters.insert(w.letters.begin() + i, spelled.begin(), spelled.end());
    } else {
      const int x = static_cast<int>(uniform_below(rng, spec.x_letters().size()));
      const auto at = uniform_below(rng, w.letters.size() + 1);
      w.letters.insert(w.letters.begin() + static_cast<std::ptrdiff_t>(at),
                       {RelLetter::x_letter(x), RelLetter::x_letter(spec.iota(x))});
    }
  }
  return w;
}

namespace {

int min_dx(const GroupSpec& spec, const GroupElement& u, const std::vector<const GroupElement*>& targets) {
  int best = kInf;
  for (const auto* v : targets) best = std::min(best, d_x(spec, u, *v));
  return best;
}

std::vector<const GroupElement*> phase_points(const WordAnalysis& a) {
  std::vector<const GroupElement*> out;
  for (int i : a.phase_vertices) out.push_back(&a.vertices[i]);
  return out;
}

// Clauses with q as the path whose features must be matched in p.
void bcp_one_way(const GroupSpec& spec, const WordAnalysis& p, const WordAnalysis& q, BigonDefects& out) {
  auto targets = phase_points(p);
  for (int i : q.phase_vertices) out.phase = std::max(out.phase, min_dx(spec, q.vertices[i], targets));
  for (const auto& qc : q.components) {
    bool matched = false;
    for (const auto& pc : p.components)
      if (connected(spec, pc, qc)) {
        matched = true;
        out.endpoints = std::max({out.endpoints, d_x(spec, pc.start_vertex, qc.start_vertex),
                                  d_x(spec, pc.end_vertex, qc.end_vertex)});
      }
    if (!matched) out.unmatched = std::max(out.unmatched, d_x(spec, qc.start_vertex, qc.end_vertex));
  }
}

// Clauses with r as the side whose features must be matched in p or q.
void triangle_one(const GroupSpec& spec, const WordAnalysis& p, const WordAnalysis& q, const WordAnalysis& r,
                  TriangleDefects& out) {
  auto targets = phase_points(p);
  auto more = phase_points(q);
  targets.insert(targets.end(), more.begin(), more.end());
  for (int i : r.phase_vertices) out.phase = std::max(out.phase, min_dx(spec, r.vertices[i], targets));
  for (const auto& rc : r.components) {
    std::vector<const Component*> in_p, in_q;
    for (const auto& pc : p.components)
      if (connected(spec, pc, rc)) in_p.push_back(&pc);
    for (const auto& qc : q.components)
      if (connected(spec, qc, rc)) in_q.push_back(&qc);
    if (in_p.empty() && in_q.empty()) {
      out.unmatched = std::max(out.unmatched, d_x(spec, rc.start_vertex, rc.end_vertex));
    } else if (in_q.empty()) {
      for (const auto* pc : in_p)
        out.one_side = std::max({out.one_side, d_x(spec, rc.end_vertex, pc->start_vertex),
                                 d_x(spec, pc->end_vertex, rc.start_vertex)});
    } else if (!in_p.empty()) {
      for (const auto* pc : in_p)
        for (const auto* qc : in_q)
          out.two_sides = std::max({out.two_sides, d_x(spec, rc.end_vertex, pc->start_vertex),
                                    d_x(spec, pc->end_vertex, qc->start_vertex),
                                    d_x(spec, qc->end_vertex, rc.start_vertex)});
    }
  }
}

int side_distance(const GroupSpec& spec, const std::vector<GroupElement>& u, const std::vector<GroupElement>& a,
                  const std::vector<GroupElement>& b, bool relative) {
  int worst = 0;
  for (const auto& x : u) {
    int best = kInf;
    for (const auto* side : {&a, &b})
      for (const auto& y : *side) best = std::min(best, relative ? d_rel(spec, x, y) : d_x(spec, x, y));
    worst = std::max(worst, best);
  }
  return worst;
}

int triangle_side_max(const GroupSpec& spec, const RelWord& p, const RelWord& q, const RelWord& r, bool relative) {
  auto vp = word_vertices(spec, p), vq = word_vertices(spec, q), vr = word_vertices(spec, r);
  return std::max({side_distance(spec, vp, vq, vr, relative), side_distance(spec, vq, vr, vp, relative),
                   side_distance(spec, vr, vp, vq, relative)});
}

}  // namespace

BigonDefects bcp_defects(const GroupSpec& spec, const RelWord& p, const RelWord& q) {
  auto a = analyze_word(spec, p), b = analyze_word(spec, q);
  BigonDefects out;
  bcp_one_way(spec, a, b, out);
  bcp_one_way(spec, b, a, out);
  return out;
}

TriangleDefects triangle_defects(const GroupSpec& spec, const RelWord& p, const RelWord& q, const RelWord& r) {
  auto ap = analyze_word(spec, p), aq = analyze_word(spec, q), ar = analyze_word(spec, r);
  // reversed triangle: q^-1 : c -> b, p^-1 : b -> a, r^-1 : a -> c
  auto bp = analyze_word(spec, reverse_word(spec, q)), bq = analyze_word(spec, reverse_word(spec, p)),
       br = analyze_word(spec, reverse_word(spec, r));
  TriangleDefects out;
  auto rotations = [&](const WordAnalysis& x, const WordAnalysis& y, const WordAnalysis& z) {
    triangle_one(spec, x, y, z, out);
    triangle_one(spec, y, z, x, out);
    triangle_one(spec, z, x, y, out);
  };
  rotations(ap, aq, ar);
  rotations(bp, bq, br);
  return out;
}

int triangle_nu(const GroupSpec& spec, const RelWord& p, const RelWord& q, const RelWord& r) {
  return triangle_side_max(spec, p, q, r, false);
}

int triangle_slim(const GroupSpec& spec, const RelWord& p, const RelWord& q, const RelWord& r) {
  return triangle_side_max(spec, p, q, r, true);
}

int rel_hausdorff(const GroupSpec& spec, const RelWord& p, const RelWord& q) {
  auto a = word_vertices(spec, p), b = word_vertices(spec, q);
  auto one = [&](const std::vector<GroupElement>& u, const std::vector<GroupElement>& v) {
    int worst = 0;
    for (const auto& x : u) {
      int best = kInf;
      for (const auto& y : v) best = std::min(best, d_rel(spec, x, y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one(a, b), one(b, a));
}

namespace {

void check_options(const GroupSpec& spec, const SamplerOptions& opt) {
  if (opt.radius < 0 || opt.window < 1 || opt.k < 0 || opt.detours < 0) throw Error("invalid sampler options");
  if (opt.samples > 10'000'000) throw Error("sample count too large");
  opt.qg.validate();
  (void)spec;
}

bool usable(const GroupSpec& spec, const RelWord& w, const QGParams& qg, bool quasi) {
  if (analyze_word(spec, w).backtracks) return false;
  return !quasi || is_rel_quasigeodesic(spec, w, qg);
}

struct BigonSample {
  bool accepted = false;
  BigonDefects defects;
  int zeta = 0;
};

ConstantReport run_bcp(const GroupSpec& spec, const SamplerOptions& opt, bool parallel) {
  check_options(spec, opt);
  const auto shifts = spec.enumerate_ball(opt.k, Metric::Absolute);
  std::vector<BigonSample> res(opt.samples);
  detail::for_each_index(opt.samples, parallel, [&](std::size_t i) {
    auto rng = sample_rng(opt.seed, i);
    const auto b = random_rel_element(spec, rng, opt.radius, opt.window);
    const auto& s1 = pick(rng, shifts);
    const auto& s2 = pick(rng, shifts);
    auto p = sample_geodesic(spec, rng, spec.identity(), b);
    auto q = sample_geodesic(spec, rng, s1, spec.multiply(s2, b));
    BigonSample out;
    if (opt.quasi) {
      auto pp = perturb_word(spec, rng, p, opt.detours, opt.window);
      auto qq = perturb_word(spec, rng, q, opt.detours, opt.window);
      out.zeta = std::max(rel_hausdorff(spec, pp, p), rel_hausdorff(spec, qq, q));
      p = std::move(pp);
      q = std::move(qq);
    }
    out.accepted = usable(spec, p, opt.qg, opt.quasi) && usable(spec, q, opt.qg, opt.quasi);
    if (out.accepted) out.defects = bcp_defects(spec, p, q);
    res[i] = out;
  });
  ConstantReport rep;
  rep.what = "bcp";
  rep.params = opt;
  rep.requested = opt.samples;
  BigonDefects worst;
  int zeta = 0;
  for (const auto& s : res) {
    if (!s.accepted) {
      ++rep.rejected;
      continue;
    }
    ++rep.accepted;
    worst.phase = std::max(worst.phase, s.defects.phase);
    worst.unmatched = std::max(worst.unmatched, s.defects.unmatched);
    worst.endpoints = std::max(worst.endpoints, s.defects.endpoints);
    zeta = std::max(zeta, s.zeta);
  }
  if (rep.accepted > 0) {
    rep.epsilon_hat = worst.max();
    if (opt.quasi) rep.zeta_hat = zeta;
  }
  rep.clauses = {{"i", worst.phase}, {"ii", worst.unmatched}, {"iii", worst.endpoints}};
  return rep;
}

struct TriangleSample {
  int nu = 0;
  int slim = 0;
  bool accepted = false;
  TriangleDefects defects;
};

ConstantReport run_triangles(const GroupSpec& spec, const SamplerOptions& opt, bool parallel) {
  check_options(spec, opt);
  std::vector<TriangleSample> res(opt.samples);
  detail::for_each_index(opt.samples, parallel, [&](std::size_t i) {
    auto rng = sample_rng(opt.seed, i);
    const auto a = spec.identity();
    const auto b = random_rel_element(spec, rng, opt.radius, opt.window);
    const auto c = random_rel_element(spec, rng, opt.radius, opt.window);
    auto p = sample_geodesic(spec, rng, a, b), q = sample_geodesic(spec, rng, b, c),
         r = sample_geodesic(spec, rng, c, a);
    TriangleSample out;
    out.nu = triangle_nu(spec, p, q, r);
    out.slim = triangle_slim(spec, p, q, r);
    if (opt.quasi) {
      p = perturb_word(spec, rng, p, opt.detours, opt.window);
      q = perturb_word(spec, rng, q, opt.detours, opt.window);
      r = perturb_word(spec, rng, r, opt.detours, opt.window);
    }
    out.accepted = usable(spec, p, opt.qg, opt.quasi) && usable(spec, q, opt.qg, opt.quasi) &&
                   usable(spec, r, opt.qg, opt.quasi);
    if (out.accepted) out.defects = triangle_defects(spec, p, q, r);
    res[i] = out;
  });
  ConstantReport rep;
  rep.what = "triangles";
  rep.params = opt;
  rep.requested = opt.samples;
  TriangleDefects worst;
  int nu = 0, slim = 0;
  for (const auto& s : res) {
    nu = std::max(nu, s.nu);
    slim = std::max(slim, s.slim);
    if (!s.accepted) {
      ++rep.rejected;
      continue;
    }
    ++rep.accepted;
    worst.phase = std::max(worst.phase, s.defects.phase);
    worst.unmatched = std::max(worst.unmatched, s.defects.unmatched);
    worst.one_side = std::max(worst.one_side, s.defects.one_side);
    worst.two_sides = std::max(worst.two_sides, s.defects.two_sides);
  }
  if (opt.samples > 0) {
    rep.nu_hat = nu;
    rep.delta_hat = slim;
  }
  if (rep.accepted > 0) rep.mu_hat = worst.max();
  rep.clauses = {{"nu", nu},
                 {"delta_slim", slim},
                 {"mu_i", worst.phase},
                 {"mu_ii", worst.unmatched},
                 {"mu_iii", worst.one_side},
                 {"mu_iv", worst.two_sides}};
  return rep;
}

}  // namespace

ConstantReport measure_bcp(const GroupSpec& spec, const SamplerOptions& opt) { return run_bcp(spec, opt, true); }
ConstantReport measure_bcp_serial(const GroupSpec& spec, const SamplerOptions& opt) {
  return run_bcp(spec, opt, false);
}
ConstantReport measure_triangles(const GroupSpec& spec, const SamplerOptions& opt) {
  return run_triangles(spec, opt, true);
}
ConstantReport measure_triangles_serial(const GroupSpec& spec, const SamplerOptions& opt) {
  return run_triangles(spec, opt, false);
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& s) {
  auto bad = [&] { return Error("cannot parse rational number '" + s + "'"); };
  auto parse_int = [&](const std::string& t) -> std::int64_t {
    if (t.empty() || t.size() > 12) throw bad();
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(t, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != t.size()) throw bad();
    return v;
  };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    auto den = parse_int(s.substr(slash + 1));
    if (den == 0) throw bad();
    return Rational(parse_int(s.substr(0, slash)), den);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string frac = s.substr(dot + 1);
    if (frac.empty() || frac.size() > 6 || frac[0] == '-' || frac[0] == '+') throw bad();
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    std::string whole = s.substr(0, dot);
    bool negative = !whole.empty() && whole[0] == '-';
    std::int64_t w = whole.empty() || whole == "-" ? 0 : parse_int(whole);
    std::int64_t f = parse_int(frac);
    std::int64_t num = std::abs(w) * scale + f;
    return Rational(negative ? -num : num, scale);
  }
  return Rational(parse_int(s));
}

nlohmann::ordered_json sampler_to_json(const SamplerOptions& opt) {
  nlohmann::ordered_json j;
  j["radius"] = opt.radius;
  j["window"] = opt.window;
  j["samples"] = opt.samples;
  j["seed"] = opt.seed;
  j["k"] = opt.k;
  j["quasi"] = opt.quasi;
  j["detours"] = opt.detours;
  j["lambda"] = format_rational(opt.qg.lambda);
  j["c"] = format_rational(opt.qg.c);
  return j;
}

nlohmann::ordered_json report_to_json(const GroupSpec& spec, const ConstantReport& rep) {
  nlohmann::ordered_json j;
  j["schema"] = "hellyrel.constants";
  j["version"] = 1;
  j["what"] = rep.what;
  j["group"] = spec.to_json();
  j["parameters"] = sampler_to_json(rep.params);
  j["estimate"] = rep.estimate;
  j["samples"] = {{"requested", rep.requested}, {"accepted", rep.accepted}, {"rejected", rep.rejected}};
  auto opt = [](const std::optional<int>& v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(); };
  j["epsilon_hat"] = opt(rep.epsilon_hat);
  j["nu_hat"] = opt(rep.nu_hat);
  j["mu_hat"] = opt(rep.mu_hat);
  j["zeta_hat"] = opt(rep.zeta_hat);
  j["delta_hat"] = opt(rep.delta_hat);
  nlohmann::ordered_json cl = nlohmann::ordered_json::object();
  for (const auto& [name, v] : rep.clauses) cl[name] = v;
  j["clauses"] = cl;
  return j;
}

}  // namespace hellyrel
