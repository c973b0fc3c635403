#include "hellyrel/derived.hpp"

#include <algorithm>
#include <deque>

#include "hellyrel/rng.hpp"
#include "parallel.hpp"

namespace hellyrel {

GammaPath z_path(const GammaWindow& w, int v) {
  if (!w.graph.valid(v)) throw Error("vertex not in window");
  if (w.vertices[v].kind == VertexKind::Free) return {v};
  // Medial and internal vertices have free neighbours, so |Z_v| = 1.
  int best = -1;
  for (Vertex y : w.graph.neighbors(v))
    if (w.vertices[y].kind == VertexKind::Free && (best < 0 || static_cast<int>(y) < best)) best = y;
  if (best < 0) throw BoundExceeded("Z path leaves the window at " + format_vertex(w.config.spec, w.vertices[v]));
  return {v, best};
}

namespace {

std::optional<RelLetter> segment_letter(const GammaWindow& w, const GammaPath& s) {
  const auto& spec = w.config.spec;
  const auto& a = w.vertices[s.front()];
  const auto& b = w.vertices[s.back()];
  if (a.kind != VertexKind::Free || b.kind != VertexKind::Free) throw Error("segment endpoints are not free");
  if (a.g == b.g) return std::nullopt;
  const auto diff = spec.multiply(b.g, spec.invert(a.g));
  const auto& first = w.vertices[s[1]];
  if (first.kind == VertexKind::Medial) {
    if (s.size() != 3) throw Error("medial segment of length other than 2");
    for (int x = 0; x < static_cast<int>(spec.x_letters().size()); ++x)
      if (spec.letter_element(x) == diff) return RelLetter::x_letter(x);
    throw Error("medial segment does not match an X-letter");
  }
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    const auto& v = w.vertices[s[i]];
    if (v.kind != VertexKind::Internal || v.j != first.j || v.g != first.g)
      throw Error("segment interior mixes vertex kinds");
  }
  if (diff.syllables.size() != 1 || diff.syllables[0].factor != first.j)
    throw Error("internal segment does not match an H-letter");
  return RelLetter::h_letter(first.j, diff.syllables[0].value);
}

GammaPath reversed(GammaPath p) {
  std::reverse(p.begin(), p.end());
  return p;
}

void append(GammaPath& out, const GammaPath& tail) {
  out.insert(out.end(), tail.begin() + 1, tail.end());
}

}  // namespace

DerivedResult derive(const GammaWindow& w, const GammaPath& p) {
  if (p.empty() || !is_window_path(w, p)) throw Error("not a path in the window");
  std::vector<std::size_t> free_pos;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (w.vertices[p[i]].kind == VertexKind::Free) free_pos.push_back(i);

  DerivedResult r;
  std::vector<GammaPath> parts;
  if (free_pos.empty()) {
    GammaPath s = reversed(z_path(w, p.front()));
    append(s, p);
    append(s, z_path(w, p.back()));
    parts.push_back(std::move(s));
  } else {
    const std::size_t first = free_pos.front();
    const std::size_t last = free_pos.back();
    if (first <= 3) {
      parts.push_back({p[first]});
    } else {
      GammaPath s = reversed(z_path(w, p.front()));
      append(s, GammaPath(p.begin(), p.begin() + static_cast<long>(first) + 1));
      parts.push_back(std::move(s));
      r.extended_first = true;
    }
    for (std::size_t k = 0; k + 1 < free_pos.size(); ++k)
      parts.emplace_back(p.begin() + static_cast<long>(free_pos[k]), p.begin() + static_cast<long>(free_pos[k + 1]) + 1);
    if (p.size() - 1 - last <= 3) {
      parts.push_back({p[last]});
    } else {
      GammaPath s(p.begin() + static_cast<long>(last), p.end());
      append(s, z_path(w, p.back()));
      parts.push_back(std::move(s));
      r.extended_last = true;
    }
  }
  r.word.base = w.vertices[parts.front().front()].g;
  for (auto& s : parts) {
    auto letter = s.size() == 1 ? std::nullopt : segment_letter(w, s);
    if (letter) r.word.letters.push_back(*letter);
    r.segments.push_back({std::move(s), std::move(letter)});
  }
  return r;
}

namespace {

// Endpoints of the derived path read off the path directly.
std::pair<GroupElement, GroupElement> expected_endpoints(const GammaWindow& w, const GammaPath& p) {
  auto z_end = [&](int v) { return w.vertices[z_path(w, v).back()].g; };
  int first = -1, last = -1;
  for (int i = 0; i < static_cast<int>(p.size()); ++i)
    if (w.vertices[p[i]].kind == VertexKind::Free) {
      if (first < 0) first = i;
      last = i;
    }
  if (first < 0) return {z_end(p.front()), z_end(p.back())};
  const int n = static_cast<int>(p.size()) - 1;
  return {first <= 3 ? w.vertices[p[first]].g : z_end(p.front()),
          n - last <= 3 ? w.vertices[p[last]].g : z_end(p.back())};
}

struct SampleOutcome {
  enum { Rejected, Excluded, Checked } status = Rejected;
  bool two_local_bad = false, endpoint_bad = false, length_bad = false, vertex_backtracks = false;
  std::size_t length = 0;
  int distance = 0;
};

GammaPath sample_geodesic_path(const GammaWindow& w, const std::vector<int>& inner, std::mt19937_64& rng) {
  const int u = inner[uniform_below(rng, inner.size())];
  const auto du = window_distances(w, u);
  std::vector<int> targets;
  for (int v : inner)
    if (v != u && du[v] > 0 && std::min(w.dist_from_base[u], w.dist_from_base[v]) + du[v] <= w.radius)
      targets.push_back(v);
  if (targets.empty()) return {};
  const int v = targets[uniform_below(rng, targets.size())];
  return reversed(random_window_geodesic(w, v, du, rng));
}

GammaPath sample_local_walk(const GammaWindow& w, const std::vector<int>& inner, int length, std::mt19937_64& rng) {
  GammaPath p{inner[uniform_below(rng, inner.size())]};
  for (int step = 0; step < length; ++step) {
    const std::size_t from = p.size() >= 5 ? p.size() - 5 : 0;
    const int k = static_cast<int>(p.size() - from);
    const auto d = window_distances(w, p[from]);
    std::vector<int> next;
    for (Vertex y : w.graph.neighbors(p.back())) {
      if (w.dist_from_base[y] >= w.radius || d[y] != k) continue;
      if (std::min(w.dist_from_base[p[from]], w.dist_from_base[y]) + k > w.radius) continue;
      next.push_back(static_cast<int>(y));
    }
    if (next.empty()) break;
    p.push_back(next[uniform_below(rng, next.size())]);
  }
  return p.size() >= 2 ? p : GammaPath{};
}

SampleOutcome check_sample(const GammaWindow& w, const std::vector<int>& inner, const DeriveOptions& opt,
                           std::size_t index) {
  const auto& spec = w.config.spec;
  auto rng = sample_rng(opt.seed, index);
  SampleOutcome out;
  GammaPath p;
  for (int a = 0; a < opt.attempts && p.empty(); ++a)
    p = opt.local ? sample_local_walk(w, inner, opt.walk_length, rng) : sample_geodesic_path(w, inner, rng);
  if (p.empty()) return out;
  if (!parabolic_shortenings(w, p).empty()) {
    out.status = SampleOutcome::Excluded;
    return out;
  }
  out.status = SampleOutcome::Checked;
  const auto r = derive(w, p);
  const auto [start, end] = expected_endpoints(w, p);
  const auto verts = word_vertices(spec, r.word);
  out.endpoint_bad = r.word.base != start || verts.back() != end;
  for (std::size_t k = 0; k + 1 < verts.size(); ++k) {
    if (d_rel(spec, verts[k], verts[k + 1]) != 1) out.two_local_bad = true;
    if (k + 2 < verts.size() && d_rel(spec, verts[k], verts[k + 2]) != 2) out.two_local_bad = true;
  }
  out.length = r.word.size();
  out.distance = d_rel(spec, verts.front(), verts.back());
  out.length_bad = static_cast<int>(out.length) < out.distance;
  out.vertex_backtracks = analyze_word(spec, r.word).vertex_backtracks;
  return out;
}

DerivationReport run_derivation(const GammaWindow& w, const DeriveOptions& opt, bool parallel) {
  if (opt.walk_length < 1 || opt.attempts < 1) throw Error("walk length and attempts must be positive");
  std::vector<int> inner;
  for (int i = 0; i < static_cast<int>(w.vertices.size()); ++i)
    if (w.dist_from_base[i] < w.radius) inner.push_back(i);
  if (inner.empty()) throw Error("window radius must be at least 1");
  std::vector<SampleOutcome> outcomes(opt.samples);
  detail::for_each_index(opt.samples, parallel, [&](std::size_t i) { outcomes[i] = check_sample(w, inner, opt, i); });

  DerivationReport rep;
  rep.params = opt;
  rep.requested = opt.samples;
  for (const auto& o : outcomes) {
    if (o.status == SampleOutcome::Rejected) {
      ++rep.rejected;
      continue;
    }
    if (o.status == SampleOutcome::Excluded) {
      ++rep.excluded_by_shortenings;
      continue;
    }
    ++rep.accepted;
    rep.two_local_violations += o.two_local_bad;
    rep.endpoint_mismatches += o.endpoint_bad;
    rep.length_violations += o.length_bad;
    rep.vertex_backtracking += o.vertex_backtracks;
    rep.max_derived_length = std::max(rep.max_derived_length, o.length);
    rep.c_hat = std::max(rep.c_hat, static_cast<int>(o.length) - o.distance);
    if (o.distance > 0) rep.lambda_hat = std::max(rep.lambda_hat, Rational(static_cast<std::int64_t>(o.length), o.distance));
  }
  return rep;
}

// Internal-only geodesic between two vertices of one copy.
GammaPath copy_geodesic(const GammaWindow& w, int a, int b) {
  const auto& va = w.vertices[a];
  std::vector<int> prev(w.vertices.size(), -2);
  std::deque<int> queue{a};
  prev[a] = -1;
  while (!queue.empty() && prev[b] == -2) {
    const int x = queue.front();
    queue.pop_front();
    for (Vertex y : w.graph.neighbors(x)) {
      const auto& vy = w.vertices[y];
      if (prev[y] != -2 || vy.kind != VertexKind::Internal || vy.j != va.j || vy.g != va.g) continue;
      prev[y] = x;
      queue.push_back(static_cast<int>(y));
    }
  }
  if (prev[b] == -2) throw BoundExceeded("copy geodesic leaves the window");
  GammaPath p;
  for (int x = b; x != -1; x = prev[x]) p.push_back(x);
  return reversed(p);
}

}  // namespace

DerivationReport verify_derivation_theorems(const GammaWindow& w, const DeriveOptions& opt) {
  return run_derivation(w, opt, true);
}

DerivationReport verify_derivation_theorems_serial(const GammaWindow& w, const DeriveOptions& opt) {
  return run_derivation(w, opt, false);
}

ShortLoopCheck check_short_loops(const GammaWindow& w, int h_length) {
  const auto& spec = w.config.spec;
  std::vector<RelLetter> alphabet;
  for (int x = 0; x < static_cast<int>(spec.x_letters().size()); ++x) alphabet.push_back(RelLetter::x_letter(x));
  for (int j = 0; j < spec.factor_count(); ++j)
    for (const auto& h : spec.factor(j).ball(h_length))
      if (!spec.factor(j).is_identity(h)) alphabet.push_back(RelLetter::h_letter(j, h));
  auto id = [&](const GammaVertex& v) {
    const int i = w.find(v);
    if (i < 0) throw BoundExceeded("short loop leaves the window; enlarge the radius");
    return i;
  };

  ShortLoopCheck out;
  auto check = [&](const std::vector<int>& codes) {
    RelWord word{spec.identity(), {}};
    for (int c : codes) word.letters.push_back(alphabet[c]);
    const auto verts = word_vertices(spec, word);
    if (!verts.back().is_identity()) return;
    GammaPath p{id(GammaVertex::free(verts[0]))};
    for (std::size_t k = 0; k < word.size(); ++k) {
      const auto& y = word.letters[k];
      if (!y.is_h()) {
        append(p, {p.back(), id(GammaVertex::medial(spec, verts[k], y.x)), id(GammaVertex::free(verts[k + 1]))});
        continue;
      }
      const int a = id(GammaVertex::internal(spec, y.factor, verts[k], spec.project_parabolic(verts[k], y.factor)));
      const int b = id(GammaVertex::internal(spec, y.factor, verts[k + 1], spec.project_parabolic(verts[k + 1], y.factor)));
      GammaPath s{p.back()};
      append(s, GammaPath{p.back(), a});
      append(s, copy_geodesic(w, a, b));
      s.push_back(id(GammaVertex::free(verts[k + 1])));
      append(p, s);
    }
    ++out.loops;
    const auto r = derive(w, p);
    const auto analysis = analyze_word(spec, r.word);
    std::vector<std::size_t> letter_segment;
    for (std::size_t i = 0; i < r.segments.size(); ++i)
      if (r.segments[i].letter) letter_segment.push_back(i);
    for (int c : analysis.isolated_components) {
      const auto& comp = analysis.components[c];
      if (comp.start_index != comp.end_index) continue;
      ++out.isolated;
      const auto& src = r.segments[letter_segment[comp.start_index]].source;
      if (src.size() - 1 > 3) {
        ++out.violations;
        if (out.witnesses.size() < 8)
          out.witnesses.push_back(format_word(spec, r.word) + " (segment length " + std::to_string(src.size() - 1) + ")");
      }
    }
  };
  const int a = static_cast<int>(alphabet.size());
  for (int n = 2; n <= 3; ++n) {
    std::vector<int> codes(n, 0);
    while (true) {
      check(codes);
      int i = n - 1;
      while (i >= 0 && codes[i] == a - 1) codes[i--] = 0;
      if (i < 0) break;
      ++codes[i];
    }
  }
  return out;
}

nlohmann::ordered_json derived_to_json(const GammaWindow& w, const DerivedResult& r) {
  const auto& spec = w.config.spec;
  nlohmann::ordered_json segs = nlohmann::ordered_json::array();
  for (const auto& s : r.segments) {
    nlohmann::ordered_json src = nlohmann::ordered_json::array();
    for (int v : s.source) src.push_back(format_vertex(spec, w.vertices[v]));
    segs.push_back({{"source", src},
                    {"letter", s.letter ? nlohmann::ordered_json(format_word(spec, RelWord{spec.identity(), {*s.letter}}))
                                        : nlohmann::ordered_json(nullptr)}});
  }
  return {{"word", format_word(spec, r.word)},
          {"base", spec.format(r.word.base)},
          {"length", r.word.size()},
          {"extended_first", r.extended_first},
          {"extended_last", r.extended_last},
          {"segments", segs}};
}

nlohmann::ordered_json derivation_report_to_json(const GammaWindow& w, const DerivationReport& r) {
  const auto& spec = w.config.spec;
  const GammaConfig base_config{spec, 1};
  nlohmann::ordered_json certified = nlohmann::ordered_json::array();
  nlohmann::ordered_json unmet = nlohmann::ordered_json::array();
  (w.config.N >= min_N_quotient(base_config) ? certified : unmet).push_back("i");
  (w.config.N >= min_N_short_loops(spec) ? certified : unmet).push_back("iii");
  return {{"schema", "hellyrel.derive"},
          {"version", 1},
          {"group", spec.to_json()},
          {"N", w.config.N},
          {"N_override", w.config.allow_small_N},
          {"radius", w.radius},
          {"assumptions", {{"certified", certified}, {"assumed", {"ii"}}, {"not_satisfied", unmet}}},
          {"parameters",
           {{"samples", r.params.samples},
            {"seed", r.params.seed},
            {"mode", r.params.local ? "5-local" : "geodesic"},
            {"walk_length", r.params.walk_length},
            {"attempts", r.params.attempts}}},
          {"samples",
           {{"requested", r.requested},
            {"accepted", r.accepted},
            {"rejected", r.rejected},
            {"excluded_by_shortenings", r.excluded_by_shortenings}}},
          {"violations", r.violations()},
          {"two_local_violations", r.two_local_violations},
          {"endpoint_mismatches", r.endpoint_mismatches},
          {"length_violations", r.length_violations},
          {"vertex_backtracking", r.vertex_backtracking},
          {"estimates",
           {{"certified", false},
            {"lambda_hat", format_rational(r.lambda_hat)},
            {"c_hat", r.c_hat},
            {"max_derived_length", r.max_derived_length}}}};
}

}  // namespace hellyrel
