#include "hellyrel/quasiconvex.hpp"

#include <algorithm>
#include <numeric>

#include "parallel.hpp"

namespace hellyrel {

void OrbitSpec::validate() const {
  if (W.empty()) throw Error("orbit must be nonempty");
  if (!std::is_sorted(W.begin(), W.end()) || std::adjacent_find(W.begin(), W.end()) != W.end())
    throw Error("orbit must be sorted without repeats");
  for (Vertex w : W)
    if (!ambient.valid(w)) throw Error("orbit vertex out of range");
  if (k < 1) throw Error("k must be at least 1");
}

namespace {

// lambda and c scaled to a common denominator `unit`.
struct Scaled {
  std::int64_t unit, lambda, c;
  explicit Scaled(const QGParams& q) {
    q.validate();
    unit = std::lcm(q.lambda.denominator(), q.c.denominator());
    lambda = q.lambda.numerator() * (unit / q.lambda.denominator());
    c = q.c.numerator() * (unit / q.c.denominator());
  }
  // length <= lambda * dist + c
  bool allows(std::int64_t length, std::int64_t dist) const { return unit * length <= lambda * dist + c; }
};

struct StartResult {
  int k = 0;
  int k_upper = 0;
  bool capped = false;
  std::size_t explored = 0;
};

class Enumerator {
 public:
  Enumerator(const Graph& g, const DistMatrix& d, const VertexSet& W, const std::vector<int>& dist_to_w,
             const Scaled& s, std::size_t cap)
      : g_(g), d_(d), dist_to_w_(dist_to_w), s_(s), cap_(cap), in_w_(g.size(), false) {
    for (Vertex w : W) in_w_[w] = true;
    W_ = W;
  }

  StartResult run(Vertex start) {
    // slack_[y]: the largest scaled length at which y can still reach some w'
    slack_.assign(g_.size(), -1);
    for (Vertex y = 0; y < g_.size(); ++y)
      for (Vertex w : W_)
        slack_[y] = std::max(slack_[y], s_.lambda * d_(start, w) + s_.c - s_.unit * d_(y, w));
    res_ = {};
    path_ = {start};
    run_max_ = {dist_to_w_[start]};
    visit();
    return res_;
  }

 private:
  void visit() {
    if (res_.capped) return;
    if (++res_.explored > cap_) {
      res_.capped = true;
      return;
    }
    const Vertex y = path_.back();
    if (in_w_[y]) res_.k = std::max(res_.k, run_max_.back());
    const std::int64_t j = static_cast<std::int64_t>(path_.size());
    for (Vertex z : g_.neighbors(y)) {
      if (s_.unit * j > slack_[z]) continue;
      bool ok = true;
      for (std::int64_t i = 0; i < j && ok; ++i) ok = s_.allows(j - i, d_(path_[i], z));
      if (!ok) continue;
      path_.push_back(z);
      run_max_.push_back(std::max(run_max_.back(), dist_to_w_[z]));
      visit();
      path_.pop_back();
      run_max_.pop_back();
      if (res_.capped) return;
    }
  }

  const Graph& g_;
  const DistMatrix& d_;
  const std::vector<int>& dist_to_w_;
  const Scaled& s_;
  std::size_t cap_;
  std::vector<bool> in_w_;
  VertexSet W_;
  std::vector<std::int64_t> slack_;
  std::vector<Vertex> path_;
  std::vector<int> run_max_;
  StartResult res_;
};

Quasiconvexity run_quasiconvexity(const Graph& g, const DistMatrix& d, const VertexSet& W, const QGParams& q,
                                  const QuasiconvexityOptions& opt, bool parallel) {
  OrbitSpec{g, W, 1}.validate();
  const Scaled s(q);
  const Vertex n = g.size();
  for (Vertex u = 0; u < n; ++u)
    if (d(0, u) < 0) throw Error("graph not connected");
  std::vector<int> dist_to_w(n);
  for (Vertex y = 0; y < n; ++y) {
    int best = d(y, W[0]);
    for (Vertex w : W) best = std::min(best, d(y, w));
    dist_to_w[y] = best;
  }
  const bool closed_form = opt.fast_path && s.lambda == s.unit;
  std::vector<StartResult> per(W.size());
  detail::for_each_index(W.size(), parallel, [&](std::size_t a) {
    const Vertex w1 = W[a];
    StartResult r;
    for (Vertex w2 : W)
      for (Vertex y = 0; y < n; ++y)
        if (s.allows(d(w1, y) + d(y, w2), d(w1, w2))) r.k_upper = std::max(r.k_upper, dist_to_w[y]);
    if (closed_form) {
      r.k = r.k_upper;
    } else {
      Enumerator e(g, d, W, dist_to_w, s, opt.cap);
      auto dfs = e.run(w1);
      r.k = dfs.k;
      r.capped = dfs.capped;
      r.explored = dfs.explored;
    }
    per[a] = r;
  });
  Quasiconvexity out;
  out.cap = closed_form ? 0 : opt.cap;
  for (const auto& r : per) {
    out.k = std::max(out.k, r.k);
    out.k_upper = std::max(out.k_upper, r.k_upper);
    out.capped = out.capped || r.capped;
    out.explored += r.explored;
  }
  return out;
}

}  // namespace

Quasiconvexity quasiconvexity_k(const Graph& g, const DistMatrix& d, const VertexSet& W, const QGParams& q,
                                const QuasiconvexityOptions& opt) {
  return run_quasiconvexity(g, d, W, q, opt, true);
}

Quasiconvexity quasiconvexity_k_serial(const Graph& g, const DistMatrix& d, const VertexSet& W, const QGParams& q,
                                       const QuasiconvexityOptions& opt) {
  return run_quasiconvexity(g, d, W, q, opt, false);
}

Quasiconvexity quasiconvexity_k(const Graph& g, const VertexSet& W, const QGParams& q,
                                const QuasiconvexityOptions& opt) {
  return quasiconvexity_k(g, distance_matrix(g), W, q, opt);
}

Delta build_delta(const OrbitSpec& spec) {
  spec.validate();
  const auto d = distance_matrix(spec.ambient);
  VertexSet near;
  for (Vertex y = 0; y < spec.ambient.size(); ++y)
    for (Vertex w : spec.W)
      if (d(y, w) >= 0 && d(y, w) <= spec.k) {
        near.push_back(y);
        break;
      }
  Delta out;
  out.gamma_k = power_graph(spec.ambient, d, spec.k);
  out.delta = full_subgraph(out.gamma_k, near);
  return out;
}

OrbitLemmaReport verify_orbit_lemmas(const OrbitSpec& spec, int xi_ambient, const OrbitLemmaOptions& opt) {
  spec.validate();
  if (xi_ambient < 0) throw Error("xi must be non-negative");
  OrbitLemmaReport r;
  r.n = spec.ambient.size();
  r.orbit_size = spec.W.size();
  r.k = spec.k;
  r.xi = xi_ambient;
  const auto d = distance_matrix(spec.ambient);
  try {
    r.xi_measured = coarse_helly_constant(spec.ambient, d, opt.helly);
  } catch (const BoundExceeded&) {
    r.xi_measured = -1;
  }
  r.qc_coarse = quasiconvexity_k(spec.ambient, d, spec.W, QGParams{Rational(1), Rational(2 * xi_ambient)}, opt.qc);
  std::string pm_reason = "ambient is not pseudo-modular";
  try {
    r.pseudo_modular = is_pseudo_modular(spec.ambient, d, opt.helly).pseudo_modular;
  } catch (const BoundExceeded&) {
    pm_reason = "ambient too large to test pseudo-modularity";
  }
  if (r.pseudo_modular) r.qc_isometric = quasiconvexity_k(spec.ambient, d, spec.W, QGParams{Rational(5), Rational(0)}, opt.qc);

  const auto delta = build_delta(spec);
  r.delta_vertices = static_cast<std::size_t>(delta.delta.graph.size());

  auto& ch = r.coarse_helly;
  ch.bound = 3 + (xi_ambient + spec.k - 1) / spec.k;
  if (r.xi_measured < 0) {
    ch.reason = "ambient too large to measure its coarse Helly constant";
  } else if (r.xi_measured > xi_ambient) {
    ch.reason = "ambient is not xi-coarsely Helly";
  } else if (spec.k < r.qc_coarse.certified_bound()) {
    ch.reason = "k below the (1,2xi)-quasiconvexity constant";
  } else {
    ch.measured = coarse_helly_constant(delta.delta.graph, opt.helly);
    ch.status = ch.measured <= ch.bound ? LemmaStatus::Verified : LemmaStatus::Violated;
  }

  auto& iso = r.isometric;
  if (!r.pseudo_modular) {
    iso.reason = pm_reason;
  } else if (spec.k < r.qc_isometric.certified_bound()) {
    iso.reason = "k below the (5,0)-quasiconvexity constant";
  } else {
    auto check = is_isometric_subgraph(delta.delta.graph, delta.delta.to_parent, delta.gamma_k);
    iso.measured = check.isometric ? 0 : check.sub_distance - check.sup_distance;
    iso.status = check.isometric ? LemmaStatus::Verified : LemmaStatus::Violated;
  }
  return r;
}

std::string lemma_status_name(LemmaStatus s) {
  switch (s) {
    case LemmaStatus::Verified: return "verified";
    case LemmaStatus::Violated: return "violated";
    case LemmaStatus::Skipped: return "skipped";
  }
  return "";
}

nlohmann::ordered_json quasiconvexity_to_json(const Quasiconvexity& q) {
  return {{"k", q.k},           {"k_upper", q.k_upper}, {"exact", q.exact()},
          {"capped", q.capped}, {"explored", q.explored}, {"cap", q.cap}};
}

nlohmann::ordered_json orbit_lemmas_to_json(const OrbitLemmaReport& r) {
  auto lemma = [](const LemmaCheck& c) {
    nlohmann::ordered_json j{{"status", lemma_status_name(c.status)}};
    if (c.status == LemmaStatus::Skipped) j["reason"] = c.reason;
    j["measured"] = c.measured;
    j["bound"] = c.bound;
    return j;
  };
  nlohmann::ordered_json sweep = nlohmann::ordered_json::array();
  sweep.push_back({{"lambda", "1"}, {"c", std::to_string(2 * r.xi)}, {"result", quasiconvexity_to_json(r.qc_coarse)}});
  if (r.pseudo_modular)
    sweep.push_back({{"lambda", "5"}, {"c", "0"}, {"result", quasiconvexity_to_json(r.qc_isometric)}});
  return {{"vertices", r.n},
          {"orbit_size", r.orbit_size},
          {"k", r.k},
          {"xi", r.xi},
          {"xi_measured", r.xi_measured < 0 ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.xi_measured)},
          {"pseudo_modular", r.pseudo_modular},
          {"quasiconvexity", sweep},
          {"delta_vertices", r.delta_vertices},
          {"coarse_helly", lemma(r.coarse_helly)},
          {"isometric", lemma(r.isometric)},
          {"violations", r.violations()}};
}

}  // namespace hellyrel
