#include "hellyrel/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hellyrel/derived.hpp"
#include "hellyrel/gamma.hpp"
#include "hellyrel/generators.hpp"
#include "hellyrel/graph_io.hpp"
#include "hellyrel/helly.hpp"
#include "hellyrel/quasiconvex.hpp"
#include "hellyrel/rel_cayley.hpp"

namespace hellyrel {

namespace {

using json = nlohmann::ordered_json;

json tool_json() { return {{"name", "hellyrel"}, {"version", HELLYREL_VERSION}}; }

// Schema header first, then the tool and the resolved configuration.
json report(const std::string& schema, const json& config) {
  return {{"schema", "hellyrel." + schema}, {"version", 1}, {"tool", tool_json()}, {"config", config}};
}

void merge(json& into, const json& from) {
  for (const auto& [key, value] : from.items())
    if (key != "schema" && key != "version") into[key] = value;
}

class Emitter {
 public:
  Emitter(std::ostream& out, std::string path) : out_(out), path_(std::move(path)) {}
  void emit(const json& j) const {
    if (path_.empty() || path_ == "-") {
      out_ << j.dump(2) << '\n';
      return;
    }
    std::ofstream f(path_);
    if (!f) throw Error("cannot write " + path_);
    f << j.dump(2) << '\n';
  }

 private:
  std::ostream& out_;
  std::string path_;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

json family_json(const std::optional<RadiusFamily>& f) {
  if (!f) return nullptr;
  json balls = json::array();
  for (auto [v, r] : f->balls) balls.push_back({{"center", v}, {"radius", r}});
  return balls;
}

json graph_json(const Graph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.size()}, {"edges", edges}};
}

VertexSet load_orbit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  VertexSet out;
  if (auto first = text.find_first_not_of(" \t\r\n"); first != std::string::npos && text[first] == '[') {
    try {
      out = nlohmann::json::parse(text).get<VertexSet>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(std::string("malformed orbit JSON: ") + e.what());
    }
  } else {
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);) {
      std::istringstream tokens(line.substr(0, line.find('#')));
      for (std::string t; tokens >> t;) {
        try {
          std::size_t used = 0;
          out.push_back(static_cast<Vertex>(std::stol(t, &used)));
          if (used != t.size()) throw std::invalid_argument(t);
        } catch (const std::logic_error&) {
          throw Error("malformed orbit entry '" + t + "'");
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// "cyclic:2,free_abelian:2:king,free_abelian:1"
nlohmann::json parse_factors(const std::string& list) {
  nlohmann::json factors = nlohmann::json::array();
  std::istringstream items(list);
  for (std::string item; std::getline(items, item, ',');) {
    std::vector<std::string> parts;
    std::istringstream fields(item);
    for (std::string f; std::getline(fields, f, ':');) parts.push_back(f);
    auto number = [&](std::size_t i) {
      if (parts.size() <= i) throw Error("factor '" + item + "' needs a size");
      try {
        return std::stoi(parts[i]);
      } catch (const std::logic_error&) {
        throw Error("malformed factor '" + item + "'");
      }
    };
    if (parts.empty()) throw Error("empty factor in '" + list + "'");
    if (parts[0] == "cyclic" && parts.size() == 2) {
      factors.push_back({{"kind", "cyclic"}, {"order", number(1)}});
    } else if (parts[0] == "free_abelian" && (parts.size() == 2 || parts.size() == 3)) {
      factors.push_back(
          {{"kind", "free_abelian"}, {"rank", number(1)}, {"generators", parts.size() == 3 ? parts[2] : "square"}});
    } else {
      throw Error("unknown factor '" + item + "'");
    }
  }
  return factors;
}

struct Common {
  std::string output;
};

// Options shared by the group-based commands.
struct GroupArgs {
  std::string group;
  int N = 0;  // 0 picks the certified lower bound
  int radius = 8;
  bool allow_small_N = false;
};

GammaConfig make_config(const GroupArgs& a, std::ostream& err) {
  auto spec = GroupSpec::load(a.group);
  GammaConfig cfg{spec, a.N == 0 ? certified_min_N(spec) : a.N, a.allow_small_N};
  validate_config(cfg);
  if (const int m = min_N_short_loops(spec); cfg.N < m)
    err << "warning: N = " << cfg.N << " is below the short-loop bound " << m << "\n";
  return cfg;
}

json group_config(const GroupArgs& a, const GammaConfig& cfg) {
  return {{"group", a.group}, {"N", cfg.N}, {"N_override", cfg.allow_small_N}, {"radius", a.radius}};
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Helly graphs, relative Cayley graphs and derived paths"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string("hellyrel ") + HELLYREL_VERSION);
  Common common;
  app.add_option("-o,--output", common.output, "Report file (default stdout)");
  std::function<int()> action;

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Helly, coarse Helly, pseudo-modularity and stable intervals");
  std::string graph_path;
  HellyOptions helly_opt;
  analyze->add_option("graph", graph_path, "Edge list or JSON graph")->required()->check(CLI::ExistingFile);
  analyze->add_option("--max-vertices", helly_opt.max_vertices, "Extremal-function guard")->capture_default_str();
  analyze->callback([&] {
    action = [&] {
      auto g = load_graph(graph_path).graph;
      auto rep = analyze_graph(g, helly_opt);
      json j = report("analyze", {{"graph", graph_path}, {"max_vertices", helly_opt.max_vertices}});
      j["vertices"] = g.size();
      j["edges"] = g.edge_count();
      j["is_helly"] = rep.is_helly;
      j["xi"] = rep.xi;
      j["pseudo_modular"] = rep.pseudo_modular;
      j["beta"] = rep.beta;
      j["witness"] = family_json(rep.witness);
      j["pseudo_modular_witness"] = family_json(rep.pseudo_modular_witness);
      Emitter(out, common.output).emit(j);
      return kExitOk;
    };
  });

  // hellyfy
  auto* hellyfy = app.add_subcommand("hellyfy", "Hellyfication of a finite graph");
  std::string graph_out, dot_out;
  HellyficationOptions hf_opt;
  hellyfy->add_option("graph", graph_path, "Edge list or JSON graph")->required()->check(CLI::ExistingFile);
  hellyfy->add_option("--graph-out", graph_out, "Write the Helly graph as an edge list");
  hellyfy->add_option("--dot", dot_out, "Write the Helly graph as DOT");
  hellyfy->add_option("--max-vertices", hf_opt.input.max_vertices, "Input guard")->capture_default_str();
  hellyfy->callback([&] {
    action = [&] {
      auto g = load_graph(graph_path).graph;
      Hellyfication h;
      try {
        h = hellyfication(g, hf_opt);
      } catch (const BoundExceeded&) {
        throw;
      } catch (const Error& e) {
        err << "violation: " << e.what() << "\n";
        return kExitViolation;
      }
      json j = report("hellyfy", {{"graph", graph_path}, {"max_vertices", hf_opt.input.max_vertices}});
      j["input_vertices"] = g.size();
      j["vertices"] = h.graph.size();
      j["edges"] = h.graph.edge_count();
      j["helly"] = true;
      j["isometric"] = true;
      j["embedding"] = h.embedding;
      j["graph"] = graph_json(h.graph);
      if (!graph_out.empty()) {
        std::ostringstream s;
        write_edge_list(s, h.graph, "hellyfication of " + graph_path);
        write_text(graph_out, s.str());
      }
      if (!dot_out.empty()) {
        std::ostringstream s;
        write_dot(s, LabeledGraph{h.graph, {}}, "helly");
        write_text(dot_out, s.str());
      }
      Emitter(out, common.output).emit(j);
      return kExitOk;
    };
  });

  // group ball
  auto* group = app.add_subcommand("group", "Group specifications");
  group->require_subcommand(1);
  auto* ball_cmd = group->add_subcommand("ball", "Enumerate a ball around the identity");
  GroupArgs ga;
  std::string metric = "rel";
  int window = 2;
  ball_cmd->add_option("--group", ga.group, "Group spec JSON")->required()->check(CLI::ExistingFile);
  ball_cmd->add_option("--radius", ga.radius, "Ball radius")->required()->check(CLI::Range(0, 64));
  ball_cmd->add_option("--metric", metric, "rel or abs")->check(CLI::IsMember({"rel", "abs"}))->capture_default_str();
  ball_cmd->add_option("--window", window, "x-length bound for parabolic letters")->capture_default_str();
  ball_cmd->callback([&] {
    action = [&] {
      auto spec = GroupSpec::load(ga.group);
      auto m = metric == "rel" ? Metric::Relative : Metric::Absolute;
      auto elems = spec.enumerate_ball(ga.radius, m, window);
      json j = report("group_ball", {{"group", ga.group}, {"radius", ga.radius}, {"metric", metric}, {"window", window}});
      std::map<int, std::size_t> by_length;
      json list = json::array();
      for (const auto& g : elems) {
        list.push_back(spec.format(g));
        ++by_length[m == Metric::Relative ? spec.rel_length(g) : spec.x_length(g)];
      }
      j["group"] = spec.to_json();
      j["count"] = elems.size();
      json lengths = json::array();
      for (auto [len, count] : by_length) lengths.push_back({{"length", len}, {"count", count}});
      j["by_length"] = lengths;
      j["elements"] = list;
      Emitter(out, common.output).emit(j);
      return kExitOk;
    };
  });

  // gamma build
  auto* gamma = app.add_subcommand("gamma", "The graph Gamma(N)");
  gamma->require_subcommand(1);
  auto* build_cmd = gamma->add_subcommand("build", "Build a window of Gamma(N) around the identity");
  std::size_t guard = 2'000'000;
  build_cmd->add_option("--group", ga.group, "Group spec JSON")->required()->check(CLI::ExistingFile);
  build_cmd->add_option("--N", ga.N, "Thickening constant (default: certified bound)")->check(CLI::Range(0, 64));
  build_cmd->add_option("--radius", ga.radius, "Window radius")->capture_default_str()->check(CLI::Range(0, 64));
  build_cmd->add_flag("--allow-small-N", ga.allow_small_N, "Accept N below the quotient bound");
  build_cmd->add_option("--dot", dot_out, "Write the window as DOT");
  build_cmd->add_option("--guard", guard, "Maximum window size")->capture_default_str();
  build_cmd->callback([&] {
    action = [&] {
      auto cfg = make_config(ga, err);
      auto w = build_window(cfg, ga.radius, guard);
      json j = report("gamma_window", group_config(ga, cfg));
      merge(j, window_to_json(w));
      if (!dot_out.empty()) {
        std::ostringstream s;
        write_dot(s, window_labeled_graph(w), "gamma");
        write_text(dot_out, s.str());
      }
      Emitter(out, common.output).emit(j);
      return kExitOk;
    };
  });

  // derive
  auto* derive_cmd = app.add_subcommand("derive", "Check derived paths of sampled window geodesics");
  DeriveOptions dopt;
  derive_cmd->add_option("--group", ga.group, "Group spec JSON")->required()->check(CLI::ExistingFile);
  derive_cmd->add_option("--N", ga.N, "Thickening constant (default: certified bound)")->check(CLI::Range(0, 64));
  derive_cmd->add_option("--radius", ga.radius, "Window radius")->capture_default_str()->check(CLI::Range(1, 64));
  derive_cmd->add_flag("--allow-small-N", ga.allow_small_N, "Accept N below the quotient bound");
  derive_cmd->add_option("--samples", dopt.samples, "Number of sampled paths")->capture_default_str();
  derive_cmd->add_option("--seed", dopt.seed, "Sampler seed")->capture_default_str();
  derive_cmd->add_flag("--local", dopt.local, "Sample 5-local geodesic walks");
  derive_cmd->add_option("--walk-length", dopt.walk_length, "Length of local walks")->capture_default_str();
  derive_cmd->callback([&] {
    action = [&] {
      auto cfg = make_config(ga, err);
      auto w = build_window(cfg, ga.radius);
      auto rep = verify_derivation_theorems(w, dopt);
      auto loops = check_short_loops(w);
      const bool loops_asserted = cfg.N >= min_N_short_loops(cfg.spec);
      auto config = group_config(ga, cfg);
      config["samples"] = dopt.samples;
      config["seed"] = dopt.seed;
      config["local"] = dopt.local;
      config["walk_length"] = dopt.walk_length;
      json j = report("derive", config);
      merge(j, derivation_report_to_json(w, rep));
      j["short_loops"] = {{"asserted", loops_asserted},
                          {"loops", loops.loops},
                          {"isolated", loops.isolated},
                          {"violations", loops.violations},
                          {"witnesses", loops.witnesses}};
      // Outside the certified range of N the theorem does not apply.
      const bool asserted = cfg.N >= certified_min_N(cfg.spec);
      const std::size_t violations = rep.violations() + (loops_asserted ? loops.violations : 0);
      j["violations"] = violations;
      j["asserted"] = asserted;
      Emitter(out, common.output).emit(j);
      if (!asserted && violations > 0) err << "warning: " << violations << " violations with N below the certified bound\n";
      return asserted && violations > 0 ? kExitViolation : kExitOk;
    };
  });

  // measure
  auto* measure = app.add_subcommand("measure", "Empirical BCP and triangle constants");
  std::string what = "bcp";
  SamplerOptions sopt;
  std::string lambda_str = "2", c_str = "2";
  measure->add_option("--what", what, "bcp, nu, mu or delta")
      ->check(CLI::IsMember({"bcp", "nu", "mu", "delta"}))
      ->capture_default_str();
  measure->add_option("--group", ga.group, "Group spec JSON")->required()->check(CLI::ExistingFile);
  measure->add_option("--radius", sopt.radius, "Relative radius of endpoints")->capture_default_str();
  measure->add_option("--samples", sopt.samples, "Number of samples")->capture_default_str();
  measure->add_option("--seed", sopt.seed, "Sampler seed")->capture_default_str();
  measure->add_option("--window", sopt.window, "x-length bound for sampled syllables")->capture_default_str();
  measure->add_option("--k", sopt.k, "Similarity constant for bigons")->capture_default_str();
  measure->add_flag("--quasi", sopt.quasi, "Perturb geodesics into quasigeodesics");
  measure->add_option("--detours", sopt.detours, "Perturbations per word")->capture_default_str();
  measure->add_option("--lambda", lambda_str, "Quasigeodesic lambda")->capture_default_str();
  measure->add_option("--c", c_str, "Quasigeodesic c")->capture_default_str();
  measure->callback([&] {
    action = [&] {
      auto spec = GroupSpec::load(ga.group);
      sopt.qg.lambda = parse_rational(lambda_str);
      sopt.qg.c = parse_rational(c_str);
      sopt.qg.validate();
      if (what == "mu") sopt.quasi = true;
      auto rep = what == "bcp" ? measure_bcp(spec, sopt) : measure_triangles(spec, sopt);
      json j = report("constants", {{"group", ga.group}, {"what", what}});
      merge(j, report_to_json(spec, rep));
      Emitter(out, common.output).emit(j);
      return kExitOk;
    };
  });

  // quasiconvex
  auto* qc = app.add_subcommand("quasiconvex", "Quasiconvexity of an orbit and the Delta lemmas");
  std::string orbit_path;
  int k = 1;
  int xi = -1;
  QuasiconvexityOptions qc_opt;
  qc->add_option("--ambient", graph_path, "Ambient graph")->required()->check(CLI::ExistingFile);
  qc->add_option("--orbit", orbit_path, "Orbit vertex ids")->required()->check(CLI::ExistingFile);
  qc->add_option("--k", k, "Thickening constant")->capture_default_str()->check(CLI::Range(1, 1 << 20));
  qc->add_option("--lambda", lambda_str, "Quasigeodesic lambda")->capture_default_str();
  qc->add_option("--c", c_str, "Quasigeodesic c")->capture_default_str();
  qc->add_option("--xi", xi, "Coarse Helly constant of the ambient (default: measured)");
  qc->add_option("--cap", qc_opt.cap, "Enumeration cap per start vertex")->capture_default_str();
  qc->callback([&] {
    action = [&] {
      auto g = load_graph(graph_path).graph;
      OrbitSpec orbit{g, load_orbit(orbit_path), k};
      orbit.validate();
      QGParams q{parse_rational(lambda_str), parse_rational(c_str)};
      q.validate();
      OrbitLemmaOptions lemma_opt;
      lemma_opt.qc = qc_opt;
      const int xi_used = xi >= 0 ? xi : coarse_helly_constant(g, lemma_opt.helly);
      auto qres = quasiconvexity_k(g, orbit.W, q, qc_opt);
      auto s = verify_orbit_lemmas(orbit, xi_used, lemma_opt);
      json j = report("quasiconvex", {{"ambient", graph_path},
                                      {"orbit", orbit_path},
                                      {"k", k},
                                      {"lambda", format_rational(q.lambda)},
                                      {"c", format_rational(q.c)},
                                      {"xi", xi_used},
                                      {"cap", qc_opt.cap}});
      j["orbit"] = orbit.W;
      j["quasiconvexity"] = quasiconvexity_to_json(qres);
      j["lemmas"] = orbit_lemmas_to_json(s);
      j["violations"] = s.violations();
      Emitter(out, common.output).emit(j);
      return s.violations() == 0 ? kExitOk : kExitViolation;
    };
  });

  // corpus
  auto* corpus = app.add_subcommand("corpus", "Generate corpus graphs and group specs");
  std::string kind, file_out, factors = "cyclic:2,cyclic:3";
  Vertex n = 4, width = 3, height = 3;
  std::uint64_t seed = 1;
  int free_rank = 0;
  corpus->add_option("--kind", kind, "cycle, path, tree-random, king-grid, complete, group-freeproduct")
      ->required()
      ->check(CLI::IsMember({"cycle", "path", "tree-random", "king-grid", "complete", "group-freeproduct"}));
  corpus->add_option("--n", n, "Number of vertices")->capture_default_str()->check(CLI::Range(1, 100000));
  corpus->add_option("--width", width, "King grid width")->capture_default_str()->check(CLI::Range(1, 1000));
  corpus->add_option("--height", height, "King grid height")->capture_default_str()->check(CLI::Range(1, 1000));
  corpus->add_option("--seed", seed, "Seed for random trees")->capture_default_str();
  corpus->add_option("--factors", factors, "e.g. cyclic:2,free_abelian:2:king")->capture_default_str();
  corpus->add_option("--free-rank", free_rank, "Free factor rank")->capture_default_str();
  corpus->add_option("--file", file_out, "Output file")->required();
  corpus->callback([&] {
    action = [&] {
      json config{{"kind", kind}};
      json j;
      if (kind == "group-freeproduct") {
        config["factors"] = factors;
        config["free_rank"] = free_rank;
        nlohmann::json spec_json{{"factors", parse_factors(factors)}, {"free_rank", free_rank}};
        auto spec = GroupSpec::from_json(spec_json);
        auto text = spec.to_json();
        text["provenance"] = {{"tool", tool_json()}, {"kind", kind}, {"factors", factors}};
        write_text(file_out, text.dump(2) + "\n");
        if (!(GroupSpec::load(file_out) == spec)) throw Error("group spec does not round-trip");
        j = report("corpus", config);
        j["file"] = file_out;
        j["group"] = spec.to_json();
      } else {
        Graph g;
        if (kind == "cycle") g = cycle_graph(n), config["n"] = n;
        if (kind == "path") g = path_graph(n), config["n"] = n;
        if (kind == "complete") g = complete_graph(n), config["n"] = n;
        if (kind == "tree-random") g = random_tree(n, seed), config["n"] = n, config["seed"] = seed;
        if (kind == "king-grid") g = king_grid(width, height), config["width"] = width, config["height"] = height;
        std::ostringstream s;
        write_edge_list(s, g, "hellyrel " + std::string(HELLYREL_VERSION) + " corpus " + config.dump());
        write_text(file_out, s.str());
        j = report("corpus", config);
        j["file"] = file_out;
        j["vertices"] = g.size();
        j["edges"] = g.edge_count();
      }
      Emitter(out, common.output).emit(j);
      return kExitOk;
    };
  });

  if (!args.empty() && !args[0].empty() && args[0][0] != '-' && app.get_subcommand_no_throw(args[0]) == nullptr) {
    err << "error: unknown subcommand '" << args[0] << "'\n\n" << app.help();
    return kExitUsage;
  }
  std::vector<std::string> storage{"hellyrel"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << "hellyrel " << HELLYREL_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  if (!action) {
    err << app.help();
    return kExitUsage;
  }
  try {
    return action();
  } catch (const BoundExceeded& e) {
    err << "guard: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace hellyrel
