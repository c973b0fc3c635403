#include "hellyrel/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace hellyrel {

LabeledGraph read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  Vertex n = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<long long> ids;
    long long x;
    while (ls >> x) ids.push_back(x);
    if (!ls.eof()) throw Error("edge list line " + std::to_string(line_no) + ": not an integer");
    if (ids.empty()) continue;
    if (ids.size() > 2) throw Error("edge list line " + std::to_string(line_no) + ": too many fields");
    for (long long id : ids) {
      if (id < 0 || id > 1'000'000) throw Error("edge list line " + std::to_string(line_no) + ": bad vertex id");
      n = std::max<Vertex>(n, static_cast<Vertex>(id) + 1);
    }
    if (ids.size() == 2) edges.emplace_back(static_cast<Vertex>(ids[0]), static_cast<Vertex>(ids[1]));
  }
  return {Graph(n, edges), {}};
}

void write_edge_list(std::ostream& out, const Graph& g, const std::string& header) {
  std::istringstream hs(header);
  for (std::string line; std::getline(hs, line);) out << "# " << line << '\n';
  if (g.size() == 1) out << "0\n";
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

LabeledGraph read_graph_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed graph JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
    throw Error("graph JSON needs \"n\" and \"edges\"");
  LabeledGraph out;
  try {
    const Vertex n = j.at("n").get<Vertex>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error("graph JSON edge must be a pair");
      edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
    }
    out.graph = Graph(n, edges);
    if (j.contains("labels")) {
      for (const auto& [key, value] : j.at("labels").items()) {
        Vertex v = std::stoi(key);
        if (!out.graph.valid(v)) throw Error("label for unknown vertex " + key);
        out.labels[v] = value.get<std::string>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed graph JSON: ") + e.what());
  }
  return out;
}

std::string graph_to_json(const LabeledGraph& g, int indent) {
  nlohmann::ordered_json j;
  j["n"] = g.graph.size();
  auto edges = nlohmann::ordered_json::array();
  for (auto [u, v] : g.graph.edges()) edges.push_back({u, v});
  j["edges"] = edges;
  if (!g.labels.empty()) {
    nlohmann::ordered_json labels = nlohmann::ordered_json::object();
    for (const auto& [v, text] : g.labels) labels[std::to_string(v)] = text;
    j["labels"] = labels;
  }
  return j.dump(indent);
}

LabeledGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) return read_graph_json(in);
  return read_edge_list(in);
}

void write_dot(std::ostream& out, const LabeledGraph& g, const std::string& name) {
  out << "graph " << name << " {\n";
  for (Vertex v = 0; v < g.graph.size(); ++v) {
    out << "  " << v;
    if (auto it = g.labels.find(v); it != g.labels.end()) {
      std::string escaped;
      for (char c : it->second) {
        if (c == '"' || c == '\\') escaped += '\\';
        escaped += c;
      }
      out << " [label=\"" << escaped << "\"]";
    }
    out << ";\n";
  }
  for (auto [u, v] : g.graph.edges()) out << "  " << u << " -- " << v << ";\n";
  out << "}\n";
}

}  // namespace hellyrel
