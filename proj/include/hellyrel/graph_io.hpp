#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "hellyrel/graph.hpp"

namespace hellyrel {

struct LabeledGraph {
  Graph graph;
  std::map<Vertex, std::string> labels;
};

// Edge list: one "u v" pair per line, '#' starts a comment. A line holding a
// single id declares an isolated vertex.
LabeledGraph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g, const std::string& header = {});

// {"n": int, "edges": [[u,v],...], "labels": {"id": "text"}}
LabeledGraph read_graph_json(std::istream& in);
std::string graph_to_json(const LabeledGraph& g, int indent = 2);

// Picks the format from the extension: .json or anything else as edge list.
LabeledGraph load_graph(const std::string& path);

void write_dot(std::ostream& out, const LabeledGraph& g, const std::string& name = "G");

}  // namespace hellyrel
