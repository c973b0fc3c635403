#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "hellyrel/generators.hpp"
#include "hellyrel/graph.hpp"
#include "hellyrel/graph_io.hpp"
#include "oracles/graph_enum.hpp"

using namespace hellyrel;

namespace {

std::vector<Graph> random_graphs(int count, Vertex lo, Vertex hi, std::uint64_t seed) {
  std::vector<Graph> out;
  for (int i = 0; i < count; ++i) {
    Vertex n = lo + static_cast<Vertex>(i % (hi - lo + 1));
    double p = 0.2 + 0.1 * (i % 5);
    out.push_back(random_connected_graph(n, p, seed + i));
  }
  return out;
}

// Thin and slim constants by enumerating every geodesic triangle.
std::pair<int, int> triangle_constants_by_enumeration(const Graph& g) {
  auto d = distance_matrix(g);
  int thin = 0, slim = 0;
  const Vertex n = g.size();
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = 0; y < n; ++y)
      for (Vertex z = 0; z < n; ++z) {
        auto ps = enumerate_geodesics(g, d, x, y);
        auto qs = enumerate_geodesics(g, d, y, z);
        auto rs = enumerate_geodesics(g, d, z, x);
        for (const auto& p : ps)
          for (const auto& q : qs)
            for (const auto& r : rs) {
              // corner P_- = x: R reversed from x and P from x
              const int lp = static_cast<int>(p.size()) - 1, lq = static_cast<int>(q.size()) - 1,
                        lr = static_cast<int>(r.size()) - 1;
              auto corner = [&](const Path& in, const Path& out, int limit2) {
                // in ends at the corner, out starts there
                for (int t = 0; 2 * t <= limit2; ++t) {
                  if (t > static_cast<int>(in.size()) - 1 || t > static_cast<int>(out.size()) - 1) break;
                  Vertex u = in[in.size() - 1 - t], v = out[t];
                  thin = std::max(thin, d(u, v));
                }
              };
              corner(r, p, lr + lp - lq);
              corner(p, q, lp + lq - lr);
              corner(q, r, lq + lr - lp);
              for (Vertex u : r) {
                int best = 1 << 20;
                for (Vertex v : p) best = std::min(best, d(u, v));
                for (Vertex v : q) best = std::min(best, d(u, v));
                slim = std::max(slim, best);
              }
            }
      }
  return {thin, slim};
}

}  // namespace

TEST(Distance, Examples) {
  EXPECT_EQ(distance_matrix(path_graph(3))(0, 2), 2);
  auto k4 = distance_matrix(complete_graph(4));
  for (Vertex u = 0; u < 4; ++u)
    for (Vertex v = 0; v < 4; ++v) EXPECT_EQ(k4(u, v), u == v ? 0 : 1);
  EXPECT_EQ(distance_matrix(cycle_graph(6))(0, 3), 3);
}

TEST(Distance, DisconnectedThrows) {
  std::vector<Edge> e{{0, 1}};
  Graph g(3, e);
  try {
    distance_matrix(g);
    FAIL();
  } catch (const Error& err) {
    EXPECT_STREQ(err.what(), "graph not connected");
  }
  EXPECT_THROW(distance_matrix_serial(g), Error);
}

TEST(Distance, ParallelMatchesSerialAndMetricAxioms) {
  for (const auto& g : random_graphs(40, 2, 25, 11)) {
    auto a = distance_matrix(g);
    auto b = distance_matrix_serial(g);
    ASSERT_EQ(a, b);
    for (Vertex u = 0; u < g.size(); ++u)
      for (Vertex v = 0; v < g.size(); ++v) {
        EXPECT_EQ(a(u, v), a(v, u));
        EXPECT_EQ(a(u, v) == 1, g.adjacent(u, v));
        EXPECT_EQ(a(u, v) == 0, u == v);
        for (Vertex w = 0; w < g.size(); ++w) EXPECT_LE(a(u, w), a(u, v) + a(v, w));
      }
  }
}

TEST(GraphType, CollapsesLoopsAndMultiEdges) {
  std::vector<Edge> e{{0, 1}, {1, 0}, {1, 1}, {1, 2}};
  Graph g(3, e);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.neighbors(1).size(), 2u);
}

TEST(Ball, Examples) {
  auto c4 = distance_matrix(cycle_graph(4));
  EXPECT_EQ(ball(c4, 0, 1), (VertexSet{0, 1, 3}));
  EXPECT_EQ(ball(c4, 2, 0), (VertexSet{2}));
  auto c6 = distance_matrix(cycle_graph(6));
  EXPECT_EQ(ball(c6, 0, 2).size(), 5u);
  EXPECT_EQ(ball(c6, 4, c6.diameter()).size(), 6u);
}

TEST(Interval, Examples) {
  auto c4 = distance_matrix(cycle_graph(4));
  EXPECT_EQ(interval(c4, 0, 2), (VertexSet{0, 1, 2, 3}));
  EXPECT_EQ(interval(c4, 3, 3), (VertexSet{3}));
  Graph t = random_tree(9, 5);
  auto dt = distance_matrix(t);
  for (Vertex u = 0; u < 9; ++u)
    for (Vertex v = 0; v < 9; ++v) {
      auto geos = enumerate_geodesics(t, dt, u, v);
      ASSERT_EQ(geos.size(), 1u);
      VertexSet s(geos[0].begin(), geos[0].end());
      std::sort(s.begin(), s.end());
      EXPECT_EQ(interval(dt, u, v), s);
    }
}

TEST(Interval, EqualsUnionOfGeodesics) {
  for (const auto& g : random_graphs(30, 3, 9, 101)) {
    auto d = distance_matrix(g);
    for (Vertex u = 0; u < g.size(); ++u)
      for (Vertex v = 0; v < g.size(); ++v) {
        std::set<Vertex> seen;
        for (const auto& p : enumerate_geodesics(g, d, u, v)) seen.insert(p.begin(), p.end());
        EXPECT_EQ(interval(d, u, v), VertexSet(seen.begin(), seen.end()));
      }
  }
}

TEST(PowerGraph, Examples) {
  Graph c6 = cycle_graph(6);
  EXPECT_EQ(power_graph(c6, 1), c6);
  EXPECT_EQ(power_graph(path_graph(5), 4), complete_graph(5));
  auto d2 = distance_matrix(power_graph(c6, 2));
  EXPECT_EQ(d2(0, 3), 2);
  EXPECT_THROW(power_graph(c6, 0), Error);
}

TEST(PowerGraph, DistanceAndBallLaws) {
  for (const auto& g : random_graphs(40, 2, 12, 7)) {
    auto d = distance_matrix(g);
    for (int k = 1; k <= 4; ++k) {
      auto dk = distance_matrix(power_graph(g, d, k));
      for (Vertex u = 0; u < g.size(); ++u) {
        for (Vertex v = 0; v < g.size(); ++v) EXPECT_EQ(dk(u, v), (d(u, v) + k - 1) / k);
        for (int rho = 0; rho <= 3; ++rho) EXPECT_EQ(ball(dk, u, rho), ball(d, u, rho * k));
      }
    }
  }
}

TEST(FullSubgraph, Examples) {
  Graph c4 = cycle_graph(4);
  auto all = full_subgraph(c4, {0, 1, 2, 3});
  EXPECT_EQ(all.graph, c4);
  auto p3 = full_subgraph(c4, {0, 1, 2});
  EXPECT_EQ(p3.graph, path_graph(3));
  EXPECT_THROW(full_subgraph(c4, {0, 2}), Error);
  EXPECT_THROW(full_subgraph(c4, {}), Error);

  Graph king = king_grid(5, 5);
  auto d = distance_matrix(king);
  VertexSet s;
  for (Vertex x = 0; x < 5; ++x)
    for (Vertex v : ball(d, 2 * 5 + x, 1)) s.push_back(v);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  auto block = full_subgraph(king, s);
  EXPECT_EQ(block.graph.size(), 15);
  EXPECT_EQ(block.graph, king_grid(5, 3));
}

TEST(Isometry, Examples) {
  Graph c6 = cycle_graph(6);
  std::vector<Vertex> id{0, 1, 2, 3, 4, 5};
  EXPECT_TRUE(is_isometric_subgraph(c6, id, c6).isometric);

  auto r = is_isometric_subgraph(path_graph(5), std::vector<Vertex>{0, 1, 2, 3, 4}, c6);
  EXPECT_FALSE(r.isometric);
  ASSERT_TRUE(r.witness.has_value());
  // first failing pair in lexicographic order
  EXPECT_EQ(*r.witness, (Edge{0, 4}));
  EXPECT_EQ(r.sub_distance, 4);
  EXPECT_EQ(r.sup_distance, 2);

  EXPECT_THROW(is_isometric_subgraph(path_graph(3), std::vector<Vertex>{0, 2, 4}, c6), Error);
}

TEST(Isometry, InducedSubtreesOfTrees) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph t = random_tree(10, seed);
    auto d = distance_matrix(t);
    // a ball is a connected subtree
    for (Vertex c = 0; c < 10; c += 3) {
      auto sub = full_subgraph(t, ball(d, c, 2));
      EXPECT_TRUE(is_isometric_subgraph(sub.graph, sub.to_parent, t).isometric);
    }
  }
}

TEST(ClassifyPath, Examples) {
  Graph c6 = cycle_graph(6);
  auto d = distance_matrix(c6);
  QGParams geo;
  auto edge = classify_path(c6, d, Path{0, 1}, geo);
  EXPECT_TRUE(edge.is_geodesic);
  EXPECT_TRUE(edge.is_quasigeodesic);

  Path arc{3, 4, 5, 0, 1};
  auto a = classify_path(c6, d, arc, geo);
  EXPECT_FALSE(a.is_geodesic);
  EXPECT_FALSE(a.is_quasigeodesic);
  QGParams two{Rational(2), Rational(0), 2};
  EXPECT_TRUE(classify_path(c6, d, arc, two).is_quasigeodesic);
  EXPECT_TRUE(classify_path(c6, d, arc, two).is_k_local_geodesic);

  EXPECT_THROW(classify_path(c6, d, Path{0, 2}, geo), Error);
  EXPECT_THROW(classify_path(c6, d, Path{0, 1}, QGParams{Rational(1, 2), Rational(0), 2}), Error);
  EXPECT_THROW(classify_path(c6, d, Path{0, 1}, QGParams{Rational(1), Rational(-1), 2}), Error);
}

TEST(ClassifyPath, GeodesicsAreQuasigeodesicsForAllParameters) {
  for (const auto& g : random_graphs(20, 4, 10, 3)) {
    auto d = distance_matrix(g);
    for (Vertex u = 0; u < g.size(); ++u) {
      auto geos = enumerate_geodesics(g, d, 0, u);
      for (const auto& p : geos)
        for (auto [lam, c] : {std::pair{1, 0}, std::pair{2, 1}, std::pair{5, 0}, std::pair{1, 3}}) {
          auto cls = classify_path(g, d, p, QGParams{Rational(lam), Rational(c), 3});
          EXPECT_TRUE(cls.is_geodesic);
          EXPECT_TRUE(cls.is_quasigeodesic);
          EXPECT_TRUE(cls.is_k_local_geodesic);
        }
    }
  }
}

TEST(Hausdorff, Examples) {
  auto d = distance_matrix(cycle_graph(6));
  VertexSet a{1, 2};
  EXPECT_EQ(hausdorff_distance(d, a, a), 0);
  EXPECT_EQ(hausdorff_distance(d, VertexSet{0}, VertexSet{3}), 3);
  EXPECT_EQ(hausdorff_distance(d, Path{3, 2, 1, 0}, Path{3, 4, 5, 0, 1}), 1);
  EXPECT_THROW(hausdorff_distance(d, VertexSet{}, a), Error);
}

TEST(Hausdorff, SymmetricAndZeroIffEqual) {
  auto g = random_connected_graph(9, 0.3, 4);
  auto d = distance_matrix(g);
  for (std::uint32_t ma = 1; ma < 512; ma += 37)
    for (std::uint32_t mb = 1; mb < 512; mb += 41) {
      VertexSet a, b;
      for (Vertex v = 0; v < 9; ++v) {
        if ((ma >> v) & 1u) a.push_back(v);
        if ((mb >> v) & 1u) b.push_back(v);
      }
      int h = hausdorff_distance(d, a, b);
      EXPECT_EQ(h, hausdorff_distance(d, b, a));
      EXPECT_EQ(h == 0, a == b);
    }
}

TEST(Thinness, TreesAreZeroThin) {
  for (Vertex n = 1; n <= 8; ++n)
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Graph t = random_tree(n, seed);
      auto rep = thinness_delta(t, distance_matrix(t));
      EXPECT_TRUE(rep.exhaustive);
      EXPECT_EQ(rep.delta_thin, 0);
      EXPECT_EQ(rep.delta_slim, 0);
    }
}

TEST(Thinness, CycleAndCompleteGraphs) {
  Graph c6 = cycle_graph(6);
  EXPECT_EQ(thinness_delta(c6, distance_matrix(c6)).delta_slim, 1);
  for (Vertex n = 1; n <= 5; ++n) {
    Graph k = complete_graph(n);
    EXPECT_LE(thinness_delta(k, distance_matrix(k)).delta_thin, 1);
  }
}

TEST(Thinness, MatchesExplicitTriangleEnumeration) {
  std::vector<Graph> corpus{cycle_graph(4), cycle_graph(5), cycle_graph(6), cycle_graph(7), king_grid(3, 2),
                            complete_graph(4)};
  for (const auto& g : random_graphs(15, 4, 7, 77)) corpus.push_back(g);
  for (const auto& g : corpus) {
    auto rep = thinness_delta(g, distance_matrix(g));
    auto [thin, slim] = triangle_constants_by_enumeration(g);
    EXPECT_EQ(rep.delta_thin, thin);
    EXPECT_EQ(rep.delta_slim, slim);
  }
}

TEST(Thinness, SampledAboveBound) {
  Graph g = king_grid(4, 4);
  ThinnessOptions opt;
  opt.exhaustive_bound = 10;
  opt.samples = 50;
  auto rep = thinness_delta(g, distance_matrix(g), opt);
  EXPECT_FALSE(rep.exhaustive);
  EXPECT_EQ(rep.triangles, 50u);
  auto again = thinness_delta(g, distance_matrix(g), opt);
  EXPECT_EQ(rep.delta_thin, again.delta_thin);
  EXPECT_EQ(rep.delta_slim, again.delta_slim);
}

TEST(Geodesics, CapIsLoud) {
  Graph g = king_grid(4, 4);
  auto d = distance_matrix(g);
  EXPECT_THROW(enumerate_geodesics(g, d, 0, 3, 2), BoundExceeded);
  EXPECT_EQ(enumerate_geodesics(g, d, 0, 15).size(), 1u);
}

TEST(GraphIO, EdgeListRoundTrip) {
  std::istringstream in("# square\n0 1\n1 2 # trailing\n\n2 3\n3 0\n");
  auto lg = read_edge_list(in);
  EXPECT_EQ(lg.graph, cycle_graph(4));
  std::ostringstream out;
  write_edge_list(out, lg.graph, "cycle n=4");
  std::istringstream back(out.str());
  EXPECT_EQ(read_edge_list(back).graph, lg.graph);
  EXPECT_EQ(out.str().rfind("# cycle n=4\n", 0), 0u);
}

TEST(GraphIO, EdgeListErrors) {
  std::istringstream bad("0 x\n");
  EXPECT_THROW(read_edge_list(bad), Error);
  std::istringstream many("0 1 2\n");
  EXPECT_THROW(read_edge_list(many), Error);
}

TEST(GraphIO, JsonRoundTripWithLabels) {
  LabeledGraph lg{path_graph(3), {{0, "a"}, {2, "c"}}};
  std::istringstream in(graph_to_json(lg));
  auto back = read_graph_json(in);
  EXPECT_EQ(back.graph, lg.graph);
  EXPECT_EQ(back.labels, lg.labels);
  std::istringstream bad("{\"n\": 2}");
  EXPECT_THROW(read_graph_json(bad), Error);
  std::istringstream junk("{");
  EXPECT_THROW(read_graph_json(junk), Error);
}

TEST(GraphIO, Dot) {
  std::ostringstream out;
  write_dot(out, LabeledGraph{path_graph(2), {{1, "q\"x"}}});
  EXPECT_EQ(out.str(), "graph G {\n  0;\n  1 [label=\"q\\\"x\"];\n  0 -- 1;\n}\n");
}

TEST(Enumeration, ConnectedGraphCounts) {
  const int expected[] = {0, 1, 1, 2, 6, 21, 112};
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(oracle::connected_graphs(n).size(), static_cast<std::size_t>(expected[n]));
}
