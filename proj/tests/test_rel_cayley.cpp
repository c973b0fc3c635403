#include <gtest/gtest.h>

#include "hellyrel/rel_cayley.hpp"
#include "hellyrel/rng.hpp"
#include "oracles/group_oracles.hpp"

using namespace hellyrel;

namespace {

GroupSpec z2_z3() { return GroupSpec({Factor::cyclic(2), Factor::cyclic(3)}, 0); }
GroupSpec z2_z2() { return GroupSpec({Factor::cyclic(2), Factor::cyclic(2)}, 0); }
GroupSpec zz_z2() { return GroupSpec({Factor::free_abelian(2, AbelianGenerators::King), Factor::cyclic(2)}, 0); }

RelLetter H(int j, FactorElem h) { return RelLetter::h_letter(j, std::move(h)); }

int xl(const GroupSpec& g, int factor, FactorElem v) { return g.find_x_letter(factor, v); }

// Random word of `n` letters; H-letters drawn from x-length <= 2.
RelWord random_word(const GroupSpec& g, std::mt19937_64& rng, int n) {
  RelWord w{oracle::random_element(g, rng, 3), {}};
  for (int i = 0; i < n; ++i) {
    if (uniform_below(rng, 2) == 0) {
      w.letters.push_back(RelLetter::x_letter(static_cast<int>(uniform_below(rng, g.x_letters().size()))));
    } else {
      int j = static_cast<int>(uniform_below(rng, g.factor_count()));
      auto ball = g.factor(j).ball(2);
      FactorElem h;
      do h = ball[uniform_below(rng, ball.size())];
      while (g.factor(j).is_identity(h));
      w.letters.push_back(H(j, h));
    }
  }
  return w;
}

}  // namespace

TEST(Components, Examples) {
  auto g = zz_z2();
  const int x = xl(g, 1, {1});
  RelWord only_x{{}, {RelLetter::x_letter(x), RelLetter::x_letter(0)}};
  EXPECT_TRUE(decompose_components(g, only_x).empty());

  RelWord w{{}, {H(0, {1, 0}), H(0, {0, 2}), RelLetter::x_letter(x), H(0, {3, 3})}};
  auto cs = decompose_components(g, w);
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(cs[0].start_index, 0);
  EXPECT_EQ(cs[0].end_index, 1);
  EXPECT_EQ(cs[1].start_index, 3);
  EXPECT_EQ(cs[1].end_index, 3);
  EXPECT_EQ(cs[0].end_vertex, g.parabolic(0, {1, 2}));

  RelWord mixed{{}, {RelLetter::x_letter(x), H(0, {1, 1}), RelLetter::x_letter(x), H(1, {1})}};
  auto cm = decompose_components(g, mixed);
  ASSERT_EQ(cm.size(), 2u);
  EXPECT_NE(cm[0].j, cm[1].j);
  EXPECT_FALSE(connected(g, cm[0], cm[1]));
}

TEST(Components, PartitionOfTheWord) {
  auto g = zz_z2();
  auto rng = sample_rng(21, 0);
  for (int t = 0; t < 500; ++t) {
    auto w = random_word(g, rng, t % 12);
    auto cs = decompose_components(g, w);
    std::vector<int> owner(w.size(), -1);
    for (int c = 0; c < static_cast<int>(cs.size()); ++c) {
      for (int i = cs[c].start_index; i <= cs[c].end_index; ++i) {
        EXPECT_EQ(owner[i], -1);
        owner[i] = c;
        EXPECT_TRUE(w.letters[i].is_h());
        EXPECT_EQ(w.letters[i].factor, cs[c].j);
      }
      // maximal
      if (cs[c].start_index > 0) {
        const auto& prev = w.letters[cs[c].start_index - 1];
        EXPECT_FALSE(prev.is_h() && prev.factor == cs[c].j);
      }
    }
    for (std::size_t i = 0; i < w.size(); ++i)
      if (owner[i] < 0) EXPECT_FALSE(w.letters[i].is_h());
  }
}

TEST(Components, ConnectedIsAnEquivalence) {
  auto g = z2_z3();
  auto rng = sample_rng(22, 0);
  std::vector<Component> pool;
  for (int t = 0; t < 40; ++t) {
    auto w = random_word(g, rng, 6);
    for (auto& c : decompose_components(g, w)) pool.push_back(c);
  }
  // components based in H_j g and g
  auto a = g.parabolic(0, {1});
  Component c1{1, 0, 0, g.identity(), g.identity()}, c2{1, 0, 0, g.multiply(g.parabolic(1, {2}), a), a};
  Component c0{1, 0, 0, a, a};
  EXPECT_TRUE(connected(g, c0, c2));
  EXPECT_FALSE(connected(g, c1, c2));
  pool.push_back(c0);
  pool.push_back(c1);
  pool.push_back(c2);
  for (const auto& x : pool) {
    EXPECT_TRUE(connected(g, x, x));
    for (const auto& y : pool) {
      EXPECT_EQ(connected(g, x, y), connected(g, y, x));
      if (!connected(g, x, y)) continue;
      for (const auto& z : pool)
        if (connected(g, y, z)) EXPECT_TRUE(connected(g, x, z));
    }
  }
}

TEST(AnalyzeWord, SampledGeodesicsArePhaseAndNonBacktracking) {
  for (const auto& g : {z2_z3(), z2_z2(), zz_z2()}) {
    auto rng = sample_rng(23, 0);
    for (int t = 0; t < 1000; ++t) {
      auto a = random_rel_element(g, rng, 4, 2), b = random_rel_element(g, rng, 6, 2);
      auto w = sample_geodesic(g, rng, a, b);
      EXPECT_EQ(word_end(g, w), b);
      EXPECT_TRUE(is_rel_geodesic(g, w));
      auto an = analyze_word(g, w);
      EXPECT_FALSE(an.backtracks);
      EXPECT_FALSE(an.vertex_backtracks);
      EXPECT_EQ(an.phase_vertices.size(), w.size() + 1);
    }
  }
}

TEST(AnalyzeWord, Backtracking) {
  auto g = zz_z2();
  // two Z^2-components separated by an X-letter from the same factor
  RelWord w{{}, {H(0, {2, 1}), RelLetter::x_letter(xl(g, 0, {1, 0})), H(0, {-1, 4})}};
  auto an = analyze_word(g, w);
  EXPECT_TRUE(an.backtracks);
  EXPECT_TRUE(an.vertex_backtracks);
  EXPECT_TRUE(an.isolated_components.empty());

  RelWord single{{}, {H(0, {5, 5})}};
  EXPECT_FALSE(analyze_word(g, single).vertex_backtracks);

  // a component of length two makes its middle vertex non-phase
  RelWord two{{}, {RelLetter::x_letter(xl(g, 1, {1})), H(0, {1, 0}), H(0, {0, 1})}};
  auto at = analyze_word(g, two);
  EXPECT_EQ(at.phase_vertices, (std::vector<int>{0, 1, 3}));
  EXPECT_TRUE(at.vertex_backtracks);
  EXPECT_FALSE(at.backtracks);
}

TEST(Geodesic, Examples) {
  auto g = z2_z3();
  EXPECT_TRUE(is_rel_geodesic(g, RelWord{}));
  EXPECT_FALSE(is_rel_geodesic(g, RelWord{{}, {H(1, {1}), H(1, {1})}}));
  EXPECT_FALSE(is_k_local_rel_geodesic(g, RelWord{{}, {H(1, {1}), H(1, {1})}}, 2));
  RelWord alt{{}, {H(0, {1}), H(1, {1}), H(0, {1}), H(1, {2})}};
  EXPECT_TRUE(is_rel_geodesic(g, alt));
  EXPECT_TRUE(is_k_local_rel_geodesic(g, alt, 3));
}

TEST(Geodesic, MatchesRelativeBfs) {
  for (const auto& g : {z2_z3(), z2_z2()}) {
    auto bfs = oracle::cayley_bfs(g, 4, 0);
    auto rng = sample_rng(24, 0);
    for (int t = 0; t < 2000; ++t) {
      auto w = random_word(g, rng, t % 5);
      w.base = g.identity();
      auto end = word_end(g, w);
      ASSERT_TRUE(bfs.count(end));
      EXPECT_EQ(is_rel_geodesic(g, w), static_cast<int>(w.size()) == bfs[end]);
    }
  }
}

TEST(Geodesic, Quasigeodesics) {
  auto g = zz_z2();
  const int x = xl(g, 1, {1});
  RelWord w{{}, {H(0, {3, 1}), RelLetter::x_letter(x), RelLetter::x_letter(x)}};
  EXPECT_FALSE(is_rel_quasigeodesic(g, w, QGParams{1, 1, 2}));
  EXPECT_TRUE(is_rel_quasigeodesic(g, w, QGParams{1, 2, 2}));
  EXPECT_TRUE(is_rel_quasigeodesic(g, RelWord{{}, {H(0, {3, 1})}}, QGParams{}));
}

TEST(Similar, Examples) {
  auto g = zz_z2();
  auto p = normal_form_word(g, g.identity(), g.parabolic(0, {4, 4}));
  EXPECT_TRUE(k_similar(g, p, p, 0));
  auto q = normal_form_word(g, g.letter_element(xl(g, 1, {1})), g.parabolic(0, {4, 4}));
  EXPECT_TRUE(k_similar(g, p, q, 1));
  EXPECT_FALSE(k_similar(g, p, q, 0));
  GroupSpec sq({Factor::free_abelian(2, AbelianGenerators::Square), Factor::cyclic(2)}, 0);
  auto p2 = normal_form_word(sq, sq.identity(), sq.parabolic(1, {1}));
  auto q2 = normal_form_word(sq, sq.parabolic(0, {3, -2}), sq.parabolic(1, {1}));
  EXPECT_TRUE(k_similar(sq, p2, q2, 5));
  EXPECT_FALSE(k_similar(sq, p2, q2, 4));
}

TEST(Reverse, Involution) {
  auto g = zz_z2();
  auto rng = sample_rng(25, 0);
  for (int t = 0; t < 300; ++t) {
    auto w = random_word(g, rng, t % 9);
    auto r = reverse_word(g, w);
    EXPECT_EQ(r.base, word_end(g, w));
    EXPECT_EQ(word_end(g, r), w.base);
    EXPECT_EQ(reverse_word(g, r), w);
    auto vw = word_vertices(g, w), vr = word_vertices(g, r);
    std::reverse(vr.begin(), vr.end());
    EXPECT_EQ(vw, vr);
  }
}

TEST(Defects, IdenticalPathsAreZero) {
  auto g = zz_z2();
  auto rng = sample_rng(26, 0);
  for (int t = 0; t < 200; ++t) {
    auto w = sample_geodesic(g, rng, g.identity(), random_rel_element(g, rng, 6, 2));
    EXPECT_EQ(bcp_defects(g, w, w).max(), 0);
  }
}

TEST(Defects, DegenerateTriangleIsABigon) {
  auto g = zz_z2();
  auto rng = sample_rng(27, 0);
  for (int t = 0; t < 200; ++t) {
    auto b = random_rel_element(g, rng, 5, 2);
    auto p = sample_geodesic(g, rng, g.identity(), b);
    auto q = sample_geodesic(g, rng, b, g.identity());
    RelWord r{g.identity(), {}};
    auto tri = triangle_defects(g, p, q, r);
    auto big = bcp_defects(g, p, reverse_word(g, q));
    EXPECT_EQ(tri.phase, big.phase);
    EXPECT_LE(triangle_nu(g, p, q, r), big.phase);
  }
}

TEST(Defects, HandComputedBigon) {
  // p = h(3,0), q starts one X-step away: both single components, connected
  auto g = zz_z2();
  RelWord p{{}, {H(0, {3, 0})}};
  RelWord q{g.parabolic(0, {1, 1}), {H(0, {2, -1})}};
  auto d = bcp_defects(g, p, q);
  EXPECT_EQ(d.endpoints, 1);
  EXPECT_EQ(d.unmatched, 0);
  EXPECT_EQ(d.phase, 1);
  // the Z^2-component of r has no partner in s
  const int b = xl(g, 1, {1});
  RelWord r{{}, {RelLetter::x_letter(b), H(0, {3, 0}), RelLetter::x_letter(b)}};
  RelWord s{{}, {RelLetter::x_letter(b), RelLetter::x_letter(b)}};
  auto e = bcp_defects(g, r, s);
  EXPECT_EQ(e.unmatched, 3);
}

TEST(Measure, BcpDeterministicAndParallelMatchesSerial) {
  SamplerOptions opt;
  opt.samples = 1000;
  opt.radius = 6;
  opt.seed = 5;
  auto g = z2_z3();
  auto a = measure_bcp(g, opt), b = measure_bcp(g, opt), s = measure_bcp_serial(g, opt);
  EXPECT_EQ(report_to_json(g, a).dump(), report_to_json(g, b).dump());
  EXPECT_EQ(report_to_json(g, a).dump(), report_to_json(g, s).dump());
  ASSERT_TRUE(a.epsilon_hat.has_value());
  EXPECT_EQ(a.accepted, 1000u);
  for (const auto& [name, v] : a.clauses) EXPECT_LE(v, *a.epsilon_hat) << name;
  EXPECT_TRUE(a.estimate);
}

TEST(Measure, MonotoneInSampleCount) {
  auto g = zz_z2();
  SamplerOptions opt;
  opt.quasi = true;
  opt.seed = 9;
  int prev_eps = 0, prev_mu = 0;
  for (std::size_t n : {50u, 200u, 400u}) {
    opt.samples = n;
    auto b = measure_bcp(g, opt);
    auto t = measure_triangles(g, opt);
    ASSERT_TRUE(b.epsilon_hat && t.mu_hat);
    EXPECT_GE(*b.epsilon_hat, prev_eps);
    EXPECT_GE(*t.mu_hat, prev_mu);
    prev_eps = *b.epsilon_hat;
    prev_mu = *t.mu_hat;
    EXPECT_GT(b.rejected + b.accepted, 0u);
    EXPECT_TRUE(b.zeta_hat.has_value());
  }
}

TEST(Measure, InfiniteDihedralTriangles) {
  // Cay(D_inf, X u H) is a line with doubled edges: triangles are degenerate
  SamplerOptions opt;
  opt.samples = 500;
  opt.radius = 6;
  auto g = z2_z2();
  auto rep = measure_triangles(g, opt);
  ASSERT_TRUE(rep.nu_hat && rep.delta_hat && rep.mu_hat);
  EXPECT_EQ(*rep.nu_hat, 0);
  EXPECT_EQ(*rep.delta_hat, 0);
  auto ser = measure_triangles_serial(g, opt);
  EXPECT_EQ(report_to_json(g, rep).dump(), report_to_json(g, ser).dump());
}

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(parse_rational("3/2"), Rational(3, 2));
  EXPECT_EQ(parse_rational("1.5"), Rational(3, 2));
  EXPECT_EQ(parse_rational("2"), Rational(2));
  EXPECT_EQ(parse_rational("-0.25"), Rational(-1, 4));
  EXPECT_THROW(parse_rational("x"), Error);
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_EQ(format_rational(Rational(6, 4)), "3/2");
  EXPECT_EQ(format_rational(Rational(4)), "4");
}
