#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>

#include "dcs/dcs.hpp"
#include "support/gen.hpp"

using namespace dcs;
using Catch::Approx;

namespace {

WeightedGraph from_text(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in);
}

}  // namespace

TEST_CASE("edge list loading") {
  SECTION("single edge") {
    auto g = from_text("a b 3\n");
    REQUIRE(g.vertex_count() == 2);
    REQUIRE(g.edge_count() == 1);
    REQUIRE(g.weight(0, 1) == 3.0);
    REQUIRE(g.label(0) == "a");
    REQUIRE(g.label(1) == "b");
  }
  SECTION("comments, blanks and whitespace") {
    auto g = from_text("# header\n\n  a   b\t2.5  # trailing\nc d -1\n");
    REQUIRE(g.vertex_count() == 4);
    REQUIRE(g.edge_count() == 2);
    REQUIRE(g.weight(g.id_of("c"), g.id_of("d")) == -1.0);
  }
  SECTION("duplicate edge in either orientation") {
    REQUIRE_THROWS_AS(from_text("a b 3\nb a 3\n"), DuplicateEdge);
    REQUIRE_THROWS_AS(from_text("a b 3\na b 1\n"), DuplicateEdge);
  }
  SECTION("self loop") { REQUIRE_THROWS_AS(from_text("a a 1\n"), SelfLoop); }
  SECTION("bad weights") {
    REQUIRE_THROWS_AS(from_text("a b 0\n"), BadWeight);
    REQUIRE_THROWS_AS(from_text("a b nan\n"), BadWeight);
    REQUIRE_THROWS_AS(from_text("a b inf\n"), BadWeight);
  }
  SECTION("malformed lines carry the line number") {
    try {
      from_text("a b 1\na b\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      REQUIRE(e.line == 2);
    }
    REQUIRE_THROWS_AS(from_text("a b xyz\n"), ParseError);
    REQUIRE_THROWS_AS(from_text("a b 1 extra\n"), ParseError);
  }
  SECTION("labels keep first-seen order") {
    auto g = from_text("z y 1\nx z 2\n");
    REQUIRE(g.label(0) == "z");
    REQUIRE(g.label(1) == "y");
    REQUIRE(g.label(2) == "x");
  }
}

TEST_CASE("save/load round trip is weight-bit-exact") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = testgen::random_weighted(rng, 12, 0.4, -10, 10);
    std::ostringstream out;
    save_edge_list(g, out);
    auto back = from_text(out.str());
    REQUIRE(g.same_labeled_edges(back));
    REQUIRE(back.same_labeled_edges(g));
  }
}

TEST_CASE("build_difference") {
  SECTION("empty minuend keeps g2 as-is") {
    auto g1 = WeightedGraph({}, {});
    auto g2 = from_text("a b 3\n");
    auto dg = build_difference(g1, g2, 1.0);
    REQUIRE(dg.stats().m_pos == 1);
    REQUIRE(dg.stats().m_neg == 0);
    REQUIRE(dg.gd().weight(0, 1) == 3.0);
  }
  SECTION("identical graphs cancel to an empty difference") {
    auto g = from_text("a b 3\n");
    auto dg = build_difference(g, g, 1.0);
    REQUIRE(dg.gd().edge_count() == 0);
    REQUIRE(dg.gd().vertex_count() == 2);
  }
  SECTION("alpha scales the subtracted snapshot") {
    auto g1 = from_text("a b 2\n");
    auto g2 = from_text("a b 3\n");
    auto dg = build_difference(g1, g2, 2.0);
    REQUIRE(dg.gd().weight(0, 1) == Approx(-1.0));
  }
  SECTION("vertex sets are unioned") {
    auto g1 = from_text("a b 1\nc d 2\n");
    auto g2 = from_text("a b 1\ne f 5\n");
    auto dg = build_difference(g1, g2, 1.0);
    REQUIRE(dg.gd().vertex_count() == 6);
    REQUIRE(dg.gd().edge_count() == 2);  // (a,b) cancelled
    REQUIRE(dg.gd().weight(dg.gd().id_of("c"), dg.gd().id_of("d")) == -2.0);
    REQUIRE(dg.gd().weight(dg.gd().id_of("e"), dg.gd().id_of("f")) == 5.0);
  }
  SECTION("negative alpha is rejected") {
    auto g = from_text("a b 1\n");
    REQUIRE_THROWS_AS(build_difference(g, g, -1.0), std::invalid_argument);
  }
  SECTION("build(g1,g2) then flip equals build(g2,g1)") {
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 10; ++trial) {
      auto g1 = testgen::random_weighted(rng, 9, 0.5, 0.5, 4);
      auto g2 = testgen::random_weighted(rng, 9, 0.5, 0.5, 4);
      auto fwd = flip_signs(build_difference(g1, g2, 1.0));
      auto rev = build_difference(g2, g1, 1.0);
      REQUIRE(fwd.gd().same_labeled_edges(rev.gd()));
    }
  }
}

TEST_CASE("weight transforms") {
  SECTION("dblp discretization bands") {
    auto t = WeightTransform::discretize_dblp();
    REQUIRE(t.apply(6) == 2.0);
    REQUIRE(t.apply(5) == 2.0);
    REQUIRE(t.apply(3) == 1.0);
    REQUIRE(t.apply(1) == 0.0);  // dropped
    REQUIRE(t.apply(-2) == -1.0);
    REQUIRE(t.apply(-4) == -2.0);
    REQUIRE(t.apply(-3.5) == -1.0);
  }
  SECTION("transforming a graph rebuilds the positive part and stats") {
    auto dg = DifferenceGraph(from_text("a b 6\nb c 1\nc d -4\n"));
    auto out = transform_weights(dg, WeightTransform::discretize_dblp());
    REQUIRE(out.gd().edge_count() == 2);  // b-c fell into the zero band
    REQUIRE(out.gd().weight(out.gd().id_of("a"), out.gd().id_of("b")) == 2.0);
    REQUIRE(out.gd().weight(out.gd().id_of("c"), out.gd().id_of("d")) == -2.0);
    REQUIRE(out.stats().m_pos == 1);
    REQUIRE(out.stats().m_neg == 1);
    REQUIRE(out.gplus().edge_count() == 1);
  }
  SECTION("identity returns an identical graph") {
    auto dg = testgen::triangle_fixture();
    auto out = transform_weights(dg, WeightTransform::identity());
    REQUIRE(out.gd().same_labeled_edges(dg.gd()));
  }
  SECTION("clamp caps only the upper side") {
    auto dg = DifferenceGraph(from_text("a b 216\nb c -50\n"));
    auto out = transform_weights(dg, WeightTransform::clamp_max(10));
    REQUIRE(out.gd().weight(0, 1) == 10.0);
    REQUIRE(out.gd().weight(1, 2) == -50.0);
  }
  SECTION("overlapping bands are rejected") {
    REQUIRE_THROWS_AS(WeightTransform::discretize({{0, 1}, {0, 2}}), BadTransform);
    REQUIRE_THROWS_AS(WeightTransform::discretize({{2, 1}, {1, 2}}), BadTransform);
  }
}

TEST_CASE("flip_signs") {
  auto dg = testgen::triangle_fixture();
  auto flipped = flip_signs(dg);
  REQUIRE(flipped.gd().weight(0, 1) == -2.0);
  REQUIRE(flipped.gd().weight(1, 2) == -2.0);
  REQUIRE(flipped.gd().weight(0, 2) == 1.0);
  REQUIRE(flipped.stats().m_pos == 1);
  REQUIRE(flipped.stats().m_neg == 2);
  auto twice = flip_signs(flipped);
  REQUIRE(twice.gd().same_labeled_edges(dg.gd()));
}

TEST_CASE("average degree difference") {
  auto dg = testgen::triangle_fixture();
  SECTION("examples") {
    auto edge = DifferenceGraph(from_text("a b 3\n"));
    REQUIRE(average_degree_diff(edge, std::vector<VertexId>{0, 1}) == Approx(3.0));
    REQUIRE(average_degree_diff(edge, std::vector<VertexId>{0}) == 0.0);
    REQUIRE(average_degree_diff(dg, std::vector<VertexId>{0, 1, 2}) == Approx(2.0));
  }
  SECTION("empty set") {
    REQUIRE_THROWS_AS(average_degree_diff(dg, std::vector<VertexId>{}), EmptySet);
  }
  SECTION("degree sum equals twice the undirected edge sum") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
      auto g = testgen::random_weighted(rng, 10, 0.5, -5, 5);
      std::vector<VertexId> s;
      std::uniform_real_distribution<double> coin(0, 1);
      for (VertexId u = 0; u < g.vertex_count(); ++u)
        if (coin(rng) < 0.6) s.push_back(u);
      if (s.empty()) continue;
      double via_degrees = total_degree_within(g, s);
      double edge_sum = 0;
      for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = a + 1; b < s.size(); ++b) edge_sum += g.weight(s[a], s[b]);
      REQUIRE(via_degrees == Approx(2.0 * edge_sum).margin(1e-12));
    }
  }
}

TEST_CASE("graph affinity") {
  auto dg = testgen::triangle_fixture();
  SECTION("uniform point on an unweighted 3-clique gives 2/3") {
    auto k3 = DifferenceGraph(testgen::clique(3, 1.0));
    auto x = Embedding::uniform(k3.gd(), std::vector<VertexId>{0, 1, 2});
    REQUIRE(graph_affinity_diff(k3, x) == Approx(2.0 / 3).margin(1e-12));
  }
  SECTION("single edge at the midpoint") {
    auto edge = DifferenceGraph(from_text("a b 3\n"));
    auto x = Embedding::from_weights(edge.gd(), {{0, 0.5}, {1, 0.5}});
    REQUIRE(graph_affinity_diff(edge, x) == Approx(1.5));
  }
  SECTION("interior stationary point of the triangle fixture") {
    auto x = Embedding::from_weights(dg.gd(), {{0, 2.0 / 9}, {1, 5.0 / 9}, {2, 2.0 / 9}});
    REQUIRE(graph_affinity_diff(dg, x) == Approx(8.0 / 9).margin(1e-12));
  }
  SECTION("off-simplex points are rejected") {
    REQUIRE_THROWS_AS(Embedding::from_weights(dg.gd(), {{0, 0.5}, {1, 0.6}}), BadEmbedding);
    REQUIRE_THROWS_AS(Embedding::from_weights(dg.gd(), {{0, 1.5}, {1, -0.5}}), BadEmbedding);
  }
  SECTION("f splits into positive minus negative part") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 15; ++trial) {
      auto g = testgen::random_weighted(rng, 9, 0.6, -5, 5);
      DifferenceGraph d(g);
      auto neg_part = flip_signs(d).gplus();  // positive part of -D
      std::map<VertexId, double> w;
      std::uniform_real_distribution<double> mass(0.1, 1.0);
      double sum = 0;
      for (VertexId u = 0; u < 5; ++u) {
        w[u] = mass(rng);
        sum += w[u];
      }
      for (auto& [u, ww] : w) ww /= sum;
      double f = affinity_value(d.gd(), w);
      double fp = affinity_value(d.gplus(), w);
      double fm = affinity_value(neg_part, w);
      REQUIRE(f == Approx(fp - fm).margin(1e-12));
    }
  }
  SECTION("on a positive-edge support, f over G_D equals f over G_D+") {
    auto x = Embedding::from_weights(dg.gd(), {{0, 0.5}, {1, 0.5}});
    REQUIRE(graph_affinity(dg.gd(), x) == Approx(graph_affinity(dg.gplus(), x)).margin(1e-12));
  }
}

TEST_CASE("edge density difference") {
  auto edge = DifferenceGraph(from_text("a b 3\n"));
  REQUIRE(edge_density_diff(edge, std::vector<VertexId>{0, 1}) == Approx(1.5));
  auto dg = testgen::triangle_fixture();
  REQUIRE(edge_density_diff(dg, std::vector<VertexId>{0, 1, 2}) == Approx(2.0 / 3));
  auto empty4 = DifferenceGraph(testgen::graph_from(4, {}));
  REQUIRE(edge_density_diff(empty4, std::vector<VertexId>{0, 1, 2, 3}) == 0.0);
}

TEST_CASE("connected components") {
  auto dg = testgen::triangle_fixture();
  SECTION("triangle is one component") {
    auto comps = connected_components(dg, std::vector<VertexId>{0, 1, 2});
    REQUIRE(comps.size() == 1);
    REQUIRE(comps[0] == std::vector<VertexId>{0, 1, 2});
  }
  SECTION("induced subsets split") {
    auto path = DifferenceGraph(from_text("a b 1\nb c 1\n"));
    auto comps = connected_components(path, std::vector<VertexId>{0, 2});
    REQUIRE(comps.size() == 2);
    REQUIRE(comps[0] == std::vector<VertexId>{0});
    REQUIRE(comps[1] == std::vector<VertexId>{2});
  }
  SECTION("two disjoint edges") {
    auto two = DifferenceGraph(from_text("a b 1\nc d 1\n"));
    auto comps = connected_components(two, std::vector<VertexId>{0, 1, 2, 3});
    REQUIRE(comps.size() == 2);
    REQUIRE(comps[0] == std::vector<VertexId>{0, 1});
    REQUIRE(comps[1] == std::vector<VertexId>{2, 3});
  }
  SECTION("disconnected sets never beat their best component") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
      auto dgr = testgen::random_signed_dg(rng, 9, 0.25);
      std::vector<VertexId> s;
      std::uniform_real_distribution<double> coin(0, 1);
      for (VertexId u = 0; u < 9; ++u)
        if (coin(rng) < 0.6) s.push_back(u);
      if (s.empty()) continue;
      auto comps = connected_components(dgr, s);
      if (comps.size() < 2) continue;
      double whole = average_degree_diff(dgr, s);
      double best = -1e300;
      for (const auto& c : comps) best = std::max(best, average_degree_diff(dgr, c));
      REQUIRE(best >= whole - 1e-9);
    }
  }
}

TEST_CASE("core numbers") {
  SECTION("clique") {
    auto cores = core_numbers(testgen::clique(4, 1.0));
    for (int c : cores) REQUIRE(c == 3);
  }
  SECTION("path") {
    auto path = testgen::graph_from(3, {{0, 1, 1}, {1, 2, 1}});
    auto cores = core_numbers(path);
    for (int c : cores) REQUIRE(c == 1);
  }
  SECTION("clique plus pendant") {
    auto g = testgen::graph_from(
        5, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}, {3, 4, 1}});
    auto cores = core_numbers(g);
    REQUIRE(cores[4] == 1);
    for (int u = 0; u < 4; ++u) REQUIRE(cores[u] == 3);
  }
  SECTION("isolated vertex gets zero") {
    auto g = testgen::graph_from(2, {});
    auto cores = core_numbers(g);
    REQUIRE(cores == std::vector<int>{0, 0});
  }
  SECTION("k-core property: removing tau < k leaves min degree >= k") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 20; ++trial) {
      auto g = testgen::random_weighted(rng, 14, 0.3, 0.5, 3);
      auto cores = core_numbers(g);
      int kmax = *std::max_element(cores.begin(), cores.end());
      for (int k = 1; k <= kmax; ++k) {
        std::set<VertexId> keep;
        for (VertexId u = 0; u < g.vertex_count(); ++u)
          if (cores[u] >= k) keep.insert(u);
        for (VertexId u : keep) {
          int deg = 0;
          for (auto [v, w] : g.neighbors(u)) {
            (void)w;
            if (keep.count(v)) ++deg;
          }
          REQUIRE(deg >= k);
        }
      }
    }
  }
}

TEST_CASE("stats") {
  auto dg = testgen::triangle_fixture();
  REQUIRE(dg.stats().n == 3);
  REQUIRE(dg.stats().m_pos == 2);
  REQUIRE(dg.stats().m_neg == 1);
  REQUIRE(dg.stats().max_w == 2.0);
  REQUIRE(dg.stats().min_w == -1.0);
  REQUIRE(dg.stats().avg_w == Approx(1.0));
  SECTION("recomputable on demand") { REQUIRE(compute_stats(dg.gd()) == dg.stats()); }
  SECTION("positive part mirrors the positive edges exactly") {
    REQUIRE(dg.gplus().edge_count() == 2);
    REQUIRE(dg.gplus().weight(0, 1) == 2.0);
    REQUIRE(dg.gplus().weight(0, 2) == 0.0);
  }
}
