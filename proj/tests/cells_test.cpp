#include <gtest/gtest.h>

#include "corpus.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace rdom;
using namespace rdom::testing;

namespace {

// d(x_R, v) computed from original-graph distances.
std::int64_t node_distance(const std::vector<std::vector<std::int64_t>>& d, const Graph& g, const Ball& b,
                           Length rmax, VertexId v) {
  auto base = d[g.require_index(b.center)][g.require_index(v)];
  return base >= oracle::kInf ? oracle::kInf : rmax - b.radius + base;
}

Graph path7() {
  return make_graph(false, {1, 2, 3, 4, 5, 6, 7},
                    {{1, 2, 3}, {2, 3, 2}, {3, 4, 3}, {4, 5, 2}, {5, 6, 2}, {6, 7, 3}});
}

std::vector<Ball> path7_balls() { return {{1, 5, 4}, {2, 5, 3}, {3, 3, 7}}; }

}  // namespace

TEST(AlphaBeta, Star3TieBreak) {
  auto sys = analyze(star3(), star3_balls());
  auto ab = alpha_beta(sys, sys.vertex(0));
  EXPECT_EQ(ab.alpha, C);
  EXPECT_EQ(ab.beta, B);
}

TEST(AlphaBeta, P5Center) {
  auto sys = analyze(p5(), p5_balls());
  EXPECT_EQ(sys.distance(A, sys.vertex(3)), 2);
  EXPECT_EQ(sys.distance(E, sys.vertex(3)), 2);
  auto ab = alpha_beta(sys, sys.vertex(3));
  EXPECT_EQ(ab.alpha, E);
  EXPECT_EQ(ab.beta, A);
}

TEST(AlphaBeta, RejectsShallowVertexAndNodes) {
  auto sys = analyze(p5(), p5_balls());
  EXPECT_THROW(alpha_beta(sys, sys.vertex(1)), Error);
  EXPECT_THROW(alpha_beta(sys, sys.aug.node(A)), Error);
}

TEST(AlphaBeta, MatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = gen_planar(700 + seed, 4, 3, 0.6, 4);
    if (seed % 2) g = orient_randomly(g, seed, 0.4);
    auto balls = random_balls(g, seed, 5, 0, 6);
    auto sys = analyze(g, balls);
    auto d = oracle::floyd(g);
    for (std::size_t v = 0; v < sys.aug.original_count; ++v) {
      auto id = sys.aug.g.id_of(v);
      std::vector<std::pair<std::int64_t, BallId>> keys;
      for (const auto& b : sys.aug.balls) {
        auto dist = node_distance(d, g, b, sys.aug.rmax, id);
        if (dist <= sys.aug.rmax) keys.emplace_back(dist, b.id);
      }
      if (keys.size() < 2) continue;
      std::sort(keys.rbegin(), keys.rend());
      auto ab = alpha_beta(sys, v);
      EXPECT_EQ(ab.alpha, keys[0].second);
      EXPECT_EQ(ab.beta, keys[1].second);
    }
  }
}

TEST(SigmaOrder, SingleRepresentative) {
  auto sys = analyze(star3(), star3_balls());
  auto order = sigma_order(sys, *sys.embedding, C, B, 3, {0});
  EXPECT_EQ(order.order, (std::vector<VertexId>{0}));
}

TEST(SigmaOrder, FollowsRotationAtCenter) {
  // Star with center 0 and leaves 1..5; the ball's node hangs off 0.
  auto g = make_graph(false, {0, 1, 2, 3, 4, 5}, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}, {0, 5, 1}});
  auto sys = analyze(g, {{1, 0, 1}, {2, 0, 1}});
  auto x = sys.aug.node(1);
  auto y = sys.aug.node(2);
  Embedding emb;
  emb.rotation.resize(sys.aug.g.vertex_count());
  emb.rotation[0] = {x, y, 1, 2, 3, 4, 5};
  for (std::size_t v = 1; v <= 5; ++v) emb.rotation[v] = {0};
  emb.rotation[x] = {0};
  emb.rotation[y] = {0};
  EXPECT_EQ(sigma_order(sys, emb, 1, 2, 3, {4, 2}).order, (std::vector<VertexId>{2, 4}));

  emb.rotation[0] = {x, 5, 4, 3, 2, 1, y};
  EXPECT_EQ(sigma_order(sys, emb, 1, 2, 3, {4, 2}).order, (std::vector<VertexId>{4, 2}));

  // The walk starts just after the arc from the node, wrapping around.
  emb.rotation[0] = {3, 4, x, 5, 1, 2, y};
  EXPECT_EQ(sigma_order(sys, emb, 1, 2, 3, {4, 2, 5}).order, (std::vector<VertexId>{5, 2, 4}));
}

TEST(SigmaOrder, AncestorPairsDetected) {
  auto sys = analyze(p5(), {{1, 1, 4}, {2, 1, 4}});
  auto pairs = ancestor_pairs(sys, 1, 2, {3, 5});
  EXPECT_FALSE(pairs.empty());
  EXPECT_TRUE(std::find(pairs.begin(), pairs.end(), std::pair<VertexId, VertexId>{3, 5}) != pairs.end());
  EXPECT_TRUE(ancestor_pairs(sys, 1, 2, {5}).empty());
}

TEST(Gamma, Star3) {
  auto sys = analyze(star3(), star3_balls());
  auto enc = encode_depth(sys, *sys.embedding, 3);
  ASSERT_EQ(enc.encodings.size(), 1u);
  EXPECT_EQ(enc.encodings[0].encoding, (Encoding{C, B, A}));
  EXPECT_TRUE(enc.ancestor_violations.empty());
}

TEST(Gamma, ForcedDifferences) {
  HitSetTable h{{10, 11}, {{1, 2, 3, 4}, {1, 2, 3, 5}}};
  SigmaOrder order{1, 2, 4, {10, 11}};
  EXPECT_EQ(assign_gamma(order, h), (std::vector<BallId>{4, 5}));
  SigmaOrder single{1, 2, 4, {10}};
  EXPECT_EQ(assign_gamma(single, h), (std::vector<BallId>{3}));
  HitSetTable same{{10, 11}, {{1, 2, 3, 4}, {1, 2, 3, 4}}};
  EXPECT_THROW(assign_gamma(order, same), Error);
}

TEST(Encoding, Star3Unique) {
  auto sys = analyze(star3(), star3_balls());
  EXPECT_TRUE(verify_unique_encoding(sys, *sys.embedding, 3).pass);
  EXPECT_THROW(encode_depth(sys, *sys.embedding, 2), Error);
}

TEST(Encoding, InjectedDuplicateFails) {
  auto sys = analyze(star3(), star3_balls());
  std::vector<CellEncoding> encs{{0, {C, B, A}}, {1, {C, B, A}}};
  auto r = check_unique_encodings(sys, encs);
  EXPECT_FALSE(r.pass);
  ASSERT_EQ(r.failures.size(), 1u);
  EXPECT_EQ(r.failures[0].witness, sys.cells[1].representative);
}

TEST(Encoding, CorpusSampleUnique) {
  for (const auto& inst : planar_ball_corpus(40)) {
    auto sys = analyze(inst.graph, inst.balls);
    ASSERT_TRUE(sys.embedding);
    for (const auto& [k, n] : shallow_profile(sys).counts) {
      if (k >= 3) EXPECT_TRUE(verify_unique_encoding(sys, *sys.embedding, k).pass) << inst.name << " k=" << k;
    }
  }
}

TEST(Base, Star3IsGamma) {
  auto sys = analyze(star3(), star3_balls());
  const auto& cell = *std::find_if(sys.cells.begin(), sys.cells.end(), [](const Cell& c) { return c.depth() == 3; });
  auto paths = path_bundle(sys, sys.vertex(0));
  EXPECT_EQ(paths.alpha_path, (std::vector<std::size_t>{sys.aug.node(C), sys.vertex(3), sys.vertex(0)}));
  EXPECT_EQ(sys.voronoi.owner[sys.vertex(3)], C);
  EXPECT_EQ(sys.voronoi.owner[sys.vertex(0)], A);
  EXPECT_EQ(assign_base(sys, cell), A);
  EXPECT_EQ(assign_base(sys, cell), assign_base(sys, cell));
}

TEST(Base, AlphaPathThroughBetaCell) {
  auto g = path7();
  auto balls = path7_balls();
  auto sys = analyze(g, balls);

  // Brute force: rmax = 7; node arcs 3, 4, 0.
  auto d = oracle::floyd(g);
  const Length rmax = 7;
  std::map<VertexId, std::vector<BallId>> hit;
  for (VertexId v = 1; v <= 7; ++v) {
    for (const auto& b : balls) {
      if (node_distance(d, g, b, rmax, v) <= rmax) hit[v].push_back(b.id);
    }
  }
  EXPECT_EQ(hit[4], (std::vector<BallId>{1, 2, 3}));
  EXPECT_EQ(hit[5], (std::vector<BallId>{1, 2, 3}));
  EXPECT_EQ(hit[6], (std::vector<BallId>{1, 2, 3}));
  // At v4: d(x2) = 6 > d(x1) = 5 > d(x3) = 3.
  EXPECT_EQ(node_distance(d, g, balls[1], rmax, 4), 6);
  EXPECT_EQ(node_distance(d, g, balls[0], rmax, 4), 5);
  EXPECT_EQ(node_distance(d, g, balls[2], rmax, 4), 3);
  // v5 lies in the Voronoi cell of ball 1: d(x1) = 3 < d(x2) = 4 < d(x3) = 5.
  std::vector<oracle::Site> sites;
  for (const auto& b : balls) sites.push_back({sys.aug.node(b.id), 0, b.id});
  auto owner = oracle::voronoi_owner(sys.aug.g, sites);
  EXPECT_EQ(owner[sys.vertex(5)], 1);

  const auto& cell = *std::find_if(sys.cells.begin(), sys.cells.end(), [](const Cell& c) { return c.depth() == 3; });
  EXPECT_EQ(cell.members, (std::vector<VertexId>{4, 5, 6}));
  EXPECT_EQ(cell.representative, 4);
  EXPECT_EQ(depth3_encoding(sys, cell), (Encoding{2, 1, 3}));
  // pi(x2, v4) = x2, v5, v4 enters F_1.
  auto paths = path_bundle(sys, sys.vertex(4));
  EXPECT_EQ(paths.alpha_path, (std::vector<std::size_t>{sys.aug.node(2), sys.vertex(5), sys.vertex(4)}));
  EXPECT_EQ(assign_base(sys, cell), 1);
}

TEST(Resident, Star3) {
  auto sys = analyze(star3(), star3_balls());
  auto gd = build_resident_graph(sys, A);
  EXPECT_EQ(gd.nodes, (std::vector<BallId>{B, C}));
  ASSERT_EQ(gd.resident(), 1u);
  EXPECT_EQ(gd.edges[0].a, B);
  EXPECT_EQ(gd.edges[0].b, C);
  EXPECT_TRUE(gd.ok());

  auto empty = build_resident_graph(sys, B);
  EXPECT_EQ(empty.resident(), 0u);
  EXPECT_TRUE(empty.ok());
}

TEST(Resident, CorpusSamplePlanarAndSimple) {
  for (const auto& inst : planar_ball_corpus(40)) {
    auto sys = analyze(inst.graph, inst.balls);
    auto bases = depth3_bases(sys);
    for (const auto& b : sys.aug.balls) {
      auto gd = build_resident_graph(sys, b.id, bases);
      EXPECT_TRUE(gd.simple && gd.planar && gd.within_bound()) << inst.name << " ball " << b.id;
    }
  }
}

TEST(Profile, Fixtures) {
  auto p = shallow_profile(analyze(p5(), p5_balls()));
  EXPECT_EQ(p.counts, (std::map<std::size_t, std::size_t>{{1, 2}, {2, 1}}));
  EXPECT_TRUE(p.depth1_ok && p.depth2_ok && p.depth3_ok);

  auto s = shallow_profile(analyze(star3(), star3_balls()));
  EXPECT_EQ(s.counts, (std::map<std::size_t, std::size_t>{{1, 3}, {3, 1}}));
  EXPECT_TRUE(s.depth1_ok && s.depth2_ok && s.depth3_ok);
  EXPECT_DOUBLE_EQ(s.constant.at(3), 1.0 / 27.0);

  auto one = shallow_profile(analyze(p5(), {{9, 3, 5}}));
  EXPECT_EQ(one.counts, (std::map<std::size_t, std::size_t>{{1, 1}}));
}

TEST(Profile, CountsMatchBruteForce) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = gen_planar(900 + seed, 4, 4, 0.5, 3);
    auto balls = random_balls(g, seed, 6, 0, 4);
    auto sys = analyze(g, balls);
    auto d = oracle::floyd(g);
    std::set<std::vector<BallId>> distinct;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      std::vector<BallId> hit;
      for (const auto& b : balls) {
        if (d[g.require_index(b.center)][v] <= b.radius) hit.push_back(b.id);
      }
      std::sort(hit.begin(), hit.end());
      if (!hit.empty()) distinct.insert(hit);
    }
    std::map<std::size_t, std::size_t> expected;
    for (const auto& h : distinct) ++expected[h.size()];
    EXPECT_EQ(shallow_profile(sys).counts, expected);
  }
}

TEST(Lemmas, FixturesAndSample) {
  for (const auto& sys : {analyze(p5(), p5_balls()), analyze(star3(), star3_balls()), analyze(path7(), path7_balls())}) {
    EXPECT_EQ(check_ancestor_subsets(sys), 0u);
    EXPECT_EQ(check_overtaking(sys), 0u);
    EXPECT_EQ(check_paths_stay_in_hit_cells(sys), 0u);
  }
  for (const auto& inst : planar_ball_corpus(20)) {
    auto sys = analyze(inst.graph, inst.balls);
    EXPECT_EQ(check_paths_stay_in_hit_cells(sys), 0u) << inst.name;
  }
}

TEST(CellsReport, RequiresPlanarHost) {
  std::vector<EdgeSpec> es;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) es.push_back({i, j, 1});
  auto sys = analyze(make_graph(false, {0, 1, 2, 3, 4}, es), {{1, 0, 1}});
  EXPECT_FALSE(sys.embedding);
  EXPECT_THROW(cells_report(sys), Error);

  auto star = cells_report(analyze(star3(), star3_balls()));
  EXPECT_TRUE(star.encoding_unique.at(3));
  EXPECT_EQ(star.residents.size(), 3u);
}
