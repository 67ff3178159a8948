#include <gtest/gtest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "tsq/geodesics.hpp"

using namespace tsq;

namespace {

  ErrorCode code_of(auto&& f) {
    try {
      f();
    } catch (Error const& e) {
      return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::SyntaxError;
  }

  // Complex whose faces are given as vertex cycles; edges are created on
  // first use, oriented along the first cycle that meets them.
  Complex from_cycles(std::string const&                           name,
                      std::vector<std::vector<std::string>> const& cycles) {
    ComplexDescription                                          d;
    std::map<std::pair<std::string, std::string>, std::string> label;
    d.name = name;
    for (auto const& cyc : cycles) {
      FaceSpec fs{"f" + std::to_string(d.faces.size()),
                  cyc.size() == 3 ? FaceKind::Triangle : FaceKind::Square, {}, 0};
      for (size_t i = 0; i < cyc.size(); ++i) {
        auto const& a = cyc[i];
        auto const& b = cyc[(i + 1) % cyc.size()];
        for (auto const& x : {a, b}) {
          if (std::find(d.vertices.begin(), d.vertices.end(), x) == d.vertices.end()) {
            d.vertices.push_back(x);
          }
        }
        if (auto it = label.find({b, a}); it != label.end()) {
          fs.boundary.push_back({it->second, false, 0, 0});
          continue;
        }
        auto [it, fresh] = label.emplace(std::pair{a, b}, "e" + std::to_string(d.edges.size()));
        if (fresh) {
          d.edges.push_back({it->second, a, b, 0});
        }
        fs.boundary.push_back({it->second, true, 0, 0});
      }
      d.faces.push_back(std::move(fs));
    }
    return build_complex(d);
  }

  std::string at(int i, int j) {
    return "x" + std::to_string(i) + "_" + std::to_string(j);
  }

  Complex square_grid(int n) {
    std::vector<std::vector<std::string>> cycles;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        cycles.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)});
      }
    }
    return from_cycles("grid", cycles);
  }

  Skeleton grid_skeleton(Complex const& c, int n) {
    std::vector<bool> rim(c.number_of_vertices());
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        rim[c.vertex(at(i, j))] = i == 0 || j == 0 || i == n || j == n;
      }
    }
    return Skeleton(c, rim);
  }

  Complex cube_surface() {
    auto v = [](int b) { return "c" + std::to_string(b); };
    return from_cycles("cube",
                       {{v(0), v(1), v(3), v(2)},
                        {v(4), v(6), v(7), v(5)},
                        {v(0), v(4), v(5), v(1)},
                        {v(2), v(3), v(7), v(6)},
                        {v(0), v(2), v(6), v(4)},
                        {v(1), v(5), v(7), v(3)}});
  }

  vertex_id at_point(FlatPatch const& p, Point const& q) {
    auto v = p.find(q);
    EXPECT_TRUE(v.has_value());
    return v.value_or(0);
  }

}  // namespace

TEST(Geodesics, TrivialDag) {
  auto p   = gen_flat(FlatKind::Eisenstein, 3);
  auto g   = skeleton(p);
  auto dag = geodesic_dag(g, p.center(), p.center());
  EXPECT_EQ(dag.distance, 0u);
  EXPECT_TRUE(dag.arcs.empty());
}

TEST(Geodesics, RhombusHasTwoGeodesics) {
  auto p   = gen_flat(FlatKind::Eisenstein, 3);
  auto g   = skeleton(p);
  auto far = at_point(p, unit_at_30(1) + unit_at_30(3));
  auto dag = geodesic_dag(g, p.center(), far);
  EXPECT_EQ(dag.distance, 2u);
  EXPECT_EQ(dag.arcs.size(), 4u);
  auto oracle_arcs = oracle::geodesic_arcs(p.complex(), p.center(), far, 4);
  EXPECT_EQ(std::set<DirectedEdge>(dag.arcs.begin(), dag.arcs.end()), oracle_arcs);
}

TEST(Geodesics, DagMatchesEnumerationOnSmallPatch) {
  auto p = gen_flat(FlatKind::FlatF, 2);
  auto g = skeleton(p);
  for (vertex_id v = 0; v < p.complex().number_of_vertices(); ++v) {
    auto dag = geodesic_dag(g, p.center(), v);
    if (dag.distance > 3) {
      continue;
    }
    EXPECT_EQ(std::set<DirectedEdge>(dag.arcs.begin(), dag.arcs.end()),
              oracle::geodesic_arcs(p.complex(), p.center(), v, 3))
        << p.complex().vertices()[v];
  }
}

TEST(Geodesics, HexagonVertexIsAdjacentToCentre) {
  auto p = gen_flat(FlatKind::FlatF, 3);
  auto g = skeleton(p);
  auto u = at_point(p, unit_at_30(0));
  EXPECT_EQ(geodesic_dag(g, p.center(), u).distance, 1u);
  auto m = classify_move(g, p.center(), u);
  EXPECT_EQ(m.kind, MoveKind::UniqueEdge);
  EXPECT_EQ(m.next, u);
  EXPECT_EQ(choke_points(g, p.center(), u), (std::vector<vertex_id>{p.center(), u}));
  EXPECT_EQ(gersten_short(g, p.center(), u).length(), 1u);
}

TEST(Geodesics, Disconnected) {
  auto c = from_cycles("two", {{"a", "b", "c"}, {"x", "y", "z"}});
  auto g = skeleton(c);
  EXPECT_EQ(code_of([&] { geodesic_dag(g, c.vertex("a"), c.vertex("x")); }),
            ErrorCode::Disconnected);
}

TEST(Geodesics, SquareMove) {
  auto c = square_grid(6);
  auto g = grid_skeleton(c, 6);
  auto u = c.vertex(at(2, 2)), v = c.vertex(at(3, 3));
  auto m = classify_move(g, u, v);
  EXPECT_EQ(m.kind, MoveKind::SquareMove);
  EXPECT_EQ(m.next, v);
  auto gs = gersten_short(g, u, v);
  EXPECT_EQ(gs.length(), 2u);
  EXPECT_TRUE(gs.visits(v));
}

TEST(Geodesics, SquareMoveTowardFartherTarget) {
  auto c = square_grid(8);
  auto g = grid_skeleton(c, 8);
  auto u = c.vertex(at(2, 2)), v = c.vertex(at(5, 6));
  auto m = classify_move(g, u, v);
  EXPECT_EQ(m.kind, MoveKind::SquareMove);
  EXPECT_EQ(m.next, c.vertex(at(3, 3)));
  EXPECT_TRUE(check_gersten_short(g, u, v).ok());
}

TEST(Geodesics, TriangleRowWithoutSquares) {
  auto p = gen_flat(FlatKind::Eisenstein, 5);
  auto g = skeleton(p);
  auto far = at_point(p, unit_at_30(1) + unit_at_30(3));
  auto m   = classify_move(g, p.center(), far);
  EXPECT_EQ(m.kind, MoveKind::TriangleRowMove);
  EXPECT_TRUE(m.row.empty());
  EXPECT_EQ(m.next, far);
}

TEST(Geodesics, TriangleRowThroughSquares) {
  // Two triangles capping a row of two squares.
  auto c = from_cycles("row", {{"s", "a0", "b0"},
                               {"a0", "a1", "b1", "b0"},
                               {"a1", "a2", "b2", "b1"},
                               {"a2", "t", "b2"}});
  auto g = skeleton(c);
  auto m = classify_move(g, c.vertex("s"), c.vertex("t"));
  EXPECT_EQ(m.kind, MoveKind::TriangleRowMove);
  EXPECT_EQ(m.row.size(), 2u);
  EXPECT_EQ(m.next, c.vertex("t"));
}

TEST(Geodesics, ThreeFirstEdgesAreUnclassifiable) {
  auto c = cube_surface();
  auto g = skeleton(c);
  EXPECT_EQ(code_of([&] { classify_move(g, c.vertex("c0"), c.vertex("c7")); }),
            ErrorCode::UnclassifiableFirstEdgeSet);
}

TEST(Geodesics, MarginIsEnforced) {
  auto p = gen_flat(FlatKind::Eisenstein, 3);
  auto g = skeleton(p);
  auto b = p.boundary().front();
  EXPECT_EQ(code_of([&] { classify_move(g, p.center(), b); }), ErrorCode::PatchTooSmall);
}

TEST(Geodesics, ChokePointsOfTrivialQuery) {
  auto p = gen_flat(FlatKind::FlatF, 3);
  auto g = skeleton(p);
  EXPECT_EQ(choke_points(g, p.center(), p.center()), (std::vector<vertex_id>{p.center()}));
  EXPECT_EQ(gersten_short(g, p.center(), p.center()).length(), 0u);
}

TEST(Geodesics, FellowTravelPadding) {
  auto p  = gen_flat(FlatKind::Eisenstein, 4);
  auto g  = skeleton(p);
  auto a  = p.center();
  auto b  = at_point(p, unit_at_30(1));
  auto c  = at_point(p, unit_at_30(1) + unit_at_30(1));
  Path pq = canonical_geodesic(g, geodesic_dag(g, a, c));
  Path q1 = canonical_geodesic(g, geodesic_dag(g, a, b));
  EXPECT_EQ(fellow_travel_distance(pq, pq, g), 0u);
  EXPECT_EQ(fellow_travel_distance(pq, q1, g), 1u);
  EXPECT_EQ(fellow_travel_distance(q1, pq, g), 1u);
}

TEST(Geodesics, FellowTravelSeparationSeven) {
  auto x = flat_ftp_experiment(7, default_ftp_radius(7));
  auto g = skeleton(x.patch);
  EXPECT_GE(x.row.min_dist_o_gs, 4u);
  EXPECT_TRUE(x.row.passes_o);
  EXPECT_TRUE(x.gs2.visits(x.patch.center()));
  auto chokes = choke_points(g, x.u2, x.v2);
  EXPECT_NE(std::find(chokes.begin(), chokes.end(), x.patch.center()), chokes.end());
  EXPECT_GE(x.row.ft_distance, 3u);
  EXPECT_LT(x.row.d_u1v1, x.row.d_u2v2);
  EXPECT_EQ(x.patch.depth(x.u1), 7u);
  EXPECT_EQ(x.patch.depth(x.u2), 7u);
  auto from_o = g.bfs(x.patch.center());
  for (auto v : x.gs1.vertices) {
    EXPECT_GE(from_o[v], 4u);
  }
}

TEST(Geodesics, FellowTravelGrowsWithSeparation) {
  auto r3 = flat_ftp_experiment(3, default_ftp_radius(3)).row;
  auto r5 = flat_ftp_experiment(5, default_ftp_radius(5)).row;
  auto r9 = flat_ftp_experiment(9, default_ftp_radius(9)).row;
  EXPECT_GE(r3.min_dist_o_gs, 2u);
  EXPECT_LT(r5.ft_distance, r9.ft_distance);
  FtpReport rep{{r3, r5, r9}};
  EXPECT_EQ(rep.k(), r9.ft_distance);
  EXPECT_EQ(rep.to_csv().substr(0, rep.to_csv().find('\n')),
            "ell,d_u1v1,d_u2v2,min_dist_o_GS,passes_o,ft_distance");
}

TEST(Geodesics, ExperimentPreconditions) {
  EXPECT_EQ(code_of([] { flat_ftp_experiment(7, 10); }), ErrorCode::PatchTooSmall);
  EXPECT_EQ(code_of([] { flat_ftp_experiment(4, 20); }), ErrorCode::BadParameter);
}

TEST(Geodesics, RandomPairsInFlatsAreWellFormed) {
  std::mt19937 rng(20261015);
  for (auto [kind, n] : {std::pair{FlatKind::Eisenstein, 1u},
                         std::pair{FlatKind::FlatF, 1u},
                         std::pair{FlatKind::FlatFn, 3u}}) {
    auto   p    = gen_flat(kind, 8, n);
    auto   g    = skeleton(p);
    size_t safe = 0;
    std::uniform_int_distribution<vertex_id> pick(0, p.complex().number_of_vertices() - 1);
    for (int tries = 0; tries < 2000 && safe < 30; ++tries) {
      auto r = check_gersten_short(g, pick(rng), pick(rng));
      if (!r.interior_safe) {
        continue;
      }
      ++safe;
      EXPECT_TRUE(r.ok()) << to_string(kind, n) << ": " << r.error;
    }
    EXPECT_EQ(safe, 30u) << to_string(kind, n);
  }
}

TEST(Geodesics, RandomPairsInDevelopedBallsAreWellFormed) {
  std::mt19937 rng(20261015);
  for (auto entry : {CatalogEntry::x1(), CatalogEntry::x2()}) {
    auto                   b = develop(catalog(entry), "v", 4);
    auto                   g = skeleton(b);
    std::vector<vertex_id> deep;
    for (vertex_id v = 0; v < b.ball().number_of_vertices(); ++v) {
      if (g.rim_distance(v) >= 2) {
        deep.push_back(v);
      }
    }
    std::uniform_int_distribution<size_t> pick(0, deep.size() - 1);
    size_t                                safe = 0;
    for (int tries = 0; tries < 500 && safe < 20; ++tries) {
      auto r = check_gersten_short(g, deep[pick(rng)], deep[pick(rng)]);
      if (!r.interior_safe) {
        continue;
      }
      ++safe;
      EXPECT_TRUE(r.ok()) << entry.name() << ": " << r.error;
    }
    EXPECT_EQ(safe, 20u) << entry.name();
  }
}
