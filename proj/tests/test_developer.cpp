#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <map>

#include "tsq/developer.hpp"

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

  std::shared_ptr<Complex const> shared(Complex c) {
    return std::make_shared<Complex const>(std::move(c));
  }

  Complex triangle() {
    return parse_complex(
        "complex T\nvertex x y z\nedge a: x -> y\nedge b: y -> z\nedge c: z -> x\n"
        "triangle T = a b c\n");
  }

  // Source vertices grouped by image.
  std::vector<std::vector<vertex_id>> fibres(CellularMap const& m) {
    std::map<vertex_id, std::vector<vertex_id>> by_image;
    for (vertex_id v = 0; v < m.source().number_of_vertices(); ++v) {
      by_image[m.vertex(v)].push_back(v);
    }
    std::vector<std::vector<vertex_id>> out;
    for (auto& [_, vs] : by_image) {
      out.push_back(vs);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

}  // namespace

TEST(Developer, RadiusOneOfX1HasOneNeighbourPerLinkNode) {
  auto x1 = catalog(CatalogEntry::x1());
  auto b  = develop(x1, "v", 1);
  EXPECT_EQ(build_link(x1, "v").number_of_nodes(), 18u);
  EXPECT_EQ(vertices_within(b, 1), 19u);
  EXPECT_TRUE(interior_skeleton_is_simple(b));
  EXPECT_TRUE(link_isomorphism_failures(b).empty());
  EXPECT_EQ(std::count(b.interior().begin(), b.interior().end(), true), 1);
}

TEST(Developer, OneTriangleIsItsOwnCover) {
  auto t = triangle();
  for (auto const& v : t.vertices()) {
    auto b = develop(t, v, 2);
    EXPECT_EQ(b.ball().number_of_vertices(), 3u);
    EXPECT_EQ(b.ball().number_of_edges(), 3u);
    EXPECT_EQ(b.ball().number_of_faces(), 1u);
    EXPECT_EQ(euler_characteristic(b.ball()), 1);
    EXPECT_EQ(check_link_injective(b.projection()).pass, true);
  }
}

TEST(Developer, X2LinksAtInteriorVertices) {
  auto x2 = catalog(CatalogEntry::x2());
  for (std::string v : {"v", "c"}) {
    auto b = develop(x2, v, 2);
    EXPECT_GT(std::count(b.interior().begin(), b.interior().end(), true), 0);
    EXPECT_TRUE(link_isomorphism_failures(b).empty()) << v;
    EXPECT_TRUE(interior_skeleton_is_simple(b)) << v;
    for (vertex_id x = 0; x < b.ball().number_of_vertices(); ++x) {
      EXPECT_TRUE(!b.is_interior(x) || b.distance(x) <= 1u);
    }
  }
}

TEST(Developer, RadiusThreeInvariants) {
  for (auto entry : {CatalogEntry::x1(), CatalogEntry::x2()}) {
    auto c = catalog(entry);
    auto b = develop(c, "v", 3);
    EXPECT_TRUE(link_isomorphism_failures(b).empty()) << entry.name();
    EXPECT_TRUE(interior_skeleton_is_simple(b)) << entry.name();
    EXPECT_TRUE(canonically_equal(b, develop(c, "v", 3))) << entry.name();
    EXPECT_EQ(euler_characteristic(b.ball()), 1) << entry.name();
  }
}

TEST(Developer, ShellsGrow) {
  auto b = develop(catalog(CatalogEntry::x1()), "v", 3);
  auto s = b.shell_sizes();
  ASSERT_GE(s.size(), 3u);
  EXPECT_EQ(s[0], 1u);
  EXPECT_EQ(s[1], 18u);
  EXPECT_LT(s[1], s[2]);
}

TEST(Developer, RejectsBaseFailingLinkCondition) {
  auto bad = catalog(CatalogEntry::x2_prime(0));
  EXPECT_EQ(code_of([&] { develop(bad, "v", 1); }), ErrorCode::PreconditionFailed);
}

TEST(Developer, BudgetIsEnforced) {
  auto x1 = shared(catalog(CatalogEntry::x1()));
  EXPECT_EQ(code_of([&] { develop(x1, 0, 3, 100); }), ErrorCode::ResourceLimit);
  EXPECT_NO_THROW(develop(x1, 0, 1, 100));
}

TEST(Developer, BudgetFromEnvironment) {
  ::setenv("TSQ_CELL_BUDGET", "50", 1);
  EXPECT_EQ(cell_budget_from_environment(), 50u);
  auto x1 = shared(catalog(CatalogEntry::x1()));
  EXPECT_EQ(code_of([&] { develop(x1, 0, 2); }), ErrorCode::ResourceLimit);
  ::unsetenv("TSQ_CELL_BUDGET");
  EXPECT_EQ(cell_budget_from_environment(), default_cell_budget);
}

TEST(Developer, SmallerBallLiftsIntoLarger) {
  auto x2 = shared(catalog(CatalogEntry::x2()));
  auto small = develop(x2, x2->vertex("v"), 2);
  auto large = develop(x2, x2->vertex("v"), 3);
  auto l     = lift(small.projection(), large, small.basepoint_lift(), large.basepoint_lift());
  EXPECT_TRUE(l.commutes);
  EXPECT_TRUE(vertex_collisions(l.lift).empty());
  for (vertex_id x = 0; x < small.ball().number_of_vertices(); ++x) {
    EXPECT_EQ(large.distance(l.lift.vertex(x)), small.distance(x));
  }
}

TEST(Developer, IdentityLiftsToInclusion) {
  auto t = shared(triangle());
  auto b = develop(t, 0, 2);
  auto l = lift(identity_map(t), b, 0, b.basepoint_lift());
  EXPECT_TRUE(l.commutes);
  EXPECT_TRUE(vertex_collisions(l.lift).empty());
}

TEST(Developer, AnchorMismatch) {
  auto x2 = shared(catalog(CatalogEntry::x2()));
  auto b  = develop(x2, x2->vertex("v"), 2);
  auto fm = builtin_map(BuiltinMapKind::FtoX2, 1, 2);
  // o goes to the centre c; the basepoint lift covers v.
  EXPECT_EQ(code_of([&] { lift(fm.map, b, fm.patch.center(), b.basepoint_lift()); }),
            ErrorCode::AnchorMismatch);
}

TEST(Developer, BallTooSmall) {
  auto fm = builtin_map(BuiltinMapKind::FtoX1, 1, 6);
  auto x1 = fm.map.target_ptr();
  auto b  = develop(x1, 0, 2);
  EXPECT_EQ(code_of([&] { lift(fm.map, b, fm.patch.center(), b.basepoint_lift()); }),
            ErrorCode::BallTooSmall);
  EXPECT_EQ(code_of([&] { lift_on_demand(fm.map, fm.patch.center(), 3); }),
            ErrorCode::BallTooSmall);
}

TEST(Developer, OnDemandAgreesWithFullBall) {
  for (auto kind : {BuiltinMapKind::FtoX1, BuiltinMapKind::FtoX2}) {
    auto fm   = builtin_map(kind, 1, 3);
    auto sub  = restrict_to_radius(fm, 2);
    auto o    = sub.source().vertex("o");
    auto full = develop(sub.target_ptr(), sub.vertex(o), 4);
    auto a    = lift(sub, full, o, full.basepoint_lift());
    auto b    = lift_on_demand(sub, o, 4);
    EXPECT_TRUE(a.commutes);
    EXPECT_TRUE(b.commutes);
    EXPECT_EQ(fibres(a.lift), fibres(b.lift)) << to_string(kind);
    for (vertex_id v = 0; v < sub.source().number_of_vertices(); ++v) {
      EXPECT_EQ(a.ball.distance(a.lift.vertex(v)), b.ball.distance(b.lift.vertex(v)));
    }
  }
}

TEST(Developer, RadialFlatsEmbed) {
  for (auto kind : {BuiltinMapKind::FtoX1, BuiltinMapKind::FtoX2}) {
    auto fm = builtin_map(kind, 1, 6);
    auto l  = lift_on_demand(fm.map, fm.patch.center(), 8);
    EXPECT_TRUE(l.commutes) << to_string(kind);
    EXPECT_TRUE(vertex_collisions(l.lift).empty()) << to_string(kind);
  }
}

TEST(Developer, OnDemandAgreesWithFullBallOfRadiusFive) {
  auto fm   = builtin_map(BuiltinMapKind::FtoX2, 1, 5);
  auto sub  = restrict_to_radius(fm, 3);
  auto o    = sub.source().vertex("o");
  auto full = develop(sub.target_ptr(), sub.vertex(o), 5);
  auto a    = lift(sub, full, o, full.basepoint_lift());
  auto b    = lift_on_demand(sub, o, 5);
  EXPECT_EQ(fibres(a.lift), fibres(b.lift));
  EXPECT_TRUE(vertex_collisions(a.lift).empty());
  EXPECT_LT(b.ball.ball().number_of_faces(), full.ball().number_of_faces());
}
