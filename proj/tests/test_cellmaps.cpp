#include <gtest/gtest.h>

#include "tsq/cellmaps.hpp"

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

  DirectedEdge image_of(FlatMap const& fm, Point const& p, Point const& q) {
    auto a = fm.patch.find(p), b = fm.patch.find(q);
    EXPECT_TRUE(a && b);
    Complex const& s = fm.patch.complex();
    for (edge_id e = 0; e < s.number_of_edges(); ++e) {
      auto const& rec = s.edges()[e];
      if (rec.from == *a && rec.to == *b) {
        return fm.map.edge({e, true});
      }
      if (rec.from == *b && rec.to == *a) {
        return fm.map.edge({e, false});
      }
    }
    ADD_FAILURE() << "no edge " << p.to_string() << " -> " << q.to_string();
    return {};
  }

  Point pt(Rational x, Rational x3, Rational y, Rational y3) {
    return {QSqrt3(x, x3), QSqrt3(y, y3)};
  }

}  // namespace

TEST(Cellmaps, IdentityOnCatalog) {
  for (auto const& e : CatalogEntry::all()) {
    auto m = identity_map(shared(catalog(e)));
    EXPECT_TRUE(check_link_injective(m).pass) << e.name();
  }
}

TEST(Cellmaps, SquareOntoTriangleIsKindMismatch) {
  auto sq = parse_complex("complex Q\nvertex P Q R S\nedge a: P -> Q\n"
                          "edge b: Q -> R\nedge c: R -> S\nedge d: S -> P\n"
                          "square S = a b c d\n");
  auto tri = parse_complex("complex T\nvertex x y z\nedge x: x -> y\n"
                           "edge y: y -> z\nedge z: z -> x\ntriangle T = x y z\n");
  std::vector<DirectedEdge> em{{0, true}, {0, false}, {0, true}, {0, false}};
  EXPECT_EQ(code_of([&] { make_map(sq, tri, {}, em); }), ErrorCode::KindMismatch);
}

TEST(Cellmaps, Violations) {
  auto x1 = shared(catalog(CatalogEntry::x1()));
  std::vector<DirectedEdge> em;
  for (edge_id e = 0; e < x1->number_of_edges(); ++e) {
    em.push_back({e, true});
  }
  std::swap(em[0], em[1]);
  EXPECT_EQ(code_of([&] { make_map(x1, x1, {}, em); }),
            ErrorCode::NoMatchingTargetFace);

  auto tri = shared(parse_complex("complex T\nvertex x y z\nedge a: x -> y\n"
                                  "edge b: y -> z\nedge c: z -> x\n"
                                  "triangle T = a b c\n"));
  std::vector<DirectedEdge> rot{{1, true}, {2, true}, {0, true}};
  EXPECT_NO_THROW(make_map(tri, tri, {}, rot));
  std::vector<vertex_id> bad_vm{0, 1, 2};
  EXPECT_EQ(code_of([&] { make_map(tri, tri, bad_vm, rot); }),
            ErrorCode::IncidenceViolation);
}

TEST(Cellmaps, ReflectionsOnlyWhenAllowed) {
  auto tri = shared(parse_complex("complex T\nvertex x y z\nedge a: x -> y\n"
                                  "edge b: y -> z\nedge c: z -> x\n"
                                  "triangle T = a b c\n"));
  // Swap x and y: a reversed, b and c exchanged and reversed.
  std::vector<DirectedEdge> flip{{0, false}, {2, false}, {1, false}};
  EXPECT_NO_THROW(make_map(tri, tri, {}, flip, true));
  EXPECT_EQ(code_of([&] { make_map(tri, tri, {}, flip, false); }),
            ErrorCode::NoMatchingTargetFace);
}

TEST(Cellmaps, FoldIsNotLinkInjective) {
  auto two = shared(parse_complex(
      "complex Two\nvertex x y z w\nedge a: x -> y\nedge b: y -> z\n"
      "edge c: z -> x\nedge d: x -> w\nedge e: w -> z\n"
      "triangle T = a b c\ntriangle U = d e c\n"));
  auto tri = shared(parse_complex("complex T\nvertex x y z\nedge a: x -> y\n"
                                  "edge b: y -> z\nedge c: z -> x\n"
                                  "triangle T = a b c\n"));
  std::vector<DirectedEdge> fold{{0, true}, {1, true}, {2, true}, {0, true}, {1, true}};
  auto m = make_map(two, tri, {}, fold);
  auto r = check_link_injective(m);
  EXPECT_FALSE(r.pass);
  ASSERT_FALSE(r.collisions.empty());
  EXPECT_TRUE(r.collisions.front().on_nodes);
}

TEST(Cellmaps, Sigma23IsInvolutiveAutomorphism) {
  auto s  = sigma23();
  auto ss = compose(s, s);
  EXPECT_TRUE(same_assignment(ss, identity_map(s.source_ptr())));
  std::vector<bool> hit_e(s.target().number_of_edges(), false);
  for (auto const& d : s.edge_map()) {
    hit_e[d.edge] = true;
  }
  EXPECT_TRUE(std::all_of(hit_e.begin(), hit_e.end(), [](bool b) { return b; }));
  std::vector<bool> hit_f(s.target().number_of_faces(), false);
  for (face_id f = 0; f < s.source().number_of_faces(); ++f) {
    hit_f[s.face(f).face] = true;
  }
  EXPECT_TRUE(std::all_of(hit_f.begin(), hit_f.end(), [](bool b) { return b; }));
  EXPECT_EQ(s.source().label(s.edge({s.source().edge("e2"), true}).edge), "e3");
  EXPECT_TRUE(check_link_injective(s).pass);
}

TEST(Cellmaps, MapDocumentRoundTrip) {
  auto s   = sigma23();
  auto doc = serialize_map(s);
  auto m   = parse_map(doc, s.source_ptr(), s.target_ptr());
  EXPECT_TRUE(same_assignment(m, s));

  auto x2 = s.source_ptr();
  EXPECT_EQ(code_of([&] { parse_map("edge e1 -> e9\n", x2, x2); }),
            ErrorCode::UnknownLabel);
  EXPECT_EQ(code_of([&] { parse_map("edge e1 => e1\n", x2, x2); }),
            ErrorCode::SyntaxError);
  EXPECT_EQ(code_of([&] { parse_map("edge e1 -> e1\n", x2, x2); }),
            ErrorCode::IncidenceViolation);
}

TEST(Cellmaps, FtoX1HorizontalStripEdgesAreG) {
  auto           fm = builtin_map(BuiltinMapKind::FtoX1, 1, 6);
  Complex const& s  = fm.patch.complex();
  Complex const& t  = fm.map.target();
  size_t         n  = 0;
  for (edge_id e = 0; e < s.number_of_edges(); ++e) {
    Point const p = fm.patch.coord(s.edges()[e].from);
    Point const q = fm.patch.coord(s.edges()[e].to);
    if ((q - p).y.sign() != 0) {
      continue;
    }
    DirectedEdge const leftward = (q - p).x.sign() < 0
                                      ? fm.map.edge({e, true})
                                      : fm.map.edge({e, false});
    EXPECT_EQ(t.token(leftward), "g");
    ++n;
  }
  EXPECT_GT(n, 10U);
}

TEST(Cellmaps, FtoX2HexagonTopIsF1) {
  auto fm = builtin_map(BuiltinMapKind::FtoX2, 1, 6);
  Rational const h(1, 2);
  auto top = image_of(fm, pt(-h, 0, 0, h), pt(h, 0, 0, h));
  EXPECT_EQ(fm.map.target().token(top), "f1");
}

TEST(Cellmaps, FlatMapsAreLinkInjective) {
  struct Case {
    BuiltinMapKind kind;
    unsigned       n;
  };
  for (auto c : {Case{BuiltinMapKind::FtoX1, 1},
                 Case{BuiltinMapKind::FntoX1, 1},
                 Case{BuiltinMapKind::FntoX1, 2},
                 Case{BuiltinMapKind::FtoX2, 1},
                 Case{BuiltinMapKind::F2n1toX2, 1},
                 Case{BuiltinMapKind::F2n1toX2, 2}}) {
    auto fm = builtin_map(c.kind, c.n, 8);
    auto r  = check_link_injective(fm.map);
    EXPECT_TRUE(r.pass) << to_string(c.kind) << " n=" << c.n << " "
                        << (r.collisions.empty() ? "" : r.collisions[0].description);
    EXPECT_GT(r.checked_vertices, 50U);
  }
}

TEST(Cellmaps, LatticeTilesAgree) {
  for (auto [kind, n] : std::vector<std::pair<BuiltinMapKind, unsigned>>{
           {BuiltinMapKind::FntoX1, 1},
           {BuiltinMapKind::FntoX1, 3},
           {BuiltinMapKind::F2n1toX2, 1},
           {BuiltinMapKind::F2n1toX2, 2},
           {BuiltinMapKind::F2n1toX2, 3}}) {
    unsigned const m = kind == BuiltinMapKind::F2n1toX2 ? 2 * n - 1 : n;
    auto           patch  = gen_flat(FlatKind::FlatFn, 6, m);
    Complex const  target = builtin_target(kind);
    CrumpledReducer red(m);
    size_t          shared_edges = 0;
    for (auto const& e : patch.complex().edges()) {
      auto imgs = flat_edge_images(kind, m, target, &red,
                                   patch.coord(e.from), patch.coord(e.to), true);
      ASSERT_FALSE(imgs.empty());
      shared_edges += imgs.size() > 1;
      for (auto const& d : imgs) {
        EXPECT_EQ(d, imgs.front()) << to_string(kind) << " n=" << n;
      }
    }
    EXPECT_GT(shared_edges, 0U);
  }
}

TEST(Cellmaps, LatticeTranslatesAgree) {
  unsigned const  m = 3;
  auto            patch  = gen_flat(FlatKind::FlatFn, 8, m);
  Complex const   x2     = catalog(CatalogEntry::x2());
  Complex const   x1     = catalog(CatalogEntry::x1());
  CrumpledReducer red(m);
  // Period of F_3 -> X1 is the full lattice; of F_3 -> X2 the even sublattice.
  Point const t1 = crumpled_lattice_point(m, 1, 0);
  Point const t2 = crumpled_lattice_point(m, 2, -1);
  size_t      compared = 0;
  for (auto const& e : patch.complex().edges()) {
    Point const p = patch.coord(e.from), q = patch.coord(e.to);
    if (!patch.find(p + t1) || !patch.find(q + t1) || !patch.find(p + t2)
        || !patch.find(q + t2)) {
      continue;
    }
    auto a1 = flat_edge_images(BuiltinMapKind::FntoX1, m, x1, &red, p, q, false);
    auto b1 = flat_edge_images(BuiltinMapKind::FntoX1, m, x1, &red, p + t1, q + t1, false);
    EXPECT_EQ(a1, b1);
    auto a2 = flat_edge_images(BuiltinMapKind::F2n1toX2, m, x2, &red, p, q, false);
    auto b2 = flat_edge_images(BuiltinMapKind::F2n1toX2, m, x2, &red, p + t2, q + t2, false);
    EXPECT_EQ(a2, b2);
    ++compared;
  }
  EXPECT_GT(compared, 20U);
}

TEST(Cellmaps, RuleLocality) {
  for (auto kind : {BuiltinMapKind::FtoX1, BuiltinMapKind::FtoX2,
                    BuiltinMapKind::FntoX1, BuiltinMapKind::F2n1toX2}) {
    auto big   = builtin_map(kind, 2, 6);
    auto small = builtin_map(kind, 2, 5);
    Complex const& s = small.patch.complex();
    for (edge_id e = 0; e < s.number_of_edges(); ++e) {
      Point const p = small.patch.coord(s.edges()[e].from);
      Point const q = small.patch.coord(s.edges()[e].to);
      EXPECT_EQ(small.map.edge({e, true}), image_of(big, p, q));
    }
  }
}
