// Acceptance suite: one PASS/FAIL line per criterion, with timings and the
// measured values behind each verdict.

#include <array>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "tsq/catalog.hpp"
#include "tsq/geodesics.hpp"
#include "tsq/specio.hpp"

using namespace tsq;

namespace {

  struct Outcome {
    bool        pass = true;
    std::string notes;
  };

  // Records failed expectations; the first few are kept for the report.
  class Checker {
   public:
    void expect(bool ok, std::string const& what) {
      if (!ok) {
        _pass = false;
        if (_failures++ < 5) {
          _notes << " [failed: " << what << "]";
        }
      }
    }
    template <class T>
    void note(std::string const& key, T const& value) {
      _notes << ' ' << key << '=' << value;
    }
    Outcome outcome() const {
      return {_pass, _notes.str()};
    }

   private:
    bool               _pass     = true;
    size_t             _failures = 0;
    std::ostringstream _notes;
  };

  Complex from_triangles(std::string const& name, std::vector<std::array<int, 3>> const& tris) {
    ComplexDescription                          d;
    std::map<std::pair<int, int>, std::string> label;
    d.name = name;
    int top = 0;
    for (auto const& t : tris) {
      for (int v : t) {
        top = std::max(top, v);
      }
    }
    for (int v = 0; v <= top; ++v) {
      d.vertices.push_back("v" + std::to_string(v));
    }
    for (auto const& t : tris) {
      FaceSpec fs{"t" + std::to_string(d.faces.size()), FaceKind::Triangle, {}, 0};
      for (int i = 0; i < 3; ++i) {
        int a = t[i], b = t[(i + 1) % 3];
        if (auto it = label.find({b, a}); it != label.end()) {
          fs.boundary.push_back({it->second, false, 0, 0});
          continue;
        }
        auto [it, fresh] = label.emplace(std::pair{a, b}, "e" + std::to_string(d.edges.size()));
        if (fresh) {
          d.edges.push_back({it->second, d.vertices[a], d.vertices[b], 0});
        }
        fs.boundary.push_back({it->second, true, 0, 0});
      }
      d.faces.push_back(std::move(fs));
    }
    return build_complex(d);
  }

  Complex octahedron() {
    return from_triangles("octahedron", {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1},
                                         {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {5, 1, 4}});
  }

  Outcome cat0_verdicts() {
    Checker c;
    for (auto e : {CatalogEntry::x1(), CatalogEntry::x2()}) {
      auto x = catalog(e);
      auto r = check_gromov(x);
      c.expect(r.pass && r.min_weight() && *r.min_weight() >= 12, e.name() + " passes");
      c.note(e.name() + ".min", *r.min_weight());
    }
    auto x2     = catalog(CatalogEntry::x2());
    auto centre = shortest_injective_cycle(build_link(x2, "c"));
    c.expect(centre && centre->total_weight == 12, "X2 centre minimum is exactly 12");
    for (unsigned k = 0; k < 8; ++k) {
      auto x   = catalog(CatalogEntry::x2_prime(k));
      auto r   = check_gromov(x);
      auto bad = r.first_failure();
      c.expect(!r.pass && bad && bad->shortest && bad->shortest->total_weight < 12
                   && is_valid_cycle(build_link(x, bad->vertex), *bad->shortest),
               x.name() + " fails with a witness below 12");
    }
    auto drawn = catalog(CatalogEntry::x2_prime(0));
    auto g     = build_link(drawn, "v");
    auto w     = shortest_injective_cycle(g);
    c.expect(w && w->total_weight == 10, "drawn variant witness weighs 10");
    c.expect(oracle::min_simple_cycle(g) == 10, "enumeration confirms 10");
    c.note("drawn", w ? w->total_weight : -1);
    return c.outcome();
  }

  Outcome systolicity() {
    Checker c;
    auto    r = check_systolic_cover(catalog(CatalogEntry::x1_prime()));
    c.expect(r.pass, "X1' is systolic");
    for (auto e : {CatalogEntry::x1(), CatalogEntry::x2()}) {
      bool refused = false;
      try {
        check_systolic_cover(catalog(e));
      } catch (Error const& err) {
        refused = err.code() == ErrorCode::NotTriangleComplex;
      }
      c.expect(refused, e.name() + " is refused as NotTriangleComplex");
    }
    return c.outcome();
  }

  Outcome oracle_equivalence() {
    Checker c;
    size_t  graphs = 0;
    for (auto const& e : CatalogEntry::all()) {
      auto x = catalog(e);
      for (auto const& g : all_links(x)) {
        auto w = shortest_injective_cycle(g);
        auto o = oracle::min_simple_cycle(g);
        c.expect(w.has_value() == o.has_value() && (!w || w->total_weight == *o),
                 e.name() + " link agrees with enumeration");
        ++graphs;
      }
    }
    std::vector<Complex> triangular{catalog(CatalogEntry::x1_prime()), octahedron(),
                                    gen_flat(FlatKind::Eisenstein, 3).complex()};
    for (auto const& x : triangular) {
      c.expect(check_gromov(x).pass == check_systolic_cover(x).pass,
               x.name() + ": link condition iff systolic");
    }
    c.expect(!check_gromov(triangular[1]).pass, "octahedron is positively curved");
    c.note("link_graphs", graphs);
    return c.outcome();
  }

  Outcome embeddings() {
    Checker c;
    struct Case {
      BuiltinMapKind kind;
      unsigned       n;
    };
    std::vector<Case> cases{{BuiltinMapKind::FtoX1, 1}, {BuiltinMapKind::FtoX2, 1}};
    for (unsigned n = 1; n <= 4; ++n) {
      cases.push_back({BuiltinMapKind::FntoX1, n});
    }
    for (unsigned n = 1; n <= 3; ++n) {
      cases.push_back({BuiltinMapKind::F2n1toX2, n});
    }
    size_t most_faces = 0;
    for (auto const& k : cases) {
      std::string const name = to_string(k.kind) + "(n=" + std::to_string(k.n) + ")";
      try {
        auto fm  = builtin_map(k.kind, k.n, 8);
        auto inj = check_link_injective(fm.map);
        c.expect(inj.pass, name + " link-injective");
        // Only the stars the lift passes through are developed; every
        // completed vertex lies within distance 9 of the basepoint lift.
        auto              l = lift_on_demand(fm.map, fm.patch.center(), 10, default_cell_budget);
        std::vector<bool> among(fm.patch.complex().number_of_vertices());
        for (vertex_id v = 0; v < among.size(); ++v) {
          among[v] = fm.patch.depth(v) <= 6;
        }
        c.expect(l.commutes, name + " lift commutes");
        c.expect(vertex_collisions(l.lift, among).empty(), name + " injective on radius 6");
        most_faces = std::max(most_faces, l.ball.ball().number_of_faces());
      } catch (Error const& e) {
        c.expect(false, name + ": " + e.what());
      }
    }
    c.note("maps", cases.size());
    c.note("max_faces_developed", most_faces);
    c.note("development", "on-demand");
    return c.outcome();
  }

  Outcome developer_invariants() {
    Checker c;
    auto    x1 = catalog(CatalogEntry::x1());
    c.expect(vertices_within(develop(x1, "v", 1), 1) == 19, "19 vertices within distance 1");
    for (auto e : {CatalogEntry::x1(), CatalogEntry::x2()}) {
      auto x = catalog(e);
      auto b = develop(x, "v", 3);
      c.expect(link_isomorphism_failures(b).empty(), e.name() + " link isomorphisms");
      c.expect(interior_skeleton_is_simple(b), e.name() + " simple skeleton");
      c.expect(canonically_equal(b, develop(x, "v", 3)), e.name() + " deterministic");
      c.note(e.name() + ".faces", b.ball().number_of_faces());
    }
    return c.outcome();
  }

  Outcome non_fellow_traveling() {
    Checker c;
    size_t  last = 0;
    for (size_t ell : {3, 5, 7}) {
      auto const r = flat_ftp_experiment(ell, default_ftp_radius(ell)).row;
      c.expect(r.min_dist_o_gs >= (ell + 1) / 2, "separation for ell=" + std::to_string(ell));
      c.expect(r.passes_o, "every u2-v2 geodesic passes o for ell=" + std::to_string(ell));
      c.expect(r.ft_distance > last, "fellow-travel distance grows at ell=" + std::to_string(ell));
      last = r.ft_distance;
      c.note("ell" + std::to_string(ell),
             std::to_string(r.min_dist_o_gs) + "/" + std::to_string(r.ft_distance));
    }
    return c.outcome();
  }

  Outcome gs_well_formed() {
    Checker      c;
    std::mt19937 rng(20261015);
    size_t       total = 0;
    auto         sample = [&](Skeleton const& g, std::string const& name, size_t want) {
      std::vector<vertex_id> deep;
      for (vertex_id v = 0; v < g.size(); ++v) {
        if (g.rim_distance(v) >= 2) {
          deep.push_back(v);
        }
      }
      std::uniform_int_distribution<size_t> pick(0, deep.size() - 1);
      size_t                                got = 0;
      for (int tries = 0; tries < 5000 && got < want; ++tries) {
        auto r = check_gersten_short(g, deep[pick(rng)], deep[pick(rng)]);
        if (r.interior_safe) {
          ++got;
          c.expect(r.ok(), name + ": " + r.error);
        }
      }
      c.expect(got == want, name + " supplies enough safe pairs");
      total += got;
    };
    for (auto [kind, n] : {std::pair{FlatKind::Eisenstein, 1u}, std::pair{FlatKind::FlatF, 1u},
                           std::pair{FlatKind::FlatFn, 3u}}) {
      auto p = gen_flat(kind, 8, n);
      sample(skeleton(p), to_string(kind, n), 40);
    }
    for (auto e : {CatalogEntry::x1(), CatalogEntry::x2()}) {
      auto b = develop(catalog(e), "v", 4);
      sample(skeleton(b), e.name() + " ball", 40);
    }
    c.note("pairs", total);
    return c.outcome();
  }

  Outcome structural_facts() {
    Checker c;
    for (auto const& e : CatalogEntry::all()) {
      auto x = catalog(e);
      c.expect(structurally_equal(parse_complex(serialize(x)), x), e.name() + " round trip");
      c.expect(serialize(parse_complex(serialize(x))) == serialize(x), e.name() + " text fixpoint");
    }
    for (auto e : {CatalogEntry::x1(), CatalogEntry::x1_prime(), CatalogEntry::x2()}) {
      c.expect(euler_characteristic(catalog(e)) == 1, e.name() + " euler characteristic 1");
    }
    auto s = sigma23();
    c.expect(same_assignment(compose(s, s), identity_map(s.source_ptr())), "sigma23 involutive");
    std::set<vertex_id> images;
    for (vertex_id v = 0; v < s.source().number_of_vertices(); ++v) {
      images.insert(s.vertex(v));
    }
    c.expect(images.size() == s.source().number_of_vertices(), "sigma23 bijective on vertices");
    c.expect(corners(gen_flat(FlatKind::FlatF, 3)).size() == 6, "6 corners");
    c.expect(regions(gen_flat(FlatKind::FlatF, 5)).size() == 13, "13 regions");
    return c.outcome();
  }

}  // namespace

int main() {
  struct Criterion {
    int                      id;
    std::string              title;
    double                   limit_s;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria{
      {1, "CAT(0) verdicts", 1, cat0_verdicts},
      {2, "systolicity", 1, systolicity},
      {3, "oracle equivalence", 10, oracle_equivalence},
      {4, "flat embeddings into developed covers", 60, embeddings},
      {5, "developer invariants", 30, developer_invariants},
      {6, "non-fellow-traveling in the radial flat", 60, non_fellow_traveling},
      {7, "Gersten-Short well-formedness", 120, gs_well_formed},
      {8, "round trips and structural facts", 5, structural_facts},
  };
  bool all = true;
  for (auto const& c : criteria) {
    auto    t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (std::exception const& e) {
      o = {false, std::string(" [exception: ") + e.what() + "]"};
    }
    double const s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool const   ok = o.pass && s < c.limit_s;
    all             = all && ok;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " ("
              << s << " s, limit " << c.limit_s << " s)" << o.notes << std::endl;
  }
  return all ? 0 : 1;
}
