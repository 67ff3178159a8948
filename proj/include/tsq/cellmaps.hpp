#ifndef TSQ_CELLMAPS_HPP_
#define TSQ_CELLMAPS_HPP_

// Cellular maps between complexes, link injectivity, and the explicit maps
// of the flats into X1 and X2.

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "catalog.hpp"
#include "complex.hpp"
#include "flats.hpp"
#include "links.hpp"
#include "specio.hpp"

namespace tsq {

  // Where a source face lands: the target face and how the boundary words
  // line up.
  struct FaceImage {
    face_id   face = 0;
    Alignment alignment;
  };

  class CellularMap {
   public:
    CellularMap() = default;

    Complex const& source() const noexcept {
      return *_source;
    }
    Complex const& target() const noexcept {
      return *_target;
    }
    std::shared_ptr<Complex const> source_ptr() const noexcept {
      return _source;
    }
    std::shared_ptr<Complex const> target_ptr() const noexcept {
      return _target;
    }

    vertex_id vertex(vertex_id v) const {
      return _vertex_map[v];
    }
    // Image of a directed source edge.
    DirectedEdge edge(DirectedEdge d) const {
      DirectedEdge img = _edge_map[d.edge];
      return d.forward ? img : img.reversed();
    }
    FaceImage const& face(face_id f) const {
      return _face_map[f];
    }
    std::vector<vertex_id> const& vertex_map() const noexcept {
      return _vertex_map;
    }
    std::vector<DirectedEdge> const& edge_map() const noexcept {
      return _edge_map;
    }

    // Source vertices at which link injectivity is meaningful; all of them
    // unless restricted (patch boundaries have partial links).
    bool checked(vertex_id v) const {
      return _checked.empty() || _checked[v];
    }
    void restrict_checks(std::vector<bool> mask) {
      _checked = std::move(mask);
    }

    friend CellularMap make_map(std::shared_ptr<Complex const>,
                                std::shared_ptr<Complex const>,
                                std::vector<vertex_id>,
                                std::vector<DirectedEdge>,
                                bool);

   private:
    std::shared_ptr<Complex const> _source;
    std::shared_ptr<Complex const> _target;
    std::vector<vertex_id>         _vertex_map;
    std::vector<DirectedEdge>      _edge_map;
    std::vector<FaceImage>         _face_map;
    std::vector<bool>              _checked;
  };

  // Validates and returns a cellular map. An empty vertex_map is derived
  // from the edge images. Faces may land reflected unless strict.
  inline CellularMap make_map(std::shared_ptr<Complex const> source,
                              std::shared_ptr<Complex const> target,
                              std::vector<vertex_id>         vertex_map,
                              std::vector<DirectedEdge>      edge_map,
                              bool                           allow_reflection = true) {
    Complex const& s = *source;
    Complex const& t = *target;
    if (edge_map.size() != s.number_of_edges()) {
      throw Error(ErrorCode::IncidenceViolation, "edge map is not total");
    }
    for (auto const& d : edge_map) {
      if (d.edge >= t.number_of_edges()) {
        throw Error(ErrorCode::IncidenceViolation, "edge image out of range");
      }
    }
    constexpr vertex_id none = UINT32_MAX;
    if (vertex_map.empty()) {
      vertex_map.assign(s.number_of_vertices(), none);
      for (edge_id e = 0; e < s.number_of_edges(); ++e) {
        for (auto [v, w] : {std::pair{s.edges()[e].from, t.initial(edge_map[e])},
                            std::pair{s.edges()[e].to, t.terminal(edge_map[e])}}) {
          if (vertex_map[v] == none) {
            vertex_map[v] = w;
          }
        }
      }
    }
    if (vertex_map.size() != s.number_of_vertices()) {
      throw Error(ErrorCode::IncidenceViolation, "vertex map is not total");
    }
    for (vertex_id v = 0; v < s.number_of_vertices(); ++v) {
      if (vertex_map[v] == none || vertex_map[v] >= t.number_of_vertices()) {
        throw Error(ErrorCode::IncidenceViolation,
                    "vertex '" + s.vertices()[v] + "' has no image");
      }
    }
    for (edge_id e = 0; e < s.number_of_edges(); ++e) {
      auto const& rec = s.edges()[e];
      if (t.initial(edge_map[e]) != vertex_map[rec.from]
          || t.terminal(edge_map[e]) != vertex_map[rec.to]) {
        throw Error(ErrorCode::IncidenceViolation,
                    "edge '" + rec.label + "' maps to '"
                        + t.token(edge_map[e])
                        + "' whose endpoints are not the images of its own");
      }
    }

    CellularMap m;
    m._source     = std::move(source);
    m._target     = std::move(target);
    m._vertex_map = std::move(vertex_map);
    m._edge_map   = std::move(edge_map);
    m._face_map.reserve(s.number_of_faces());
    for (face_id f = 0; f < s.number_of_faces(); ++f) {
      auto const& face = s.faces()[f];
      Word        img;
      for (auto const& l : face.boundary) {
        img.push_back(m.edge(l));
      }
      std::optional<FaceImage> found;
      for (face_id g = 0; g < t.number_of_faces() && !found; ++g) {
        if (t.faces()[g].kind != face.kind) {
          continue;
        }
        if (auto al = align_words(img, t.faces()[g].boundary, allow_reflection)) {
          found = FaceImage{g, *al};
        }
      }
      if (!found) {
        std::string word;
        for (auto const& l : img) {
          word += " " + t.token(l);
        }
        for (auto const& g : t.faces()) {
          if (g.kind == face.kind) {
            continue;
          }
          bool inside = true;
          for (auto const& l : img) {
            bool hit = false;
            for (auto const& k : g.boundary) {
              hit = hit || k.edge == l.edge;
            }
            inside = inside && hit;
          }
          if (inside) {
            throw Error(ErrorCode::KindMismatch,
                        std::string(to_string(face.kind)) + " '" + face.id
                            + "' lands on " + to_string(g.kind) + " '"
                            + g.id + "'");
          }
        }
        throw Error(ErrorCode::NoMatchingTargetFace,
                    "face '" + face.id + "' maps to" + word
                        + ", which bounds no target "
                        + to_string(face.kind));
      }
      m._face_map.push_back(*found);
    }
    return m;
  }

  inline CellularMap make_map(Complex source,
                              Complex target,
                              std::vector<vertex_id>    vertex_map,
                              std::vector<DirectedEdge> edge_map,
                              bool                      allow_reflection = true) {
    return make_map(std::make_shared<Complex const>(std::move(source)),
                    std::make_shared<Complex const>(std::move(target)),
                    std::move(vertex_map),
                    std::move(edge_map),
                    allow_reflection);
  }

  inline CellularMap identity_map(std::shared_ptr<Complex const> c) {
    std::vector<vertex_id>    vm(c->number_of_vertices());
    std::vector<DirectedEdge> em(c->number_of_edges());
    for (vertex_id v = 0; v < vm.size(); ++v) {
      vm[v] = v;
    }
    for (edge_id e = 0; e < em.size(); ++e) {
      em[e] = {e, true};
    }
    return make_map(c, c, std::move(vm), std::move(em));
  }

  // b after a.
  inline CellularMap compose(CellularMap const& b, CellularMap const& a) {
    std::vector<vertex_id>    vm;
    std::vector<DirectedEdge> em;
    for (vertex_id v : a.vertex_map()) {
      vm.push_back(b.vertex(v));
    }
    for (auto const& d : a.edge_map()) {
      em.push_back(b.edge(d));
    }
    return make_map(a.source_ptr(), b.target_ptr(), std::move(vm), std::move(em));
  }

  inline bool same_assignment(CellularMap const& a, CellularMap const& b) {
    return a.vertex_map() == b.vertex_map() && a.edge_map() == b.edge_map();
  }

  ////////////////////////////////////////////////////////////////////////
  // Link injectivity
  ////////////////////////////////////////////////////////////////////////

  struct LinkCollision {
    vertex_id vertex = 0;
    bool      on_nodes = true;  // false: two arcs collide
    // Colliding source items (node or arc indices in the source link) and
    // the shared image described in words.
    size_t      first  = 0;
    size_t      second = 0;
    std::string description;
  };

  struct InjectivityReport {
    bool                       pass = true;
    size_t                     checked_vertices = 0;
    size_t                     skipped_vertices = 0;
    std::vector<LinkCollision> collisions;
    std::string                conclusion;
  };

  inline EdgeEnd image_end(CellularMap const& m, EdgeEnd e) {
    DirectedEdge const d = m.edge({e.edge, true});
    return e.end == End::Initial ? departure_end(d) : arrival_end(d);
  }

  // Injectivity of the induced link maps on nodes and arcs at every checked
  // source vertex.
  inline InjectivityReport check_link_injective(CellularMap const& m,
                                                size_t max_collisions = 16) {
    InjectivityReport r;
    Complex const&    s     = m.source();
    Complex const&    t     = m.target();
    auto const        links = all_links(s);
    for (vertex_id v = 0; v < s.number_of_vertices(); ++v) {
      if (!m.checked(v)) {
        ++r.skipped_vertices;
        continue;
      }
      ++r.checked_vertices;
      auto const& g = links[v];
      std::map<EdgeEnd, size_t> seen_nodes;
      for (size_t k = 0; k < g.number_of_nodes(); ++k) {
        EdgeEnd img = image_end(m, g.nodes()[k]);
        auto [it, fresh] = seen_nodes.emplace(img, k);
        if (!fresh) {
          r.pass = false;
          if (r.collisions.size() < max_collisions) {
            r.collisions.push_back(
                {v, true, it->second, k,
                 node_name(s, g.nodes()[it->second]) + " and "
                     + node_name(s, g.nodes()[k]) + " both map to "
                     + node_name(t, img)});
          }
        }
      }
      std::map<std::pair<face_id, size_t>, size_t> seen_arcs;
      for (size_t k = 0; k < g.number_of_arcs(); ++k) {
        auto const& arc = g.arcs()[k];
        auto const& fi  = m.face(arc.face);
        size_t const n  = s.faces()[arc.face].boundary.size();
        std::pair<face_id, size_t> img{fi.face, fi.alignment.corner(arc.corner, n)};
        auto [it, fresh] = seen_arcs.emplace(img, k);
        if (!fresh) {
          r.pass = false;
          if (r.collisions.size() < max_collisions) {
            r.collisions.push_back(
                {v, false, it->second, k,
                 "corners " + s.faces()[g.arcs()[it->second].face].id + ":"
                     + std::to_string(g.arcs()[it->second].corner) + " and "
                     + s.faces()[arc.face].id + ":"
                     + std::to_string(arc.corner) + " both map to "
                     + t.faces()[img.first].id + ":"
                     + std::to_string(img.second)});
          }
        }
      }
    }
    if (r.pass) {
      r.conclusion = "link maps injective at all " + std::to_string(r.checked_vertices)
                     + " checked vertices; if the target is locally CAT(0) the "
                       "source embeds in the universal cover of the target";
    } else {
      r.conclusion = "link map not injective";
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Map documents
  ////////////////////////////////////////////////////////////////////////

  // Lines "vertex <src> -> <dst>" and "edge <src-label> -> [-]<dst-label>";
  // vertex lines may be omitted when edges determine them.
  inline CellularMap parse_map(std::string_view               text,
                               std::shared_ptr<Complex const> source,
                               std::shared_ptr<Complex const> target) {
    using detail::Token;
    constexpr vertex_id       none = UINT32_MAX;
    std::vector<vertex_id>    vm(source->number_of_vertices(), none);
    std::vector<DirectedEdge> em(source->number_of_edges());
    std::vector<bool>         have(source->number_of_edges(), false);
    bool                      any_vertex = false;
    size_t                    lineno = 0, start = 0;
    while (start <= text.size()) {
      size_t end = text.find('\n', start);
      if (end == std::string_view::npos) {
        end = text.size();
      }
      std::string_view line = text.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
      }
      ++lineno;
      start = end + 1;
      detail::LineParser p(detail::lex_line(line, lineno), lineno);
      if (p.peek().kind == Token::Kind::End) {
        continue;
      }
      Token const kw = p.expect(Token::Kind::Ident, "'vertex' or 'edge'");
      if (kw.text == "vertex") {
        Token const a = p.expect(Token::Kind::Ident, "a source vertex");
        p.expect(Token::Kind::Arrow, "'->'");
        Token const b = p.expect(Token::Kind::Ident, "a target vertex");
        p.expect_end();
        auto sv = source->find_vertex(a.text);
        auto tv = target->find_vertex(b.text);
        if (!sv || !tv) {
          throw Error(ErrorCode::UnknownVertex,
                      lineno,
                      (sv ? b : a).column,
                      "unknown vertex '" + (sv ? b : a).text + "'");
        }
        vm[*sv]    = *tv;
        any_vertex = true;
      } else if (kw.text == "edge") {
        Token const a = p.expect(Token::Kind::Ident, "a source edge label");
        p.expect(Token::Kind::Arrow, "'->'");
        bool forward = true;
        if (p.peek().kind == Token::Kind::Minus) {
          p.expect(Token::Kind::Minus, "'-'");
          forward = false;
        }
        Token const b = p.expect(Token::Kind::Ident, "a target edge label");
        p.expect_end();
        auto se = source->find_edge(a.text);
        auto te = target->find_edge(b.text);
        if (!se || !te) {
          throw Error(ErrorCode::UnknownLabel,
                      lineno,
                      (se ? b : a).column,
                      "unknown edge '" + (se ? b : a).text + "'");
        }
        em[*se]   = {*te, forward};
        have[*se] = true;
      } else {
        throw Error(ErrorCode::SyntaxError,
                    lineno,
                    kw.column,
                    "unknown keyword '" + kw.text + "', expected vertex or edge");
      }
    }
    for (edge_id e = 0; e < have.size(); ++e) {
      if (!have[e]) {
        throw Error(ErrorCode::IncidenceViolation,
                    "edge '" + source->label(e) + "' has no image");
      }
    }
    if (any_vertex) {
      // Fill the gaps from edges; make_map checks consistency.
      for (edge_id e = 0; e < em.size(); ++e) {
        auto const& rec = source->edges()[e];
        if (vm[rec.from] == none) {
          vm[rec.from] = target->initial(em[e]);
        }
        if (vm[rec.to] == none) {
          vm[rec.to] = target->terminal(em[e]);
        }
      }
    } else {
      vm.clear();
    }
    return make_map(std::move(source), std::move(target), std::move(vm), std::move(em));
  }

  inline std::string serialize_map(CellularMap const& m) {
    std::string    out;
    Complex const& s = m.source();
    Complex const& t = m.target();
    for (vertex_id v = 0; v < s.number_of_vertices(); ++v) {
      out += "vertex " + s.vertices()[v] + " -> " + t.vertices()[m.vertex(v)] + "\n";
    }
    for (edge_id e = 0; e < s.number_of_edges(); ++e) {
      out += "edge " + s.label(e) + " -> " + t.token(m.edge({e, true})) + "\n";
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Edge rules on the flat F (hexagon centred at the origin, strip k along
  // the ray at 30 + 60k degrees, triangle cone j with apex u_j = w(60j))
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    // Cone j of F: apex u_j, sides along w(60j - 30) and w(60j + 30).
    inline bool in_cone(Point const& p, int j) {
      Point const apex = unit_at_30(2 * j);
      Point const a    = unit_at_30(2 * j - 1);
      Point const b    = unit_at_30(2 * j + 1);
      Point const d    = p - apex;
      return cross(a, d).sign() >= 0 && cross(d, b).sign() >= 0;
    }

    // The cone containing an edge whose direction is an odd multiple of 30
    // degrees; such edges of F lie in exactly one closed cone.
    inline int cone_of(Point const& p, Point const& q) {
      for (int j = 0; j < 6; ++j) {
        if (in_cone(p, j) && in_cone(q, j)) {
          return j;
        }
      }
      return -1;
    }

    // Strip k and position t of a rung (the edge of strip k from
    // u_k + t*w to u_{k+1} + t*w), if (p, q) is one in either direction.
    // forward is true when the edge runs from the u_k side.
    struct Rung {
      int          strip   = 0;
      std::int64_t t       = 0;
      bool         forward = true;
    };

    inline std::optional<Rung> rung_of(Point const& p, Point const& q) {
      for (int k = 0; k < 6; ++k) {
        Point const w  = unit_at_30(2 * k + 1);
        Point const uk = unit_at_30(2 * k);
        Point const ul = unit_at_30(2 * k + 2);
        for (bool fwd : {true, false}) {
          Point const a = fwd ? p : q, b = fwd ? q : p;
          Point const da = a - uk, db = b - ul;
          if (da != db || cross(w, da).sign() != 0) {
            continue;
          }
          QSqrt3 const t = dot(w, da);
          if (t.sqrt3_part().sign() == 0 && t.rational_part().is_integer()
              && t.sign() >= 0) {
            return Rung{k, t.rational_part().num(), fwd};
          }
        }
      }
      return std::nullopt;
    }

  }  // namespace detail

  // Image in X1 of the directed edge p -> q of F.
  inline DirectedEdge flat_f_to_x1(Complex const& x1, Point const& p, Point const& q) {
    Point const d   = q - p;
    int const   dir = direction_index(d);
    if (dir < 0) {
      throw Error(ErrorCode::PatchTooSmall, "not a unit edge: " + p.to_string()
                                                + " -> " + q.to_string());
    }
    switch (dir) {
      case 6: return x1.letter("g");
      case 0: return x1.letter("-g");
      case 2: return x1.letter("h");
      case 8: return x1.letter("-h");
      case 10: return x1.letter("i");
      case 4: return x1.letter("-i");
      default: break;
    }
    int const cone = detail::cone_of(p, q);
    if (cone < 0) {
      throw Error(ErrorCode::PatchTooSmall,
                  "edge " + p.to_string() + " -> " + q.to_string()
                      + " lies in no triangle cone");
    }
    // Cones 1, 3 and 5 (containing (1/2, sqrt3/2), (-1, 0), (1/2, -sqrt3/2))
    // carry the e letters, the others the f letters.
    std::string const letter = cone % 2 == 1 ? "e" : "f";
    switch (dir) {
      case 9: return x1.letter(letter + "1");
      case 3: return x1.letter("-" + letter + "1");
      case 5: return x1.letter(letter + "2");
      case 11: return x1.letter("-" + letter + "2");
      case 1: return x1.letter(letter + "3");
      default: return x1.letter("-" + letter + "3");
    }
  }

  // Image in X2 of the directed edge p -> q of F.
  inline DirectedEdge flat_f_to_x2(Complex const& x2, Point const& p, Point const& q) {
    Point const d   = q - p;
    int const   dir = direction_index(d);
    if (dir < 0) {
      throw Error(ErrorCode::PatchTooSmall, "not a unit edge: " + p.to_string()
                                                + " -> " + q.to_string());
    }
    Point const o{};
    if (p == o || q == o) {
      // Spokes: the hexagon corner u_j is corner (j + 1) mod 6 + 1 of the
      // hexagon of X2, reached from its centre along r_{that}.
      Point const corner = p == o ? q : p;
      int const   j      = direction_index(corner) / 2;
      std::string const r = "r" + std::to_string((j + 1) % 6 + 1);
      return x2.letter(p == o ? r : "-" + r);
    }
    if (dir % 2 == 0) {
      auto rung = detail::rung_of(p, q);
      if (!rung) {
        throw Error(ErrorCode::PatchTooSmall,
                    "edge " + p.to_string() + " -> " + q.to_string()
                        + " is not a strip rung");
      }
      // Rotated into the upward strip (k = 1), the rung runs left to right
      // (from the u_2 side) as f1 when t is even.
      int const         turn    = ((rung->strip - 1) % 6 + 6) % 6;
      std::string const letter  = turn == 0 || turn == 3   ? "f1"
                                  : turn == 1 || turn == 5 ? "f2"
                                                           : "f3";
      bool const        from_ul = !rung->forward;
      bool const        f_dir   = (rung->t % 2 == 0) == from_ul;
      return x2.letter(f_dir ? letter : "-" + letter);
    }
    // Triangle cones: the rule for x > 0 and its mirror image for x < 0.
    Point const mid_twice = p + q;
    int         k         = dir;
    if (mid_twice.x.sign() < 0) {
      k = (6 - dir + 12) % 12;  // reflect the direction across x = 0
    }
    switch (k) {
      case 9: return x2.letter("e1");
      case 3: return x2.letter("-e1");
      case 1: return x2.letter("e2");
      case 7: return x2.letter("-e2");
      case 5: return x2.letter("e3");
      default: return x2.letter("-e3");
    }
  }

  // sigma23 on the letters of X2: fixes e1 and f1, swaps e2 with e3 and f2
  // with f3, and turns the hexagon half way round.
  inline std::string sigma23_label(std::string const& l) {
    static std::unordered_map<std::string, std::string> const m{
        {"e1", "e1"}, {"e2", "e3"}, {"e3", "e2"}, {"f1", "f1"},
        {"f2", "f3"}, {"f3", "f2"}, {"r1", "r4"}, {"r2", "r5"},
        {"r3", "r6"}, {"r4", "r1"}, {"r5", "r2"}, {"r6", "r3"}};
    return m.at(l);
  }

  inline CellularMap sigma23() {
    auto                      x2 = std::make_shared<Complex const>(catalog(CatalogEntry::x2()));
    std::vector<DirectedEdge> em;
    for (edge_id e = 0; e < x2->number_of_edges(); ++e) {
      em.push_back(x2->letter(sigma23_label(x2->label(e))));
    }
    return make_map(x2, x2, {}, std::move(em));
  }

  ////////////////////////////////////////////////////////////////////////
  // Built-in flat maps
  ////////////////////////////////////////////////////////////////////////

  enum class BuiltinMapKind { FtoX1, FntoX1, FtoX2, F2n1toX2, Sigma23 };

  inline std::string to_string(BuiltinMapKind k) {
    switch (k) {
      case BuiltinMapKind::FtoX1: return "FtoX1";
      case BuiltinMapKind::FntoX1: return "FntoX1";
      case BuiltinMapKind::FtoX2: return "FtoX2";
      case BuiltinMapKind::F2n1toX2: return "F2n1toX2";
      default: return "Sigma23";
    }
  }

  // Reduction of F_n modulo its translation lattice: each edge of F_n is a
  // translate of an edge of the fundamental domain D_n.
  class CrumpledReducer {
   public:
    explicit CrumpledReducer(unsigned n) : _n(n) {
      for (auto const& c : crumpled_fundamental_cells(n)) {
        for (size_t k = 0; k < c.corners.size(); ++k) {
          Point const& a = c.corners[k];
          Point const& b = c.corners[(k + 1) % c.corners.size()];
          _mid.emplace(a + b, std::pair{a, b});
        }
      }
    }

    struct Hit {
      std::int64_t i = 0, j = 0;  // lattice coordinates of the tile
      Point        p, q;          // edge in tile coordinates
    };

    // Every tile containing the directed edge p -> q, in (i, j) order.
    std::vector<Hit> reduce(Point const& p, Point const& q) const {
      Point const  m2    = p + q;  // twice the midpoint
      double const scale = std::sqrt(3.0) + _n;
      double const mx = m2.x.to_double() / 2 / scale;
      double const my = m2.y.to_double() / 2 / scale;
      // Solve m = i*w30 + j*w90.
      double const fi = mx / (std::sqrt(3.0) / 2);
      double const fj = my - fi / 2;
      std::vector<Hit> out;
      for (auto i = static_cast<std::int64_t>(std::floor(fi)) - 3;
           i <= static_cast<std::int64_t>(std::floor(fi)) + 3;
           ++i) {
        for (auto j = static_cast<std::int64_t>(std::floor(fj)) - 3;
             j <= static_cast<std::int64_t>(std::floor(fj)) + 3;
             ++j) {
          Point const P   = crumpled_lattice_point(_n, i, j);
          Point const two = QSqrt3(2) * P;
          auto        it  = _mid.find(m2 - two);
          if (it == _mid.end()) {
            continue;
          }
          Point const lp = p - P, lq = q - P;
          if ((lp == it->second.first && lq == it->second.second)
              || (lq == it->second.first && lp == it->second.second)) {
            out.push_back({i, j, lp, lq});
          }
        }
      }
      return out;
    }

   private:
    unsigned                                                  _n;
    std::unordered_map<Point, std::pair<Point, Point>, PointHash> _mid;
  };

  struct FlatMap {
    FlatPatch   patch;
    CellularMap map;
  };

  // Edge image for a flat map kind, given the patch coordinates of the
  // directed edge. All tiles covering a shared boundary edge are consulted
  // when `all_tiles` is set, returning one image per tile.
  inline std::vector<DirectedEdge> flat_edge_images(BuiltinMapKind        kind,
                                                    unsigned              n,
                                                    Complex const&        target,
                                                    CrumpledReducer const* reducer,
                                                    Point const&          p,
                                                    Point const&          q,
                                                    bool                  all_tiles) {
    std::vector<DirectedEdge> out;
    switch (kind) {
      case BuiltinMapKind::FtoX1: out.push_back(flat_f_to_x1(target, p, q)); break;
      case BuiltinMapKind::FtoX2: out.push_back(flat_f_to_x2(target, p, q)); break;
      case BuiltinMapKind::FntoX1:
      case BuiltinMapKind::F2n1toX2: {
        auto hits = reducer->reduce(p, q);
        if (hits.empty()) {
          throw Error(ErrorCode::PatchTooSmall,
                      "edge " + p.to_string() + " -> " + q.to_string()
                          + " is in no tile of the flat with n = "
                          + std::to_string(n));
        }
        for (auto const& h : hits) {
          if (kind == BuiltinMapKind::FntoX1) {
            out.push_back(flat_f_to_x1(target, h.p, h.q));
          } else {
            DirectedEdge d = flat_f_to_x2(target, h.p, h.q);
            if ((h.i % 2 + 2) % 2 == 1) {
              d = {target.edge(sigma23_label(target.label(d.edge))), d.forward};
            }
            out.push_back(d);
          }
          if (!all_tiles) {
            break;
          }
        }
        break;
      }
      default:
        throw Error(ErrorCode::BadParameter, "not a flat map");
    }
    return out;
  }

  // The flat a built-in map starts from.
  inline FlatPatch builtin_domain(BuiltinMapKind kind, unsigned n, size_t radius) {
    switch (kind) {
      case BuiltinMapKind::FtoX1:
      case BuiltinMapKind::FtoX2: return gen_flat(FlatKind::FlatF, radius);
      case BuiltinMapKind::FntoX1: return gen_flat(FlatKind::FlatFn, radius, n);
      case BuiltinMapKind::F2n1toX2: return gen_flat(FlatKind::FlatFn, radius, 2 * n - 1);
      default: throw Error(ErrorCode::BadParameter, "Sigma23 has no flat domain");
    }
  }

  inline Complex builtin_target(BuiltinMapKind kind) {
    return kind == BuiltinMapKind::FtoX1 || kind == BuiltinMapKind::FntoX1
               ? catalog(CatalogEntry::x1())
               : catalog(CatalogEntry::x2());
  }

  // The built-in map restricted to a patch of the given radius; link checks
  // are restricted to interior vertices of the patch.
  inline FlatMap builtin_map(BuiltinMapKind kind, unsigned n, size_t radius) {
    if (n < 1) {
      throw Error(ErrorCode::BadParameter, "n must be at least 1");
    }
    FlatMap fm{builtin_domain(kind, n, radius), {}};
    auto    target = std::make_shared<Complex const>(builtin_target(kind));
    unsigned const m = kind == BuiltinMapKind::F2n1toX2 ? 2 * n - 1 : n;
    std::optional<CrumpledReducer> reducer;
    if (kind == BuiltinMapKind::FntoX1 || kind == BuiltinMapKind::F2n1toX2) {
      reducer.emplace(m);
    }
    Complex const&            s = fm.patch.complex();
    std::vector<DirectedEdge> em;
    em.reserve(s.number_of_edges());
    for (auto const& e : s.edges()) {
      em.push_back(flat_edge_images(kind,
                                    m,
                                    *target,
                                    reducer ? &*reducer : nullptr,
                                    fm.patch.coord(e.from),
                                    fm.patch.coord(e.to),
                                    false)
                       .front());
    }
    fm.map = make_map(std::make_shared<Complex const>(s), target, {}, std::move(em));
    std::vector<bool> interior(s.number_of_vertices());
    for (vertex_id v = 0; v < interior.size(); ++v) {
      interior[v] = !fm.patch.is_boundary(v);
    }
    fm.map.restrict_checks(std::move(interior));
    return fm;
  }

  inline std::optional<BuiltinMapKind> parse_builtin_map_kind(std::string_view s) {
    for (auto k : {BuiltinMapKind::FtoX1,
                   BuiltinMapKind::FntoX1,
                   BuiltinMapKind::FtoX2,
                   BuiltinMapKind::F2n1toX2,
                   BuiltinMapKind::Sigma23}) {
      if (s == to_string(k)) {
        return k;
      }
    }
    return std::nullopt;
  }

}  // namespace tsq

#endif  // TSQ_CELLMAPS_HPP_
