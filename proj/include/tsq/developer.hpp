#ifndef TSQ_DEVELOPER_HPP_
#define TSQ_DEVELOPER_HPP_

// Development of balls in the universal cover of a locally CAT(0) complex,
// and lifts of maps from simply connected patches into such balls.
//
// Cells are attached one face copy at a time; two cells are identified
// exactly when they occupy the same link node (edges) or link arc (faces)
// at a common vertex, and identifications cascade through a union-find.

#include <cstdint>
#include <cstdlib>
#include <deque>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <unordered_map>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "cellmaps.hpp"
#include "complex.hpp"
#include "links.hpp"

namespace tsq {

  constexpr size_t default_cell_budget = 1'000'000;

  // Face budget: TSQ_CELL_BUDGET if set to a positive integer, otherwise
  // the default.
  inline size_t cell_budget_from_environment() {
    if (char const* s = std::getenv("TSQ_CELL_BUDGET")) {
      char*              end = nullptr;
      unsigned long long v   = std::strtoull(s, &end, 10);
      if (end != s && *end == '\0' && v > 0) {
        return static_cast<size_t>(v);
      }
    }
    return default_cell_budget;
  }

  namespace detail {
    // Link positions in the base: node index of each edge end and arc index
    // of each face corner, within the link of the vertex they sit at.
    struct BaseLinks {
      std::vector<LinkGraph>           links;
      std::vector<std::array<size_t, 2>> node_of_edge;  // [Initial, Terminal]
      std::vector<std::vector<size_t>> arc_of_corner;

      explicit BaseLinks(Complex const& c) : links(all_links(c)) {
        node_of_edge.resize(c.number_of_edges());
        for (edge_id e = 0; e < c.number_of_edges(); ++e) {
          node_of_edge[e][0] = *links[c.edges()[e].from].find_node({e, End::Initial});
          node_of_edge[e][1] = *links[c.edges()[e].to].find_node({e, End::Terminal});
        }
        arc_of_corner.resize(c.number_of_faces());
        for (face_id f = 0; f < c.number_of_faces(); ++f) {
          arc_of_corner[f].resize(c.faces()[f].boundary.size());
        }
        for (auto const& g : links) {
          for (size_t a = 0; a < g.number_of_arcs(); ++a) {
            arc_of_corner[g.arcs()[a].face][g.arcs()[a].corner] = a;
          }
        }
      }

      size_t node(EdgeEnd e) const {
        return node_of_edge[e.edge][e.end == End::Initial ? 0 : 1];
      }
    };
  }  // namespace detail

  class DevelopedBall;

  // Mutable development state. Ball cells are numbered internally and
  // merged through union-find; `finish` produces a canonical complex.
  class Developer {
   public:
    static constexpr std::uint32_t absent = UINT32_MAX;

    Developer(std::shared_ptr<Complex const> base,
              vertex_id                      basepoint,
              size_t                         budget = cell_budget_from_environment())
        : _base(std::move(base)), _links(*_base), _budget(budget) {
      if (basepoint >= _base->number_of_vertices()) {
        throw Error(ErrorCode::UnknownVertex, "basepoint out of range");
      }
      _root = new_vertex(basepoint);
    }

    Complex const& base() const noexcept {
      return *_base;
    }
    std::shared_ptr<Complex const> base_ptr() const noexcept {
      return _base;
    }
    std::uint32_t root() {
      return find_vertex(_root);
    }

    size_t live_faces() const noexcept {
      return _live_faces;
    }
    size_t faces_created() const noexcept {
      return _faces.size();
    }

    std::uint32_t find_vertex(std::uint32_t x) {
      return find(_vparent, x);
    }
    std::uint32_t find_edge(std::uint32_t x) {
      return find(_eparent, x);
    }
    std::uint32_t find_face(std::uint32_t x) {
      return find(_fparent, x);
    }

    vertex_id projection(std::uint32_t x) const {
      return _vertices[x].base;
    }

    bool is_complete(std::uint32_t x) {
      x              = find_vertex(x);
      auto const& vd = _vertices[x];
      for (auto a : vd.arcs) {
        if (a == absent) {
          return false;
        }
      }
      for (auto n : vd.nodes) {
        if (n == absent) {
          return false;
        }
      }
      return true;
    }

    // Face attached at base arc `arc` of x, if any.
    std::optional<std::uint32_t> face_at(std::uint32_t x, size_t arc) {
      auto f = _vertices[find_vertex(x)].arcs[arc];
      if (f == absent) {
        return std::nullopt;
      }
      return find_face(f);
    }

    // Attach every missing face corner and edge end at x.
    void complete(std::uint32_t x) {
      x = find_vertex(x);
      auto const& g = _links.links[_vertices[x].base];
      for (size_t a = 0; a < g.number_of_arcs(); ++a) {
        x = find_vertex(x);
        if (_vertices[x].arcs[a] == absent) {
          add_face(g.arcs()[a].face, g.arcs()[a].corner, x);
        }
      }
      for (size_t k = 0; k < g.number_of_nodes(); ++k) {
        x = find_vertex(x);
        if (_vertices[x].nodes[k] == absent) {
          add_edge(g.nodes()[k], x);
        }
      }
    }

    // Representatives of the neighbours of x, with the base edge ends used.
    std::vector<std::uint32_t> neighbours(std::uint32_t x) {
      std::vector<std::uint32_t> out;
      x = find_vertex(x);
      for (auto e : _vertices[x].nodes) {
        if (e == absent) {
          continue;
        }
        auto const& ed = _edges[find_edge(e)];
        std::uint32_t a = find_vertex(ed.from), b = find_vertex(ed.to);
        out.push_back(a == x ? b : a);
      }
      return out;
    }

    // 1-skeleton distances from the root over current representatives.
    std::vector<size_t> distances() {
      constexpr size_t    inf = std::numeric_limits<size_t>::max();
      std::vector<size_t> dist(_vertices.size(), inf);
      std::deque<std::uint32_t> queue{root()};
      dist[root()] = 0;
      while (!queue.empty()) {
        auto x = queue.front();
        queue.pop_front();
        for (auto y : neighbours(x)) {
          if (dist[y] == inf) {
            dist[y] = dist[x] + 1;
            queue.push_back(y);
          }
        }
      }
      return dist;
    }

    // Completes every vertex within distance radius - 1 of the root,
    // repeating until no such vertex is incomplete.
    void develop_ball(size_t radius) {
      for (;;) {
        auto                       dist = distances();
        std::vector<std::uint32_t> todo;
        for (std::uint32_t x = 0; x < _vertices.size(); ++x) {
          if (find_vertex(x) == x && radius > 0 && dist[x] <= radius - 1
              && !is_complete(x)) {
            todo.push_back(x);
          }
        }
        if (todo.empty()) {
          return;
        }
        for (auto x : todo) {
          complete(x);
        }
      }
    }

    DevelopedBall finish(size_t radius);

    // Numbering chosen by the last call to finish.
    vertex_id canonical_vertex(std::uint32_t x) {
      return _vnum[find_vertex(x)];
    }
    edge_id canonical_edge(std::uint32_t e) {
      return _enum[find_edge(e)];
    }

    // Corner k and letter k of an internal face, in base letter order.
    std::uint32_t face_corner(std::uint32_t f, size_t k) {
      return find_vertex(_faces[find_face(f)].corners[k]);
    }
    std::uint32_t face_edge(std::uint32_t f, size_t k) {
      return find_edge(_faces[find_face(f)].edges[k]);
    }
    size_t base_arc(face_id f, size_t j) const {
      return _links.arc_of_corner[f][j];
    }

   private:
    struct VertexData {
      vertex_id                  base = 0;
      std::vector<std::uint32_t> nodes;  // by base link node index
      std::vector<std::uint32_t> arcs;   // by base link arc index
    };
    struct EdgeData {
      edge_id       base = 0;
      std::uint32_t from = 0;
      std::uint32_t to   = 0;
    };
    struct FaceData {
      face_id                    base = 0;
      std::vector<std::uint32_t> corners;
      std::vector<std::uint32_t> edges;
    };
    enum class Kind { Vertex, Edge, Face };
    struct Pending {
      Kind          kind;
      std::uint32_t a, b;
    };

    static std::uint32_t find(std::vector<std::uint32_t>& parent, std::uint32_t x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x         = parent[x];
      }
      return x;
    }

    std::uint32_t new_vertex(vertex_id b) {
      auto const    id = static_cast<std::uint32_t>(_vertices.size());
      auto const&   g  = _links.links[b];
      _vertices.push_back({b,
                           std::vector<std::uint32_t>(g.number_of_nodes(), absent),
                           std::vector<std::uint32_t>(g.number_of_arcs(), absent)});
      _vparent.push_back(id);
      return id;
    }

    std::uint32_t new_edge(edge_id b, std::uint32_t from, std::uint32_t to) {
      auto const id = static_cast<std::uint32_t>(_edges.size());
      _edges.push_back({b, from, to});
      _eparent.push_back(id);
      attach_node(from, {b, End::Initial}, id);
      attach_node(to, {b, End::Terminal}, id);
      return id;
    }

    void attach_node(std::uint32_t x, EdgeEnd end, std::uint32_t e) {
      x        = find_vertex(x);
      auto& s  = _vertices[x].nodes[_links.node(end)];
      if (s == absent) {
        s = e;
      } else {
        _pending.push_back({Kind::Edge, s, e});
      }
    }

    void attach_arc(std::uint32_t x, size_t arc, std::uint32_t f) {
      x       = find_vertex(x);
      auto& s = _vertices[x].arcs[arc];
      if (s == absent) {
        s = f;
      } else {
        _pending.push_back({Kind::Face, s, f});
      }
    }

    void add_edge(EdgeEnd end, std::uint32_t x) {
      edge_id const e     = end.edge;
      auto const&   rec   = _base->edges()[e];
      std::uint32_t other = new_vertex(end.end == End::Initial ? rec.to : rec.from);
      std::uint32_t fresh = new_vertex(_vertices[find_vertex(x)].base);
      if (end.end == End::Initial) {
        new_edge(e, fresh, other);
      } else {
        new_edge(e, other, fresh);
      }
      _pending.push_back({Kind::Vertex, fresh, x});
      drain();
    }

    void add_face(face_id f, size_t corner, std::uint32_t x) {
      if (_live_faces >= _budget) {
        throw Error(ErrorCode::ResourceLimit,
                    "cell budget of " + std::to_string(_budget)
                        + " faces exceeded while developing");
      }
      auto const&  w = _base->faces()[f].boundary;
      size_t const n = w.size();
      FaceData     fd{f, {}, {}};
      for (size_t k = 0; k < n; ++k) {
        fd.corners.push_back(new_vertex(_base->initial(w[k])));
      }
      for (size_t k = 0; k < n; ++k) {
        std::uint32_t a = fd.corners[k], b = fd.corners[(k + 1) % n];
        fd.edges.push_back(w[k].forward ? new_edge(w[k].edge, a, b)
                                        : new_edge(w[k].edge, b, a));
      }
      auto const id = static_cast<std::uint32_t>(_faces.size());
      _faces.push_back(fd);
      _fparent.push_back(id);
      ++_live_faces;
      for (size_t k = 0; k < n; ++k) {
        attach_arc(fd.corners[k], _links.arc_of_corner[f][k], id);
      }
      _pending.push_back({Kind::Vertex, fd.corners[corner], x});
      drain();
    }

    void drain() {
      while (!_pending.empty()) {
        Pending p = _pending.front();
        _pending.pop_front();
        switch (p.kind) {
          case Kind::Vertex: merge_vertices(p.a, p.b); break;
          case Kind::Edge: merge_edges(p.a, p.b); break;
          case Kind::Face: merge_faces(p.a, p.b); break;
        }
      }
    }

    void merge_vertices(std::uint32_t a, std::uint32_t b) {
      a = find_vertex(a);
      b = find_vertex(b);
      if (a == b) {
        return;
      }
      if (_vertices[a].base != _vertices[b].base) {
        throw Error(ErrorCode::PreconditionFailed,
                    "development identified vertices over different base "
                    "vertices");
      }
      if (b < a) {
        std::swap(a, b);
      }
      _vparent[b] = a;
      auto& va    = _vertices[a];
      auto& vb    = _vertices[b];
      for (size_t k = 0; k < va.nodes.size(); ++k) {
        if (vb.nodes[k] == absent) {
          continue;
        }
        if (va.nodes[k] == absent) {
          va.nodes[k] = vb.nodes[k];
        } else {
          _pending.push_back({Kind::Edge, va.nodes[k], vb.nodes[k]});
        }
      }
      for (size_t k = 0; k < va.arcs.size(); ++k) {
        if (vb.arcs[k] == absent) {
          continue;
        }
        if (va.arcs[k] == absent) {
          va.arcs[k] = vb.arcs[k];
        } else {
          _pending.push_back({Kind::Face, va.arcs[k], vb.arcs[k]});
        }
      }
      vb.nodes.clear();
      vb.nodes.shrink_to_fit();
      vb.arcs.clear();
      vb.arcs.shrink_to_fit();
    }

    void merge_edges(std::uint32_t a, std::uint32_t b) {
      a = find_edge(a);
      b = find_edge(b);
      if (a == b) {
        return;
      }
      if (b < a) {
        std::swap(a, b);
      }
      _eparent[b] = a;
      _pending.push_back({Kind::Vertex, _edges[a].from, _edges[b].from});
      _pending.push_back({Kind::Vertex, _edges[a].to, _edges[b].to});
    }

    void merge_faces(std::uint32_t a, std::uint32_t b) {
      a = find_face(a);
      b = find_face(b);
      if (a == b) {
        return;
      }
      if (b < a) {
        std::swap(a, b);
      }
      _fparent[b] = a;
      --_live_faces;
      for (size_t k = 0; k < _faces[a].corners.size(); ++k) {
        _pending.push_back({Kind::Vertex, _faces[a].corners[k], _faces[b].corners[k]});
        _pending.push_back({Kind::Edge, _faces[a].edges[k], _faces[b].edges[k]});
      }
    }

    friend class DevelopedBall;

    std::shared_ptr<Complex const> _base;
    detail::BaseLinks              _links;
    size_t                         _budget;
    std::uint32_t                  _root = 0;
    std::vector<VertexData>        _vertices;
    std::vector<EdgeData>          _edges;
    std::vector<FaceData>          _faces;
    std::vector<std::uint32_t>     _vparent, _eparent, _fparent;
    std::deque<Pending>            _pending;
    size_t                         _live_faces = 0;
    std::vector<std::uint32_t>     _vnum, _enum;
  };

  // A finished ball: a complex with canonical names, its projection to the
  // base and the per-vertex star index used by lifts.
  class DevelopedBall {
   public:
    Complex const& base() const noexcept {
      return _projection.target();
    }
    std::shared_ptr<Complex const> ball_ptr() const noexcept {
      return _projection.source_ptr();
    }
    Complex const& ball() const noexcept {
      return _projection.source();
    }
    CellularMap const& projection() const noexcept {
      return _projection;
    }
    vertex_id basepoint() const noexcept {
      return _basepoint;
    }
    vertex_id basepoint_lift() const noexcept {
      return 0;
    }
    size_t radius() const noexcept {
      return _radius;
    }
    bool is_interior(vertex_id x) const {
      return _interior[x];
    }
    std::vector<bool> const& interior() const noexcept {
      return _interior;
    }
    size_t distance(vertex_id x) const {
      return _distance[x];
    }

    // Ball face over base arc `arc` at x, when attached.
    std::optional<face_id> face_at(vertex_id x, size_t arc) const {
      auto f = _star[x][arc];
      if (f == Developer::absent) {
        return std::nullopt;
      }
      return f;
    }

    // Base link arc index of corner j of base face f.
    size_t base_arc(face_id f, size_t j) const {
      return _arc_of_corner[f][j];
    }

    // Shells: number of vertices at each distance from the basepoint lift.
    std::vector<size_t> shell_sizes() const {
      std::vector<size_t> out;
      for (size_t d : _distance) {
        if (d >= out.size()) {
          out.resize(d + 1, 0);
        }
        ++out[d];
      }
      return out;
    }

   private:
    friend class Developer;
    CellularMap                             _projection;
    vertex_id                               _basepoint = 0;
    size_t                                  _radius    = 0;
    std::vector<bool>                       _interior;
    std::vector<size_t>                     _distance;
    std::vector<std::vector<std::uint32_t>> _star;
    std::vector<std::vector<size_t>>        _arc_of_corner;
  };

  // Canonical numbering: breadth first from the root, neighbours in base
  // link node order; faces by first corner visit in base arc order. Ball
  // faces keep the base face's letter order and corner 0.
  inline DevelopedBall Developer::finish(size_t radius) {
    constexpr std::uint32_t   unset = absent;
    auto& vnum  = _vnum;
    auto& enumb = _enum;
    vnum.assign(_vertices.size(), unset);
    enumb.assign(_edges.size(), unset);
    std::vector<std::uint32_t> fnum(_faces.size(), unset);
    std::vector<std::uint32_t> vorder, eorder, forder;
    std::vector<size_t>        dist;
    std::deque<std::uint32_t>  queue{root()};
    vnum[root()] = 0;
    vorder.push_back(root());
    dist.push_back(0);
    while (!queue.empty()) {
      auto x = queue.front();
      queue.pop_front();
      auto const& vd = _vertices[x];
      for (auto e : vd.nodes) {
        if (e == absent) {
          continue;
        }
        e = find_edge(e);
        if (enumb[e] == unset) {
          enumb[e] = static_cast<std::uint32_t>(eorder.size());
          eorder.push_back(e);
        }
        std::uint32_t a = find_vertex(_edges[e].from), b = find_vertex(_edges[e].to);
        for (auto y : {a, b}) {
          if (vnum[y] == unset) {
            vnum[y] = static_cast<std::uint32_t>(vorder.size());
            vorder.push_back(y);
            dist.push_back(dist[vnum[x]] + 1);
            queue.push_back(y);
          }
        }
      }
      for (auto f : vd.arcs) {
        if (f == absent) {
          continue;
        }
        f = find_face(f);
        if (fnum[f] == unset) {
          fnum[f] = static_cast<std::uint32_t>(forder.size());
          forder.push_back(f);
        }
      }
    }

    Complex const&     b = *_base;
    ComplexDescription d;
    d.name = "cover_" + b.name() + "_" + b.vertices()[_vertices[_root].base] + "_r"
             + std::to_string(radius);
    // The name must stay a plain identifier.
    for (auto& ch : d.name) {
      if (!detail::ident_char(ch)) {
        ch = '_';
      }
    }
    for (size_t k = 0; k < vorder.size(); ++k) {
      d.vertices.push_back(b.vertices()[_vertices[vorder[k]].base] + "." + std::to_string(k));
    }
    std::vector<DirectedEdge> proj_edges;
    for (size_t k = 0; k < eorder.size(); ++k) {
      auto const& ed = _edges[eorder[k]];
      d.edges.push_back({b.label(ed.base) + "." + std::to_string(k),
                         d.vertices[vnum[find_vertex(ed.from)]],
                         d.vertices[vnum[find_vertex(ed.to)]],
                         0});
      proj_edges.push_back({ed.base, true});
    }
    for (size_t k = 0; k < forder.size(); ++k) {
      auto const& fd = _faces[forder[k]];
      auto const& bw = b.faces()[fd.base].boundary;
      FaceSpec    fs{b.faces()[fd.base].id + "." + std::to_string(k), b.faces()[fd.base].kind, {}, 0};
      for (size_t j = 0; j < bw.size(); ++j) {
        fs.boundary.push_back(
            {d.edges[enumb[find_edge(fd.edges[j])]].label, bw[j].forward, 0, 0});
      }
      d.faces.push_back(std::move(fs));
    }
    std::vector<vertex_id> proj_vertices;
    for (auto x : vorder) {
      proj_vertices.push_back(_vertices[x].base);
    }

    DevelopedBall ball;
    ball._projection = make_map(std::make_shared<Complex const>(build_complex(d)),
                                _base,
                                std::move(proj_vertices),
                                std::move(proj_edges),
                                false);
    ball._basepoint     = _vertices[_root].base;
    ball._radius        = radius;
    ball._distance      = std::move(dist);
    ball._arc_of_corner = _links.arc_of_corner;
    ball._interior.resize(vorder.size());
    ball._star.resize(vorder.size());
    for (size_t k = 0; k < vorder.size(); ++k) {
      ball._interior[k] = is_complete(vorder[k]);
      for (auto f : _vertices[vorder[k]].arcs) {
        ball._star[k].push_back(f == absent ? absent : fnum[find_face(f)]);
      }
    }
    return ball;
  }

  // Ball of the given radius about a lift of v in the universal cover: all
  // vertices within distance radius - 1 of the lift have complete links.
  inline DevelopedBall develop(std::shared_ptr<Complex const> c,
                               vertex_id                      v,
                               size_t                         radius,
                               size_t budget = cell_budget_from_environment()) {
    auto const verdict = check_gromov(*c);
    if (!verdict.pass) {
      throw Error(ErrorCode::PreconditionFailed,
                  "'" + c->name() + "' fails the link condition at vertex '"
                      + c->vertices()[verdict.first_failure()->vertex] + "'");
    }
    Developer dev(std::move(c), v, budget);
    dev.develop_ball(radius);
    return dev.finish(radius);
  }

  inline DevelopedBall develop(Complex const& c,
                               std::string const& v,
                               size_t             radius,
                               size_t             budget = cell_budget_from_environment()) {
    return develop(std::make_shared<Complex const>(c), c.vertex(v), radius, budget);
  }

  ////////////////////////////////////////////////////////////////////////
  // Ball invariants
  ////////////////////////////////////////////////////////////////////////

  // Interior vertices at which the projection fails to induce a link
  // isomorphism onto the base link.
  inline std::vector<vertex_id> link_isomorphism_failures(DevelopedBall const& b) {
    std::vector<vertex_id> bad;
    auto const             inj   = check_link_injective(b.projection());
    auto const             links = all_links(b.ball());
    auto const             base  = all_links(b.base());
    std::vector<bool>      flagged(b.ball().number_of_vertices(), false);
    for (auto const& c : inj.collisions) {
      flagged[c.vertex] = true;
    }
    for (vertex_id x = 0; x < b.ball().number_of_vertices(); ++x) {
      if (!b.is_interior(x)) {
        continue;
      }
      auto const& target = base[b.projection().vertex(x)];
      if (flagged[x] || links[x].number_of_nodes() != target.number_of_nodes()
          || links[x].number_of_arcs() != target.number_of_arcs()) {
        bad.push_back(x);
      }
    }
    return bad;
  }

  // No loops and no parallel edges among edges meeting an interior vertex.
  inline bool interior_skeleton_is_simple(DevelopedBall const& b) {
    std::set<std::pair<vertex_id, vertex_id>> seen;
    for (auto const& e : b.ball().edges()) {
      if (!b.is_interior(e.from) && !b.is_interior(e.to)) {
        continue;
      }
      if (e.from == e.to) {
        return false;
      }
      if (!seen.emplace(std::min(e.from, e.to), std::max(e.from, e.to)).second) {
        return false;
      }
    }
    return true;
  }

  inline size_t vertices_within(DevelopedBall const& b, size_t d) {
    size_t n = 0;
    for (vertex_id x = 0; x < b.ball().number_of_vertices(); ++x) {
      n += b.distance(x) <= d;
    }
    return n;
  }

  // Canonical numbering makes isomorphic balls (fixing the basepoint lift
  // and commuting with projections) literally equal.
  inline bool canonically_equal(DevelopedBall const& a, DevelopedBall const& b) {
    return serialize(a.ball()) == serialize(b.ball())
           && a.projection().vertex_map() == b.projection().vertex_map()
           && a.projection().edge_map() == b.projection().edge_map();
  }

  ////////////////////////////////////////////////////////////////////////
  // Lifts
  ////////////////////////////////////////////////////////////////////////

  struct LiftedMap {
    DevelopedBall ball;
    CellularMap   lift;
    bool          commutes = false;
  };

  namespace detail {
    class BallCover {
     public:
      explicit BallCover(DevelopedBall const& b) : _b(b) {}
      std::optional<std::uint32_t> face_at(std::uint32_t x, size_t arc, size_t) {
        return _b.face_at(x, arc);
      }
      std::uint32_t corner(std::uint32_t f, size_t k) {
        return _b.ball().corner_vertex(f, k);
      }
      std::uint32_t edge(std::uint32_t f, size_t k) {
        return _b.ball().faces()[f].boundary[k].edge;
      }
      std::uint32_t rep(std::uint32_t x) {
        return x;
      }
      std::uint32_t edge_rep(std::uint32_t e) {
        return e;
      }
      size_t base_arc(face_id f, size_t j) const {
        return _b.base_arc(f, j);
      }

     private:
      DevelopedBall const& _b;
    };

    // Completes stars on request, as long as the requesting source vertex
    // is within radius - 1 of the anchor (so the cover vertex is too).
    class OnDemandCover {
     public:
      OnDemandCover(Developer& d, size_t radius) : _d(d), _radius(radius) {}
      std::optional<std::uint32_t> face_at(std::uint32_t x, size_t arc, size_t depth) {
        if (auto f = _d.face_at(x, arc)) {
          return f;
        }
        if (depth + 1 > _radius) {
          return std::nullopt;
        }
        _d.complete(x);
        return _d.face_at(x, arc);
      }
      std::uint32_t corner(std::uint32_t f, size_t k) {
        return _d.face_corner(f, k);
      }
      std::uint32_t edge(std::uint32_t f, size_t k) {
        return _d.face_edge(f, k);
      }
      std::uint32_t rep(std::uint32_t x) {
        return _d.find_vertex(x);
      }
      std::uint32_t edge_rep(std::uint32_t e) {
        return _d.find_edge(e);
      }
      size_t base_arc(face_id f, size_t j) const {
        return _d.base_arc(f, j);
      }

     private:
      Developer& _d;
      size_t     _radius;
    };

    struct Transported {
      std::vector<std::uint32_t> vertex;
      std::vector<std::uint32_t> edge;
      std::vector<bool>          along;  // source edge runs along the cover edge
    };

    // Carries the anchor across faces of the source: each face is placed
    // on the cover face sitting at the lifted corner over the same base arc.
    template <class Cover>
    Transported transport(CellularMap const& m,
                          Cover&             cover,
                          vertex_id          anchor,
                          std::uint32_t      anchor_image) {
      Complex const&          s     = m.source();
      constexpr std::uint32_t unset = UINT32_MAX;
      Transported             t;
      t.vertex.assign(s.number_of_vertices(), unset);
      t.edge.assign(s.number_of_edges(), unset);
      t.along.assign(s.number_of_edges(), true);

      std::vector<std::vector<std::pair<face_id, size_t>>> corners_at(s.number_of_vertices());
      for (face_id f = 0; f < s.number_of_faces(); ++f) {
        for (size_t j = 0; j < s.faces()[f].boundary.size(); ++j) {
          corners_at[s.corner_vertex(f, j)].emplace_back(f, j);
        }
      }
      // Source distances bound cover distances, edges mapping to edges.
      std::vector<size_t> depth(s.number_of_vertices(), SIZE_MAX);
      {
        std::vector<std::vector<vertex_id>> adj(s.number_of_vertices());
        for (auto const& e : s.edges()) {
          adj[e.from].push_back(e.to);
          adj[e.to].push_back(e.from);
        }
        std::deque<vertex_id> q{anchor};
        depth[anchor] = 0;
        while (!q.empty()) {
          auto x = q.front();
          q.pop_front();
          for (auto y : adj[x]) {
            if (depth[y] == SIZE_MAX) {
              depth[y] = depth[x] + 1;
              q.push_back(y);
            }
          }
        }
      }

      auto inconsistent = [&](std::string const& what) {
        return Error(ErrorCode::PreconditionFailed,
                     "transport is inconsistent at " + what
                         + "; the source is not simply connected or the "
                           "target is not a cover");
      };
      std::vector<bool>     placed(s.number_of_faces(), false);
      std::deque<vertex_id> queue{anchor};
      t.vertex[anchor] = anchor_image;
      std::vector<bool> queued(s.number_of_vertices(), false);
      queued[anchor] = true;
      while (!queue.empty()) {
        vertex_id p = queue.front();
        queue.pop_front();
        for (auto [f, j] : corners_at[p]) {
          if (placed[f]) {
            continue;
          }
          FaceImage const& fi  = m.face(f);
          size_t const     n   = s.faces()[f].boundary.size();
          auto const       cf  = cover.face_at(cover.rep(t.vertex[p]),
                                        cover.base_arc(fi.face, fi.alignment.corner(j, n)),
                                        depth[p]);
          if (!cf) {
            continue;
          }
          placed[f] = true;
          for (size_t i = 0; i < n; ++i) {
            vertex_id const     q   = s.corner_vertex(f, i);
            std::uint32_t const img = cover.corner(*cf, fi.alignment.corner(i, n));
            if (t.vertex[q] == unset) {
              t.vertex[q] = img;
            } else if (cover.rep(t.vertex[q]) != cover.rep(img)) {
              throw inconsistent("vertex '" + s.vertices()[q] + "'");
            }
            if (!queued[q]) {
              queued[q] = true;
              queue.push_back(q);
            }
          }
          auto const& base_word = m.target().faces()[fi.face].boundary;
          for (size_t i = 0; i < n; ++i) {
            DirectedEdge const l  = s.faces()[f].boundary[i];
            size_t const       li = fi.alignment.reflect ? (fi.alignment.offset + n - i) % n
                                                         : (fi.alignment.offset + i) % n;
            bool const letter_along = fi.alignment.reflect ? !base_word[li].forward
                                                           : base_word[li].forward;
            bool const          along = l.forward ? letter_along : !letter_along;
            std::uint32_t const ce    = cover.edge(*cf, li);
            if (t.edge[l.edge] == unset) {
              t.edge[l.edge]  = ce;
              t.along[l.edge] = along;
            } else if (cover.edge_rep(t.edge[l.edge]) != cover.edge_rep(ce)
                       || t.along[l.edge] != along) {
              throw inconsistent("edge '" + s.label(l.edge) + "'");
            }
          }
        }
      }
      for (face_id f = 0; f < s.number_of_faces(); ++f) {
        if (!placed[f]) {
          throw Error(ErrorCode::BallTooSmall,
                      "face '" + s.faces()[f].id
                          + "' could not be lifted inside the ball");
        }
      }
      for (edge_id e = 0; e < s.number_of_edges(); ++e) {
        if (t.edge[e] == unset) {
          throw Error(ErrorCode::BallTooSmall,
                      "edge '" + s.label(e) + "' lies on no face");
        }
      }
      return t;
    }

    inline LiftedMap assemble(CellularMap const&          m,
                              DevelopedBall               ball,
                              std::vector<vertex_id>      vm,
                              std::vector<DirectedEdge>   em) {
      LiftedMap out{std::move(ball), {}, true};
      out.lift = make_map(m.source_ptr(), out.ball.ball_ptr(), std::move(vm), std::move(em));
      auto const& proj = out.ball.projection();
      for (vertex_id v = 0; v < m.source().number_of_vertices(); ++v) {
        out.commutes = out.commutes && proj.vertex(out.lift.vertex(v)) == m.vertex(v);
      }
      for (edge_id e = 0; e < m.source().number_of_edges(); ++e) {
        out.commutes = out.commutes && proj.edge(out.lift.edge({e, true})) == m.edge({e, true});
      }
      return out;
    }
  }  // namespace detail

  // Unique lift of m (a map from a simply connected patch to the base) into
  // a developed ball, extending anchor -> anchor_image.
  inline LiftedMap lift(CellularMap const&   m,
                        DevelopedBall const& ball,
                        vertex_id            anchor,
                        vertex_id            anchor_image) {
    if (ball.projection().vertex(anchor_image) != m.vertex(anchor)) {
      throw Error(ErrorCode::AnchorMismatch,
                  "anchor image projects to '"
                      + ball.base().vertices()[ball.projection().vertex(anchor_image)]
                      + "', the map sends the anchor to '"
                      + m.target().vertices()[m.vertex(anchor)] + "'");
    }
    detail::BallCover cover(ball);
    auto t = detail::transport(m, cover, anchor, anchor_image);
    std::vector<DirectedEdge> em;
    for (edge_id e = 0; e < t.edge.size(); ++e) {
      em.push_back({t.edge[e], t.along[e]});
    }
    return detail::assemble(m, ball, std::move(t.vertex), std::move(em));
  }

  // Lift into the ball of the given radius about a lift of m(anchor),
  // developing only the stars the lift passes through. Every completed
  // vertex is within radius - 1 of the basepoint lift.
  inline LiftedMap lift_on_demand(CellularMap const& m,
                                  vertex_id          anchor,
                                  size_t             radius,
                                  size_t             budget = cell_budget_from_environment()) {
    auto const verdict = check_gromov(m.target());
    if (!verdict.pass) {
      throw Error(ErrorCode::PreconditionFailed,
                  "'" + m.target().name() + "' fails the link condition");
    }
    Developer             dev(m.target_ptr(), m.vertex(anchor), budget);
    detail::OnDemandCover cover(dev, radius);
    auto t    = detail::transport(m, cover, anchor, dev.root());
    auto ball = dev.finish(radius);
    std::vector<vertex_id>    vm;
    std::vector<DirectedEdge> em;
    for (auto x : t.vertex) {
      vm.push_back(dev.canonical_vertex(x));
    }
    for (edge_id e = 0; e < t.edge.size(); ++e) {
      em.push_back({dev.canonical_edge(t.edge[e]), t.along[e]});
    }
    return detail::assemble(m, std::move(ball), std::move(vm), std::move(em));
  }

  // Pairs of source vertices (among `among`, or all) with the same image.
  inline std::vector<std::pair<vertex_id, vertex_id>>
  vertex_collisions(CellularMap const& m, std::vector<bool> const& among = {}) {
    std::vector<std::pair<vertex_id, vertex_id>> out;
    std::unordered_map<vertex_id, vertex_id>     first;
    for (vertex_id v = 0; v < m.source().number_of_vertices(); ++v) {
      if (!among.empty() && !among[v]) {
        continue;
      }
      auto [it, fresh] = first.emplace(m.vertex(v), v);
      if (!fresh) {
        out.emplace_back(it->second, v);
      }
    }
    return out;
  }

  // The part of a flat map on faces with a corner within `radius` of the
  // patch centre.
  inline CellularMap restrict_to_radius(FlatMap const& fm, size_t radius) {
    Complex const&     s = fm.patch.complex();
    ComplexDescription d;
    d.name = s.name() + "_sub" + std::to_string(radius);
    std::vector<bool> keep_v(s.number_of_vertices(), false), keep_e(s.number_of_edges(), false);
    std::vector<face_id> faces;
    for (face_id f = 0; f < s.number_of_faces(); ++f) {
      bool near = false;
      for (size_t j = 0; j < s.faces()[f].boundary.size(); ++j) {
        near = near || fm.patch.depth(s.corner_vertex(f, j)) <= radius;
      }
      if (!near) {
        continue;
      }
      faces.push_back(f);
      for (size_t j = 0; j < s.faces()[f].boundary.size(); ++j) {
        keep_v[s.corner_vertex(f, j)]           = true;
        keep_e[s.faces()[f].boundary[j].edge] = true;
      }
    }
    std::vector<vertex_id> vm;
    for (vertex_id v = 0; v < s.number_of_vertices(); ++v) {
      if (keep_v[v]) {
        d.vertices.push_back(s.vertices()[v]);
        vm.push_back(fm.map.vertex(v));
      }
    }
    std::vector<DirectedEdge> em;
    for (edge_id e = 0; e < s.number_of_edges(); ++e) {
      if (keep_e[e]) {
        auto const& r = s.edges()[e];
        d.edges.push_back({r.label, s.vertices()[r.from], s.vertices()[r.to], 0});
        em.push_back(fm.map.edge({e, true}));
      }
    }
    for (face_id f : faces) {
      FaceSpec fs{s.faces()[f].id, s.faces()[f].kind, {}, 0};
      for (auto const& l : s.faces()[f].boundary) {
        fs.boundary.push_back({s.label(l.edge), l.forward, 0, 0});
      }
      d.faces.push_back(std::move(fs));
    }
    return make_map(std::make_shared<Complex const>(build_complex(d)),
                    fm.map.target_ptr(), std::move(vm), std::move(em));
  }

}  // namespace tsq

#endif  // TSQ_DEVELOPER_HPP_
