#ifndef TSQ_GEODESICS_HPP_
#define TSQ_GEODESICS_HPP_

// Geodesics in the 1-skeleton: geodesic DAGs, Gersten-Short moves and choke
// points, canonical Gersten-Short geodesics and fellow-travel distances.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "developer.hpp"
#include "flats.hpp"

namespace tsq {

  inline constexpr size_t unreachable = std::numeric_limits<size_t>::max();

  // 1-skeleton of a complex with optional boundary: vertices whose
  // neighbourhood is not fully present (patch rim, incomplete links).
  class Skeleton {
   public:
    struct Step {
      vertex_id    to;
      DirectedEdge edge;
    };

    Skeleton(Complex const& c, std::vector<bool> boundary = {})
        : _c(&c), _adj(c.number_of_vertices()), _faces_of(c.number_of_edges()) {
      for (edge_id e = 0; e < c.number_of_edges(); ++e) {
        auto const& r = c.edges()[e];
        if (r.from == r.to) {
          continue;
        }
        _adj[r.from].push_back({r.to, {e, true}});
        _adj[r.to].push_back({r.from, {e, false}});
      }
      for (auto& a : _adj) {
        std::sort(a.begin(), a.end(), [](Step const& x, Step const& y) { return x.edge < y.edge; });
      }
      for (face_id f = 0; f < c.number_of_faces(); ++f) {
        for (auto const& l : c.faces()[f].boundary) {
          auto& fs = _faces_of[l.edge];
          if (fs.empty() || fs.back() != f) {
            fs.push_back(f);
          }
        }
      }
      if (std::find(boundary.begin(), boundary.end(), true) != boundary.end()) {
        std::vector<vertex_id> seeds;
        for (vertex_id v = 0; v < boundary.size(); ++v) {
          if (boundary[v]) {
            seeds.push_back(v);
          }
        }
        _rim = bfs(seeds);
      }
    }

    Complex const& complex() const noexcept {
      return *_c;
    }
    size_t size() const noexcept {
      return _adj.size();
    }
    std::vector<Step> const& steps(vertex_id v) const {
      return _adj[v];
    }
    std::vector<face_id> const& faces_of(edge_id e) const {
      return _faces_of[e];
    }
    bool has_boundary() const noexcept {
      return !_rim.empty();
    }
    // Distance to the nearest boundary vertex (unreachable without boundary).
    size_t rim_distance(vertex_id v) const {
      return _rim.empty() ? unreachable : _rim[v];
    }

    std::vector<size_t> bfs(std::vector<vertex_id> const& seeds) const {
      std::vector<size_t>   d(_adj.size(), unreachable);
      std::deque<vertex_id> q;
      for (auto s : seeds) {
        d[s] = 0;
        q.push_back(s);
      }
      while (!q.empty()) {
        auto x = q.front();
        q.pop_front();
        for (auto const& s : _adj[x]) {
          if (d[s.to] == unreachable) {
            d[s.to] = d[x] + 1;
            q.push_back(s.to);
          }
        }
      }
      return d;
    }
    std::vector<size_t> bfs(vertex_id v) const {
      return bfs(std::vector<vertex_id>{v});
    }

   private:
    Complex const*                    _c;
    std::vector<std::vector<Step>>    _adj;
    std::vector<std::vector<face_id>> _faces_of;
    std::vector<size_t>               _rim;
  };

  inline Skeleton skeleton(Complex const& c) {
    return Skeleton(c);
  }

  inline Skeleton skeleton(FlatPatch const& p) {
    std::vector<bool> rim(p.complex().number_of_vertices());
    for (vertex_id v = 0; v < rim.size(); ++v) {
      rim[v] = p.is_boundary(v);
    }
    return Skeleton(p.complex(), std::move(rim));
  }

  inline Skeleton skeleton(DevelopedBall const& b) {
    std::vector<bool> rim(b.ball().number_of_vertices());
    for (vertex_id v = 0; v < rim.size(); ++v) {
      rim[v] = !b.is_interior(v);
    }
    return Skeleton(b.ball(), std::move(rim));
  }

  struct Path {
    std::vector<vertex_id>    vertices;  // one more than edges
    std::vector<DirectedEdge> edges;

    size_t length() const noexcept {
      return edges.size();
    }
    // Vertex at time i, padded by the terminal vertex.
    vertex_id at(size_t i) const {
      return vertices[std::min(i, vertices.size() - 1)];
    }
    bool visits(vertex_id v) const {
      return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
    }
  };

  inline std::string format_path(Complex const& c, Path const& p) {
    std::string out;
    for (auto const& e : p.edges) {
      out += (out.empty() ? "" : " ") + c.token(e);
    }
    return out;
  }

  struct GeodesicDag {
    vertex_id                 from     = 0;
    vertex_id                 to       = 0;
    size_t                    distance = 0;
    std::vector<DirectedEdge> arcs;
    std::vector<size_t>       from_distance;
    std::vector<size_t>       to_distance;

    bool on_dag(vertex_id x) const {
      return from_distance[x] != unreachable && to_distance[x] != unreachable
             && from_distance[x] + to_distance[x] == distance;
    }
    std::vector<vertex_id> vertices() const {
      std::vector<vertex_id> out;
      for (vertex_id x = 0; x < from_distance.size(); ++x) {
        if (on_dag(x)) {
          out.push_back(x);
        }
      }
      return out;
    }
    std::vector<vertex_id> level(size_t k) const {
      std::vector<vertex_id> out;
      for (vertex_id x = 0; x < from_distance.size(); ++x) {
        if (on_dag(x) && from_distance[x] == k) {
          out.push_back(x);
        }
      }
      return out;
    }
  };

  inline GeodesicDag geodesic_dag(Skeleton const& g, vertex_id u, vertex_id v) {
    GeodesicDag d;
    d.from          = u;
    d.to            = v;
    d.from_distance = g.bfs(u);
    if (d.from_distance[v] == unreachable) {
      auto const& c = g.complex();
      throw Error(ErrorCode::Disconnected,
                  "'" + c.vertices()[u] + "' and '" + c.vertices()[v]
                      + "' lie in different components");
    }
    d.to_distance = g.bfs(v);
    d.distance    = d.from_distance[v];
    for (vertex_id x = 0; x < g.size(); ++x) {
      if (!d.on_dag(x)) {
        continue;
      }
      for (auto const& s : g.steps(x)) {
        if (d.on_dag(s.to) && d.from_distance[s.to] == d.from_distance[x] + 1) {
          d.arcs.push_back(s.edge);
        }
      }
    }
    std::sort(d.arcs.begin(), d.arcs.end());
    return d;
  }

  // Dag arcs leaving x, in identifier order.
  inline std::vector<Skeleton::Step> dag_steps(Skeleton const& g, GeodesicDag const& d, vertex_id x) {
    std::vector<Skeleton::Step> out;
    for (auto const& s : g.steps(x)) {
      if (d.on_dag(x) && d.on_dag(s.to) && d.from_distance[s.to] == d.from_distance[x] + 1) {
        out.push_back(s);
      }
    }
    return out;
  }

  enum class MoveKind { UniqueEdge, SquareMove, TriangleRowMove };

  inline std::string_view to_string(MoveKind k) {
    switch (k) {
      case MoveKind::UniqueEdge: return "UniqueEdge";
      case MoveKind::SquareMove: return "SquareMove";
      case MoveKind::TriangleRowMove: return "TriangleRowMove";
    }
    return "?";
  }

  struct MoveClassification {
    MoveKind                  kind = MoveKind::UniqueEdge;
    std::vector<DirectedEdge> first_edges;
    vertex_id                 next = 0;  // v'
    std::optional<face_id>    first_face;  // the square, or the triangle T
    std::vector<face_id>      row;         // squares between T and T'
    std::optional<face_id>    last_face;   // T'
  };

  namespace detail {
    // Rejects dags that come within two steps of the boundary.
    inline void check_margin(Skeleton const& g, GeodesicDag const& d) {
      if (!g.has_boundary()) {
        return;
      }
      for (vertex_id x = 0; x < g.size(); ++x) {
        if (d.on_dag(x) && g.rim_distance(x) < 2) {
          throw Error(ErrorCode::PatchTooSmall,
                      "geodesics from '" + g.complex().vertices()[d.from] + "' to '"
                          + g.complex().vertices()[d.to] + "' pass within "
                          + std::to_string(g.rim_distance(x))
                          + " of the boundary at '" + g.complex().vertices()[x] + "'");
        }
      }
    }

    // Position of a letter on edge e in face f.
    inline std::optional<size_t> letter_on(Complex const& c, face_id f, edge_id e) {
      auto const& w = c.faces()[f].boundary;
      for (size_t j = 0; j < w.size(); ++j) {
        if (w[j].edge == e) {
          return j;
        }
      }
      return std::nullopt;
    }
  }  // namespace detail

  inline MoveClassification classify_move(Skeleton const& g, GeodesicDag const& d) {
    Complex const& c = g.complex();
    if (d.distance == 0) {
      throw Error(ErrorCode::UnclassifiableFirstEdgeSet, "no move between a vertex and itself");
    }
    detail::check_margin(g, d);
    auto unclassifiable = [&](std::string const& why) {
      return Error(ErrorCode::UnclassifiableFirstEdgeSet,
                   "from '" + c.vertices()[d.from] + "' to '" + c.vertices()[d.to] + "': " + why);
    };

    MoveClassification m;
    for (auto const& s : dag_steps(g, d, d.from)) {
      m.first_edges.push_back(s.edge);
    }
    if (m.first_edges.size() == 1) {
      m.kind = MoveKind::UniqueEdge;
      m.next = c.terminal(m.first_edges[0]);
      return m;
    }
    if (m.first_edges.size() != 2) {
      throw unclassifiable(std::to_string(m.first_edges.size()) + " first edges");
    }
    auto const e0 = m.first_edges[0], e1 = m.first_edges[1];
    // A face with a corner at the source spanned by both first edges.
    std::optional<std::pair<face_id, size_t>> corner;
    for (face_id f : g.faces_of(e0.edge)) {
      auto const& w = c.faces()[f].boundary;
      size_t const n = w.size();
      for (size_t k = 0; k < n; ++k) {
        DirectedEdge const out = w[k], back = w[(k + n - 1) % n].reversed();
        if ((out == e0 && back == e1) || (out == e1 && back == e0)) {
          corner = {f, k};
        }
      }
    }
    if (!corner) {
      throw unclassifiable("the two first edges share no face");
    }
    auto const [f0, k0] = *corner;
    auto const& w0      = c.faces()[f0].boundary;
    m.first_face        = f0;
    if (c.faces()[f0].kind == FaceKind::Square) {
      m.kind = MoveKind::SquareMove;
      m.next = c.corner_vertex(f0, (k0 + 2) % 4);
      if (!d.on_dag(m.next) || d.from_distance[m.next] != 2) {
        throw unclassifiable("the opposite square corner is not on a geodesic");
      }
      return m;
    }

    // Walk the row of squares across the far edge of T until a triangle.
    m.kind       = MoveKind::TriangleRowMove;
    face_id prev = f0;
    edge_id    front = w0[(k0 + 1) % 3].edge;
    size_t     level = 1;
    auto dag_level = [&](vertex_id x, size_t lv) {
      return d.on_dag(x) && d.from_distance[x] == lv;
    };
    while (true) {
      std::vector<std::pair<face_id, size_t>> next;
      for (face_id f : g.faces_of(front)) {
        if (f == prev) {
          continue;
        }
        auto p = detail::letter_on(c, f, front);
        if (!p) {
          continue;
        }
        size_t const n  = c.faces()[f].boundary.size();
        bool         ok = true;
        for (size_t i = 2; i < n; ++i) {
          ok = ok && dag_level(c.corner_vertex(f, (*p + i) % n), level + 1);
        }
        if (ok) {
          next.emplace_back(f, *p);
        }
      }
      if (next.size() != 1) {
        throw unclassifiable(std::to_string(next.size())
                             + " faces continue the row at level " + std::to_string(level));
      }
      auto const [f, p] = next[0];
      if (c.faces()[f].kind == FaceKind::Triangle) {
        m.last_face = f;
        m.next      = c.corner_vertex(f, (p + 2) % 3);
        return m;
      }
      m.row.push_back(f);
      prev  = f;
      front = c.faces()[f].boundary[(p + 2) % 4].edge;
      ++level;
      if (level >= d.distance) {
        throw unclassifiable("the row of squares reaches the target");
      }
    }
  }

  inline MoveClassification classify_move(Skeleton const& g, vertex_id u, vertex_id v) {
    return classify_move(g, geodesic_dag(g, u, v));
  }

  // u, then each v' toward v, ending at v.
  inline std::vector<vertex_id> choke_points(Skeleton const& g, vertex_id u, vertex_id v) {
    std::vector<vertex_id> out{u};
    while (out.back() != v) {
      out.push_back(classify_move(g, geodesic_dag(g, out.back(), v)).next);
    }
    return out;
  }

  // Lexicographically least dag path, by directed-edge identifiers.
  inline Path canonical_geodesic(Skeleton const& g, GeodesicDag const& d) {
    Path p;
    p.vertices.push_back(d.from);
    while (p.vertices.back() != d.to) {
      auto steps = dag_steps(g, d, p.vertices.back());
      p.edges.push_back(steps.front().edge);
      p.vertices.push_back(steps.front().to);
    }
    return p;
  }

  inline Path gersten_short(Skeleton const& g, vertex_id u, vertex_id v) {
    auto const chokes = choke_points(g, u, v);
    Path       p;
    p.vertices.push_back(u);
    for (size_t i = 0; i + 1 < chokes.size(); ++i) {
      auto seg = canonical_geodesic(g, geodesic_dag(g, chokes[i], chokes[i + 1]));
      p.edges.insert(p.edges.end(), seg.edges.begin(), seg.edges.end());
      p.vertices.insert(p.vertices.end(), seg.vertices.begin() + 1, seg.vertices.end());
    }
    return p;
  }

  inline size_t fellow_travel_distance(Path const& p, Path const& q, Skeleton const& g) {
    size_t const steps = std::max(p.length(), q.length());
    size_t       k     = 0;
    for (size_t i = 0; i <= steps; ++i) {
      size_t const d = g.bfs(p.at(i))[q.at(i)];
      if (d == unreachable) {
        throw Error(ErrorCode::Disconnected, "paths lie in different components");
      }
      k = std::max(k, d);
    }
    return k;
  }

  // Well-formedness of one Gersten-Short query.
  struct GsCheck {
    bool        interior_safe   = true;
    bool        classified      = false;
    bool        decreasing      = false;
    bool        geodesic        = false;
    bool        through_chokes  = false;
    bool        unique_edge_cut = true;  // UniqueEdge moves pass a cut vertex
    std::string error;

    bool ok() const {
      return interior_safe && classified && decreasing && geodesic && through_chokes
             && unique_edge_cut;
    }
  };

  inline GsCheck check_gersten_short(Skeleton const& g, vertex_id u, vertex_id v) {
    GsCheck    r;
    auto const dag = geodesic_dag(g, u, v);
    std::vector<vertex_id> chokes;
    Path                   gs;
    try {
      chokes = choke_points(g, u, v);
      gs     = gersten_short(g, u, v);
    } catch (Error const& e) {
      r.error         = e.what();
      r.interior_safe = e.code() != ErrorCode::PatchTooSmall;
      return r;
    }
    r.classified = true;
    r.decreasing = true;
    for (size_t i = 0; i + 1 < chokes.size(); ++i) {
      r.decreasing = r.decreasing && dag.to_distance[chokes[i + 1]] < dag.to_distance[chokes[i]];
      auto const sub = geodesic_dag(g, chokes[i], v);
      auto const mv  = classify_move(g, sub);
      if (mv.kind == MoveKind::UniqueEdge) {
        r.unique_edge_cut = r.unique_edge_cut && sub.level(1).size() == 1;
      }
    }
    Complex const& c = g.complex();
    r.geodesic = gs.length() == dag.distance && gs.vertices.front() == u && gs.vertices.back() == v;
    for (size_t i = 0; r.geodesic && i < gs.length(); ++i) {
      r.geodesic = c.initial(gs.edges[i]) == gs.vertices[i]
                   && c.terminal(gs.edges[i]) == gs.vertices[i + 1];
    }
    r.through_chokes = true;
    size_t last      = 0;
    for (size_t i = 0; i < chokes.size(); ++i) {
      auto const w = chokes[i];
      r.through_chokes = r.through_chokes && dag.on_dag(w)
                         && (i == 0 || dag.from_distance[w] > last)
                         && gs.at(dag.from_distance[w]) == w;
      last = dag.from_distance[w];
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Fellow traveling in the radial flat
  ////////////////////////////////////////////////////////////////////////

  struct FtpRow {
    size_t ell           = 0;
    size_t d_u1v1        = 0;
    size_t d_u2v2        = 0;
    size_t min_dist_o_gs = 0;
    bool   passes_o      = false;
    size_t ft_distance   = 0;
  };

  struct FtpReport {
    std::vector<FtpRow> rows;

    size_t k() const {
      size_t m = 0;
      for (auto const& r : rows) {
        m = std::max(m, r.ft_distance);
      }
      return m;
    }

    std::string to_csv() const {
      std::ostringstream os;
      os << "ell,d_u1v1,d_u2v2,min_dist_o_GS,passes_o,ft_distance\n";
      for (auto const& r : rows) {
        os << r.ell << ',' << r.d_u1v1 << ',' << r.d_u2v2 << ',' << r.min_dist_o_gs << ','
           << (r.passes_o ? "true" : "false") << ',' << r.ft_distance << '\n';
      }
      return os.str();
    }
  };

  struct FtpExperiment {
    FlatPatch patch;
    vertex_id u1 = 0, u2 = 0, v1 = 0, v2 = 0;
    Path      gs1, gs2;  // u1 -> v1 and u2 -> v2
    FtpRow    row;
  };

  inline size_t default_ftp_radius(size_t ell) {
    return 2 * ell + 3;
  }

  // Searches the radial flat for u1, u2 at distance ell from o joined by an
  // edge with squares on both sides, and v1, v2 the rotations of u2, u1 by a
  // third of a turn with d(u1, v1) < d(u2, v2). Edges are scanned in
  // coordinate order, u1 before u2 and counterclockwise before clockwise.
  inline FtpExperiment flat_ftp_experiment(size_t ell, size_t radius) {
    if (ell < 3 || ell % 2 == 0) {
      throw Error(ErrorCode::BadParameter, "separation must be odd and at least 3");
    }
    if (radius < 2 * ell + 1) {
      throw Error(ErrorCode::PatchTooSmall,
                  "radius " + std::to_string(radius) + " is below " + std::to_string(2 * ell + 1));
    }
    FtpExperiment x{gen_flat(FlatKind::FlatF, radius), 0, 0, 0, 0, {}, {}, {}};
    auto const&   c = x.patch.complex();
    auto const    g = skeleton(x.patch);
    auto const    o = x.patch.center();

    std::vector<edge_id> candidates;
    for (edge_id e = 0; e < c.number_of_edges(); ++e) {
      auto const& r = c.edges()[e];
      if (x.patch.depth(r.from) != ell || x.patch.depth(r.to) != ell) {
        continue;
      }
      auto const& fs = g.faces_of(e);
      if (fs.size() == 2 && c.faces()[fs[0]].kind == FaceKind::Square
          && c.faces()[fs[1]].kind == FaceKind::Square) {
        candidates.push_back(e);
      }
    }
    auto key = [&](edge_id e) {
      auto a = x.patch.coord(c.edges()[e].from), b = x.patch.coord(c.edges()[e].to);
      return std::make_pair(std::min(a, b), std::max(a, b));
    };
    std::sort(candidates.begin(), candidates.end(),
              [&](edge_id a, edge_id b) { return key(a) < key(b); });

    for (edge_id e : candidates) {
      auto const [pa, pb] = key(e);
      for (auto [p1, p2] : {std::pair{pa, pb}, std::pair{pb, pa}}) {
        for (int turn : {2, -2}) {
          auto v1 = x.patch.find(rotate_60(p2, turn));
          auto v2 = x.patch.find(rotate_60(p1, turn));
          if (!v1 || !v2) {
            continue;
          }
          auto const u1 = *x.patch.find(p1), u2 = *x.patch.find(p2);
          auto const d1 = g.bfs(u1)[*v1], d2 = g.bfs(u2)[*v2];
          if (d1 >= d2) {
            continue;
          }
          x.u1 = u1;
          x.u2 = u2;
          x.v1 = *v1;
          x.v2 = *v2;
          x.gs1 = gersten_short(g, u1, *v1);
          x.gs2 = gersten_short(g, u2, *v2);
          auto const from_o = g.bfs(o);
          size_t     closest = unreachable;
          for (auto y : x.gs1.vertices) {
            closest = std::min(closest, from_o[y]);
          }
          auto const dag2 = geodesic_dag(g, u2, *v2);
          x.row = {ell,
                   d1,
                   d2,
                   closest,
                   dag2.on_dag(o) && dag2.level(dag2.from_distance[o]).size() == 1,
                   fellow_travel_distance(x.gs1, x.gs2, g)};
          return x;
        }
      }
    }
    throw Error(ErrorCode::NoConfigurationFound,
                "no configuration with separation " + std::to_string(ell));
  }

}  // namespace tsq

#endif  // TSQ_GEODESICS_HPP_
