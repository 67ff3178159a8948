#ifndef TSQ_FLATS_HPP_
#define TSQ_FLATS_HPP_

// Finite patches of the flats: the Eisenstein plane, the radial flat F with
// its hexagon and six square strips, and the crumpled flats F_n (G = F_1).
// Every cell is a unit triangle or unit square with exact coordinates in
// Q(sqrt 3), so all patches are metric.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "links.hpp"
#include "qsqrt3.hpp"

namespace tsq {

  enum class FlatKind { Eisenstein, FlatF, FlatG, FlatFn };

  inline std::string to_string(FlatKind k, unsigned n = 1) {
    switch (k) {
      case FlatKind::Eisenstein: return "Eisenstein";
      case FlatKind::FlatF: return "F";
      case FlatKind::FlatG: return "G";
      default: return "F" + std::to_string(n);
    }
  }

  inline std::optional<FlatKind> parse_flat_kind(std::string_view s) {
    if (s == "Eisenstein" || s == "E") {
      return FlatKind::Eisenstein;
    }
    if (s == "FlatF" || s == "F") {
      return FlatKind::FlatF;
    }
    if (s == "FlatG" || s == "G") {
      return FlatKind::FlatG;
    }
    if (s == "FlatFn" || s == "Fn") {
      return FlatKind::FlatFn;
    }
    return std::nullopt;
  }

  // A cell in the plane; corners are listed counter-clockwise.
  struct Polygon {
    FaceKind           kind = FaceKind::Triangle;
    std::vector<Point> corners;
  };

  namespace detail {
    inline double approx_norm(Point const& p) {
      return std::hypot(p.x.to_double(), p.y.to_double());
    }

    inline bool reaches(Polygon const& poly, double reach) {
      for (auto const& c : poly.corners) {
        if (approx_norm(c) <= reach) {
          return true;
        }
      }
      return false;
    }

    inline Polygon translated(Polygon p, Point const& by) {
      for (auto& c : p.corners) {
        c = c + by;
      }
      return p;
    }

    // Triangles of the lattice cone apex + s*a + t*b (s, t >= 0, a and b unit
    // vectors 60 degrees apart), limited to s + t < side, or up to `reach`
    // from the origin when side is 0.
    inline void add_cone(std::vector<Polygon>& out,
                         Point const&          apex,
                         Point const&          a,
                         Point const&          b,
                         std::int64_t          side,
                         double                reach) {
      std::int64_t const limit
          = side > 0 ? side
                     : static_cast<std::int64_t>(
                           std::ceil(reach + approx_norm(apex)) * 2 + 2);
      for (std::int64_t s = 0; s < limit; ++s) {
        for (std::int64_t t = 0; s + t < limit; ++t) {
          Point const p = apex + QSqrt3(s) * a + QSqrt3(t) * b;
          Polygon     up{FaceKind::Triangle, {p, p + a, p + b}};
          if (side > 0 || reaches(up, reach)) {
            out.push_back(std::move(up));
          }
          if (s + t + 1 < limit) {
            Polygon down{FaceKind::Triangle, {p + a, p + a + b, p + b}};
            if (side > 0 || reaches(down, reach)) {
              out.push_back(std::move(down));
            }
          }
        }
      }
    }

    // Squares of strip k: the strip between hexagon corners u_k and u_{k+1}
    // running along the ray at 30 + 60k degrees, `length` squares long, or up
    // to `reach` when length is 0.
    inline void add_strip(std::vector<Polygon>& out,
                          Point const&          centre,
                          int                   k,
                          std::int64_t          length,
                          double                reach) {
      Point const uk = centre + unit_at_30(2 * k);
      Point const ul = centre + unit_at_30(2 * k + 2);
      Point const w  = unit_at_30(2 * k + 1);
      std::int64_t const limit
          = length > 0 ? length
                       : static_cast<std::int64_t>(
                             std::ceil(reach + approx_norm(centre)) + 2);
      for (std::int64_t t = 0; t < limit; ++t) {
        QSqrt3 const t0(t), t1(t + 1);
        Polygon      sq{FaceKind::Square,
                   {uk + t0 * w, uk + t1 * w, ul + t1 * w, ul + t0 * w}};
        if (length > 0 || reaches(sq, reach)) {
          out.push_back(std::move(sq));
        }
      }
    }

    // Unit hexagon with corners centre + u_j, coned off from its centre.
    inline void add_hexagon(std::vector<Polygon>& out, Point const& centre) {
      for (int j = 0; j < 6; ++j) {
        out.push_back({FaceKind::Triangle,
                       {centre,
                        centre + unit_at_30(2 * j),
                        centre + unit_at_30(2 * j + 2)}});
      }
    }
  }  // namespace detail

  // Translation lattice of F_n: hexagon centres (sqrt 3 + n) * (i*w30 + j*w90).
  inline Point crumpled_lattice_point(unsigned n, std::int64_t i, std::int64_t j) {
    QSqrt3 const scale = QSqrt3::sqrt3() + QSqrt3(static_cast<std::int64_t>(n));
    return scale * (QSqrt3(i) * unit_at_30(1) + QSqrt3(j) * unit_at_30(3));
  }

  // Fundamental domain of F_n for its lattice: the hexagon at the origin,
  // the first n squares of the strips at -30, 30 and 90 degrees, and the
  // side-n triangles of the cones at 0 and 60 degrees.
  inline std::vector<Polygon> crumpled_fundamental_cells(unsigned n) {
    std::vector<Polygon> out;
    Point const          o{};
    detail::add_hexagon(out, o);
    for (int k : {5, 0, 1}) {
      detail::add_strip(out, o, k, n, 0);
    }
    for (int j : {0, 1}) {
      detail::add_cone(out,
                       unit_at_30(2 * j),
                       unit_at_30(2 * j - 1),
                       unit_at_30(2 * j + 1),
                       n,
                       0);
    }
    return out;
  }

  // All cells of the infinite flat having a corner within `reach` of the
  // origin (plus possibly a few more).
  inline std::vector<Polygon>
  flat_cells(FlatKind kind, unsigned n, double reach) {
    std::vector<Polygon> out;
    switch (kind) {
      case FlatKind::Eisenstein: {
        // Lattice with vertical edges spanned by w30 and w90.
        Point const        a = unit_at_30(1), b = unit_at_30(3);
        std::int64_t const m = static_cast<std::int64_t>(std::ceil(reach)) * 2 + 2;
        for (std::int64_t i = -m; i <= m; ++i) {
          for (std::int64_t j = -m; j <= m; ++j) {
            Point const p = QSqrt3(i) * a + QSqrt3(j) * b;
            for (Polygon poly : {Polygon{FaceKind::Triangle, {p, p + a, p + b}},
                                 Polygon{FaceKind::Triangle,
                                         {p + a, p + a + b, p + b}}}) {
              if (detail::reaches(poly, reach)) {
                out.push_back(std::move(poly));
              }
            }
          }
        }
        break;
      }
      case FlatKind::FlatF: {
        Point const o{};
        detail::add_hexagon(out, o);
        for (int k = 0; k < 6; ++k) {
          detail::add_strip(out, o, k, 0, reach);
          detail::add_cone(out,
                           unit_at_30(2 * k),
                           unit_at_30(2 * k - 1),
                           unit_at_30(2 * k + 1),
                           0,
                           reach);
        }
        break;
      }
      case FlatKind::FlatG:
      case FlatKind::FlatFn: {
        if (kind == FlatKind::FlatG) {
          n = 1;
        }
        auto const   tile   = crumpled_fundamental_cells(n);
        double const period = std::sqrt(3.0) + n;
        double const tile_r = 2.0 * n + 2.0;
        auto const   m = static_cast<std::int64_t>(std::ceil((reach + tile_r) / period * 2)) + 1;
        for (std::int64_t i = -m; i <= m; ++i) {
          for (std::int64_t j = -m; j <= m; ++j) {
            Point const p = crumpled_lattice_point(n, i, j);
            if (detail::approx_norm(p) > reach + tile_r) {
              continue;
            }
            for (auto const& c : tile) {
              Polygon moved = detail::translated(c, p);
              if (detail::reaches(moved, reach)) {
                out.push_back(std::move(moved));
              }
            }
          }
        }
        break;
      }
    }
    return out;
  }

  struct Region {
    FaceKind             kind = FaceKind::Triangle;
    std::vector<face_id> faces;
    bool                 bounded_in_patch = true;
  };

  class FlatPatch {
   public:
    FlatKind kind() const noexcept {
      return _kind;
    }
    unsigned n() const noexcept {
      return _n;
    }
    size_t radius() const noexcept {
      return _radius;
    }
    Complex const& complex() const noexcept {
      return _complex;
    }
    std::vector<Point> const& coords() const noexcept {
      return _coords;
    }
    Point const& coord(vertex_id v) const {
      return _coords[v];
    }
    vertex_id center() const noexcept {
      return _center;
    }
    bool is_boundary(vertex_id v) const {
      return _boundary[v];
    }
    std::vector<vertex_id> boundary() const {
      std::vector<vertex_id> out;
      for (vertex_id v = 0; v < _boundary.size(); ++v) {
        if (_boundary[v]) {
          out.push_back(v);
        }
      }
      return out;
    }
    // 1-skeleton distance from the centre.
    size_t depth(vertex_id v) const {
      return _depth[v];
    }

    std::optional<vertex_id> find(Point const& p) const {
      auto it = _index.find(p);
      if (it == _index.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    // Sum of corner angles at v, in units of pi/6.
    int angle_sum(vertex_id v) const {
      return _angle[v];
    }

    friend FlatPatch gen_flat(FlatKind kind, size_t radius, unsigned n);

   private:
    FlatKind                                      _kind   = FlatKind::Eisenstein;
    unsigned                                      _n      = 1;
    size_t                                        _radius = 0;
    Complex                                       _complex;
    std::vector<Point>                            _coords;
    vertex_id                                     _center = 0;
    std::vector<bool>                             _boundary;
    std::vector<size_t>                           _depth;
    std::vector<int>                              _angle;
    std::unordered_map<Point, vertex_id, PointHash> _index;
  };

  // Patch of all cells with a corner at 1-skeleton distance <= radius from
  // the centre o. Vertices are numbered by distance from o, then by
  // coordinates; vertex 0 is o.
  inline FlatPatch gen_flat(FlatKind kind, size_t radius, unsigned n = 1) {
    if (radius < 1) {
      throw Error(ErrorCode::BadParameter, "radius must be at least 1");
    }
    if (kind == FlatKind::FlatFn && n < 1) {
      throw Error(ErrorCode::BadParameter, "n must be at least 1");
    }
    if (kind == FlatKind::FlatG) {
      n = 1;
    }
    // Edges have unit length, so a path of k edges stays within distance k.
    auto const cells
        = flat_cells(kind, n, static_cast<double>(radius) + 2.5);

    std::vector<Point>                              pts;
    std::unordered_map<Point, vertex_id, PointHash> index;
    auto intern = [&](Point const& p) {
      auto [it, fresh] = index.emplace(p, static_cast<vertex_id>(pts.size()));
      if (fresh) {
        pts.push_back(p);
      }
      return it->second;
    };
    std::vector<std::vector<vertex_id>> cell_vs;
    for (auto const& c : cells) {
      std::vector<vertex_id> vs;
      for (auto const& p : c.corners) {
        vs.push_back(intern(p));
      }
      cell_vs.push_back(std::move(vs));
    }
    auto const origin = index.find(Point{});
    if (origin == index.end()) {
      throw Error(ErrorCode::BadParameter, "flat has no vertex at the origin");
    }

    std::vector<std::vector<vertex_id>> adj(pts.size());
    for (auto const& vs : cell_vs) {
      for (size_t k = 0; k < vs.size(); ++k) {
        adj[vs[k]].push_back(vs[(k + 1) % vs.size()]);
        adj[vs[(k + 1) % vs.size()]].push_back(vs[k]);
      }
    }
    constexpr size_t    unseen = std::numeric_limits<size_t>::max();
    std::vector<size_t> dist(pts.size(), unseen);
    std::deque<vertex_id> queue{origin->second};
    dist[origin->second] = 0;
    while (!queue.empty()) {
      vertex_id x = queue.front();
      queue.pop_front();
      for (vertex_id y : adj[x]) {
        if (dist[y] == unseen) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }

    std::vector<size_t> kept;
    for (size_t c = 0; c < cells.size(); ++c) {
      for (vertex_id v : cell_vs[c]) {
        if (dist[v] <= radius) {
          kept.push_back(c);
          break;
        }
      }
    }

    std::vector<vertex_id> used;
    {
      std::vector<bool> mark(pts.size(), false);
      for (size_t c : kept) {
        for (vertex_id v : cell_vs[c]) {
          if (!mark[v]) {
            mark[v] = true;
            used.push_back(v);
          }
        }
      }
    }
    std::sort(used.begin(), used.end(), [&](vertex_id a, vertex_id b) {
      if (dist[a] != dist[b]) {
        return dist[a] < dist[b];
      }
      return pts[a] < pts[b];
    });
    std::vector<vertex_id> renum(pts.size(), 0);
    for (size_t k = 0; k < used.size(); ++k) {
      renum[used[k]] = static_cast<vertex_id>(k);
    }

    ComplexDescription d;
    d.name = "flat_" + to_string(kind, n) + "_r" + std::to_string(radius);
    for (size_t k = 0; k < used.size(); ++k) {
      d.vertices.push_back(k == 0 ? "o" : "p" + std::to_string(k));
    }
    // Edges run from the lower to the higher vertex number.
    std::vector<std::pair<vertex_id, vertex_id>> edge_list;
    for (size_t c : kept) {
      auto const& vs = cell_vs[c];
      for (size_t k = 0; k < vs.size(); ++k) {
        vertex_id a = renum[vs[k]], b = renum[vs[(k + 1) % vs.size()]];
        edge_list.emplace_back(std::min(a, b), std::max(a, b));
      }
    }
    std::sort(edge_list.begin(), edge_list.end());
    edge_list.erase(std::unique(edge_list.begin(), edge_list.end()),
                    edge_list.end());
    std::unordered_map<std::uint64_t, size_t> edge_index;
    for (size_t k = 0; k < edge_list.size(); ++k) {
      auto [a, b] = edge_list[k];
      edge_index[(std::uint64_t(a) << 32) | b] = k;
      d.edges.push_back({"a" + std::to_string(k), d.vertices[a], d.vertices[b], 0});
    }

    std::vector<std::pair<std::vector<vertex_id>, size_t>> order;
    for (size_t c : kept) {
      std::vector<vertex_id> key;
      for (vertex_id v : cell_vs[c]) {
        key.push_back(renum[v]);
      }
      std::sort(key.begin(), key.end());
      order.emplace_back(std::move(key), c);
    }
    std::sort(order.begin(), order.end());
    size_t ntri = 0, nsq = 0;
    for (auto const& [key, c] : order) {
      FaceSpec fs;
      fs.kind = cells[c].kind;
      fs.id   = fs.kind == FaceKind::Triangle ? "t" + std::to_string(ntri++)
                                              : "s" + std::to_string(nsq++);
      auto const& vs = cell_vs[c];
      for (size_t k = 0; k < vs.size(); ++k) {
        vertex_id a = renum[vs[k]], b = renum[vs[(k + 1) % vs.size()]];
        size_t e = edge_index.at((std::uint64_t(std::min(a, b)) << 32) | std::max(a, b));
        fs.boundary.push_back({d.edges[e].label, a < b, 0, 0});
      }
      d.faces.push_back(std::move(fs));
    }

    FlatPatch p;
    p._kind    = kind;
    p._n       = n;
    p._radius  = radius;
    p._complex = build_complex(d);
    p._center  = 0;
    p._coords.resize(used.size());
    p._depth.resize(used.size());
    for (size_t k = 0; k < used.size(); ++k) {
      p._coords[k] = pts[used[k]];
      p._depth[k]  = dist[used[k]];
      p._index.emplace(p._coords[k], static_cast<vertex_id>(k));
    }
    p._angle.assign(used.size(), 0);
    for (face_id f = 0; f < p._complex.number_of_faces(); ++f) {
      auto const& face = p._complex.faces()[f];
      for (size_t j = 0; j < face.boundary.size(); ++j) {
        p._angle[p._complex.corner_vertex(f, j)] += corner_angle(face.kind);
      }
    }
    p._boundary.resize(used.size());
    for (size_t k = 0; k < used.size(); ++k) {
      p._boundary[k] = p._angle[k] < full_turn;
    }
    return p;
  }

  // Maximal edge-connected same-kind components of the faces.
  inline std::vector<Region> regions(FlatPatch const& p) {
    Complex const&                     c = p.complex();
    std::vector<std::vector<face_id>>  faces_on_edge(c.number_of_edges());
    for (face_id f = 0; f < c.number_of_faces(); ++f) {
      for (auto const& l : c.faces()[f].boundary) {
        faces_on_edge[l.edge].push_back(f);
      }
    }
    std::vector<bool>   seen(c.number_of_faces(), false);
    std::vector<Region> out;
    for (face_id s = 0; s < c.number_of_faces(); ++s) {
      if (seen[s]) {
        continue;
      }
      Region r;
      r.kind = c.faces()[s].kind;
      std::deque<face_id> queue{s};
      seen[s] = true;
      while (!queue.empty()) {
        face_id f = queue.front();
        queue.pop_front();
        r.faces.push_back(f);
        for (auto const& l : c.faces()[f].boundary) {
          for (face_id g : faces_on_edge[l.edge]) {
            if (!seen[g] && c.faces()[g].kind == r.kind) {
              seen[g] = true;
              queue.push_back(g);
            }
          }
        }
        for (size_t j = 0; j < c.faces()[f].boundary.size(); ++j) {
          if (p.is_boundary(c.corner_vertex(f, j))) {
            r.bounded_in_patch = false;
          }
        }
      }
      std::sort(r.faces.begin(), r.faces.end());
      out.push_back(std::move(r));
    }
    return out;
  }

  // Interior vertices meeting exactly three triangles and two squares, the
  // two squares sharing no edge.
  inline std::vector<vertex_id> corners(FlatPatch const& p) {
    Complex const&                       c = p.complex();
    std::vector<std::vector<face_id>>    squares(c.number_of_vertices());
    std::vector<size_t>                  triangles(c.number_of_vertices(), 0);
    for (face_id f = 0; f < c.number_of_faces(); ++f) {
      for (size_t j = 0; j < c.faces()[f].boundary.size(); ++j) {
        vertex_id v = c.corner_vertex(f, j);
        if (c.faces()[f].kind == FaceKind::Triangle) {
          ++triangles[v];
        } else {
          squares[v].push_back(f);
        }
      }
    }
    std::vector<vertex_id> out;
    for (vertex_id v = 0; v < c.number_of_vertices(); ++v) {
      if (p.is_boundary(v) || triangles[v] != 3 || squares[v].size() != 2) {
        continue;
      }
      bool share = false;
      for (auto const& a : c.faces()[squares[v][0]].boundary) {
        for (auto const& b : c.faces()[squares[v][1]].boundary) {
          share = share || a.edge == b.edge;
        }
      }
      if (!share) {
        out.push_back(v);
      }
    }
    return out;
  }

}  // namespace tsq

#endif  // TSQ_FLATS_HPP_
