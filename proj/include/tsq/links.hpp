#ifndef TSQ_LINKS_HPP_
#define TSQ_LINKS_HPP_

// Link graphs of vertices, the link condition and the girth-6 check.
// Angles are integers in units of pi/6: a triangle corner weighs 2, a square
// corner 3, and a full turn 12.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "complex.hpp"

namespace tsq {

  constexpr int triangle_angle = 2;
  constexpr int square_angle   = 3;
  constexpr int full_turn      = 12;

  constexpr int corner_angle(FaceKind k) noexcept {
    return k == FaceKind::Triangle ? triangle_angle : square_angle;
  }

  inline std::string angle_string(int units) {
    return std::to_string(units) + "*pi/6";
  }

  enum class End : std::uint8_t { Initial, Terminal };

  struct EdgeEnd {
    edge_id edge = 0;
    End     end  = End::Initial;

    friend bool operator==(EdgeEnd const&, EdgeEnd const&) = default;
    friend auto operator<=>(EdgeEnd const&, EdgeEnd const&) = default;
  };

  // End of the edge of `d` at its terminal vertex.
  constexpr EdgeEnd arrival_end(DirectedEdge d) noexcept {
    return {d.edge, d.forward ? End::Terminal : End::Initial};
  }

  // End of the edge of `d` at its initial vertex.
  constexpr EdgeEnd departure_end(DirectedEdge d) noexcept {
    return {d.edge, d.forward ? End::Initial : End::Terminal};
  }

  struct LinkArc {
    size_t  a      = 0;  // node indices
    size_t  b      = 0;
    int     weight = 0;
    face_id face   = 0;
    size_t  corner = 0;
  };

  class LinkGraph {
   public:
    LinkGraph() = default;

    vertex_id vertex() const noexcept {
      return _vertex;
    }
    std::vector<EdgeEnd> const& nodes() const noexcept {
      return _nodes;
    }
    std::vector<LinkArc> const& arcs() const noexcept {
      return _arcs;
    }
    size_t number_of_nodes() const noexcept {
      return _nodes.size();
    }
    size_t number_of_arcs() const noexcept {
      return _arcs.size();
    }

    std::optional<size_t> find_node(EdgeEnd e) const {
      auto it = _index.find(e);
      if (it == _index.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    // Arcs incident to each node (a self-loop is listed once).
    std::vector<std::vector<size_t>> incidence() const {
      std::vector<std::vector<size_t>> inc(_nodes.size());
      for (size_t i = 0; i < _arcs.size(); ++i) {
        inc[_arcs[i].a].push_back(i);
        if (_arcs[i].b != _arcs[i].a) {
          inc[_arcs[i].b].push_back(i);
        }
      }
      return inc;
    }

    int total_weight() const {
      int t = 0;
      for (auto const& a : _arcs) {
        t += a.weight;
      }
      return t;
    }

    size_t add_node(EdgeEnd e) {
      auto [it, fresh] = _index.emplace(e, _nodes.size());
      if (fresh) {
        _nodes.push_back(e);
      }
      return it->second;
    }

    void add_arc(LinkArc a) {
      _arcs.push_back(a);
    }

    void set_vertex(vertex_id v) noexcept {
      _vertex = v;
    }

   private:
    vertex_id                 _vertex = 0;
    std::vector<EdgeEnd>      _nodes;
    std::vector<LinkArc>      _arcs;
    std::map<EdgeEnd, size_t> _index;
  };

  namespace detail {
    inline void add_corner(LinkGraph&     g,
                           Complex const& c,
                           face_id        f,
                           size_t         j) {
      auto const&  w    = c.faces()[f].boundary;
      size_t const n    = w.size();
      size_t const a    = g.add_node(arrival_end(w[(j + n - 1) % n]));
      size_t const b    = g.add_node(departure_end(w[j]));
      g.add_arc({a, b, corner_angle(c.faces()[f].kind), f, j});
    }

    inline void add_edge_nodes(LinkGraph& g, Complex const& c, vertex_id v) {
      for (edge_id e = 0; e < c.number_of_edges(); ++e) {
        if (c.edges()[e].from == v) {
          g.add_node({e, End::Initial});
        }
        if (c.edges()[e].to == v) {
          g.add_node({e, End::Terminal});
        }
      }
    }
  }  // namespace detail

  // Nodes are the edge ends at v (ordered by edge, initial before terminal);
  // each face corner at v yields one arc between the ends flanking it.
  inline LinkGraph build_link(Complex const& c, vertex_id v) {
    if (v >= c.number_of_vertices()) {
      throw Error(ErrorCode::UnknownVertex,
                  "vertex index " + std::to_string(v) + " out of range");
    }
    LinkGraph g;
    g.set_vertex(v);
    detail::add_edge_nodes(g, c, v);
    for (face_id f = 0; f < c.number_of_faces(); ++f) {
      for (size_t j = 0; j < c.faces()[f].boundary.size(); ++j) {
        if (c.corner_vertex(f, j) == v) {
          detail::add_corner(g, c, f, j);
        }
      }
    }
    return g;
  }

  inline LinkGraph build_link(Complex const& c, std::string const& v) {
    return build_link(c, c.vertex(v));
  }

  // Links of every vertex in one pass over the faces.
  inline std::vector<LinkGraph> all_links(Complex const& c) {
    std::vector<LinkGraph> out(c.number_of_vertices());
    for (vertex_id v = 0; v < c.number_of_vertices(); ++v) {
      out[v].set_vertex(v);
    }
    for (edge_id e = 0; e < c.number_of_edges(); ++e) {
      out[c.edges()[e].from].add_node({e, End::Initial});
      out[c.edges()[e].to].add_node({e, End::Terminal});
    }
    for (face_id f = 0; f < c.number_of_faces(); ++f) {
      for (size_t j = 0; j < c.faces()[f].boundary.size(); ++j) {
        detail::add_corner(out[c.corner_vertex(f, j)], c, f, j);
      }
    }
    return out;
  }

  // Closed walk in a link graph repeating neither nodes nor arcs. nodes[k] is
  // the start of arcs[k]; the walk returns to nodes[0].
  struct CycleWitness {
    std::vector<size_t> nodes;
    std::vector<size_t> arcs;
    int                 total_weight = 0;
  };

  // Re-checks a witness against the graph: closed, injective, weight correct.
  inline bool is_valid_cycle(LinkGraph const& g, CycleWitness const& w) {
    if (w.arcs.empty() || w.arcs.size() != w.nodes.size()) {
      return false;
    }
    std::vector<size_t> ns = w.nodes, as = w.arcs;
    std::sort(ns.begin(), ns.end());
    std::sort(as.begin(), as.end());
    if (std::adjacent_find(ns.begin(), ns.end()) != ns.end()
        || std::adjacent_find(as.begin(), as.end()) != as.end()) {
      return false;
    }
    int          total = 0;
    size_t const n     = w.arcs.size();
    for (size_t k = 0; k < n; ++k) {
      if (w.arcs[k] >= g.number_of_arcs()) {
        return false;
      }
      auto const&  arc  = g.arcs()[w.arcs[k]];
      size_t const from = w.nodes[k], to = w.nodes[(k + 1) % n];
      if (!((arc.a == from && arc.b == to) || (arc.b == from && arc.a == to))) {
        return false;
      }
      total += arc.weight;
    }
    return total == w.total_weight;
  }

  // Minimum-weight injective cycle: for each arc, the cheapest path between
  // its ends avoiding it, plus the arc itself. Ties go to the lowest arc
  // index, so the result is deterministic.
  inline std::optional<CycleWitness> shortest_injective_cycle(LinkGraph const& g) {
    std::optional<CycleWitness> best;
    auto const                  inc = g.incidence();
    constexpr int               inf = std::numeric_limits<int>::max();
    for (size_t i = 0; i < g.number_of_arcs(); ++i) {
      auto const& arc = g.arcs()[i];
      if (best && arc.weight >= best->total_weight) {
        continue;
      }
      if (arc.a == arc.b) {
        best = CycleWitness{{arc.a}, {i}, arc.weight};
        continue;
      }
      // Dijkstra from arc.b to arc.a, so that walking the predecessor chain
      // from arc.a yields the cycle in order a -> ... -> b -> a.
      std::vector<int>    dist(g.number_of_nodes(), inf);
      std::vector<size_t> via(g.number_of_nodes(), SIZE_MAX);
      using item = std::pair<int, size_t>;
      std::priority_queue<item, std::vector<item>, std::greater<>> pq;
      dist[arc.b] = 0;
      pq.emplace(0, arc.b);
      while (!pq.empty()) {
        auto [d, x] = pq.top();
        pq.pop();
        if (d > dist[x] || x == arc.a) {
          continue;
        }
        for (size_t k : inc[x]) {
          if (k == i) {
            continue;
          }
          auto const&  o = g.arcs()[k];
          size_t const y = o.a == x ? o.b : o.a;
          if (d + o.weight < dist[y]) {
            dist[y] = d + o.weight;
            via[y]  = k;
            pq.emplace(dist[y], y);
          }
        }
      }
      if (dist[arc.a] == inf) {
        continue;
      }
      int const total = dist[arc.a] + arc.weight;
      if (best && total >= best->total_weight) {
        continue;
      }
      CycleWitness w;
      w.total_weight = total;
      for (size_t x = arc.a; x != arc.b;) {
        auto const& o = g.arcs()[via[x]];
        w.nodes.push_back(x);
        w.arcs.push_back(via[x]);
        x = o.a == x ? o.b : o.a;
      }
      w.nodes.push_back(arc.b);
      w.arcs.push_back(i);
      best = std::move(w);
    }
    return best;
  }

  struct VertexReport {
    vertex_id                   vertex = 0;
    std::optional<CycleWitness> shortest;
    bool                        ok = true;
  };

  struct LinkConditionReport {
    bool                      pass = true;
    std::vector<VertexReport> vertices;

    // Smallest cycle weight over all vertices, if any vertex has a cycle.
    std::optional<int> min_weight() const {
      std::optional<int> m;
      for (auto const& v : vertices) {
        if (v.shortest && (!m || v.shortest->total_weight < *m)) {
          m = v.shortest->total_weight;
        }
      }
      return m;
    }

    VertexReport const* first_failure() const {
      for (auto const& v : vertices) {
        if (!v.ok) {
          return &v;
        }
      }
      return nullptr;
    }
  };

  // Every injective loop in every link has angle at least 2*pi.
  inline LinkConditionReport check_gromov(Complex const& c) {
    LinkConditionReport r;
    for (auto const& g : all_links(c)) {
      VertexReport vr{g.vertex(), shortest_injective_cycle(g), true};
      vr.ok  = !vr.shortest || vr.shortest->total_weight >= full_turn;
      r.pass = r.pass && vr.ok;
      r.vertices.push_back(std::move(vr));
    }
    return r;
  }

  // All faces are triangles and every link has girth at least 6 arcs; for
  // such complexes this coincides with check_gromov.
  inline LinkConditionReport check_systolic_cover(Complex const& c) {
    for (auto const& f : c.faces()) {
      if (f.kind != FaceKind::Triangle) {
        throw Error(ErrorCode::NotTriangleComplex,
                    "face '" + f.id + "' is a square");
      }
    }
    LinkConditionReport r;
    for (auto const& g : all_links(c)) {
      VertexReport vr{g.vertex(), shortest_injective_cycle(g), true};
      vr.ok  = !vr.shortest || vr.shortest->arcs.size() >= 6;
      r.pass = r.pass && vr.ok;
      r.vertices.push_back(std::move(vr));
    }
    return r;
  }

  // Node name: the label for the initial end, label + "_bar" for the
  // terminal end.
  inline std::string node_name(Complex const& c, EdgeEnd e) {
    return c.label(e.edge) + (e.end == End::Initial ? "" : "_bar");
  }

  inline std::string export_dot(Complex const& c, LinkGraph const& g) {
    auto quote = [](std::string const& s) {
      return "\"" + s + "\"";
    };
    std::string out = "graph " + quote("link_" + c.vertices()[g.vertex()])
                      + " {\n";
    for (auto const& n : g.nodes()) {
      out += "  " + quote(node_name(c, n)) + ";\n";
    }
    for (auto const& a : g.arcs()) {
      out += "  " + quote(node_name(c, g.nodes()[a.a])) + " -- "
             + quote(node_name(c, g.nodes()[a.b]))
             + " [weight=" + std::to_string(a.weight) + ", label="
             + quote(c.faces()[a.face].id + ":" + std::to_string(a.corner))
             + (a.weight == triangle_angle ? ", style=solid"
                                           : ", style=dashed")
             + "];\n";
    }
    out += "}\n";
    return out;
  }

}  // namespace tsq

#endif  // TSQ_LINKS_HPP_
