#ifndef TSQ_COMPLEX_HPP_
#define TSQ_COMPLEX_HPP_

// Quotient-level triangle-square complexes: vertices, labelled unit edges
// and faces given by closed boundary words.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <tuple>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "error.hpp"

namespace tsq {

  using vertex_id = std::uint32_t;
  using edge_id   = std::uint32_t;
  using face_id   = std::uint32_t;

  enum class FaceKind : std::uint8_t { Triangle, Square };

  constexpr size_t face_length(FaceKind k) noexcept {
    return k == FaceKind::Triangle ? 3 : 4;
  }

  constexpr char const* to_string(FaceKind k) noexcept {
    return k == FaceKind::Triangle ? "triangle" : "square";
  }

  // An edge traversed along (forward) or against its orientation.
  struct DirectedEdge {
    edge_id edge    = 0;
    bool    forward = true;

    DirectedEdge reversed() const noexcept {
      return {edge, !forward};
    }

    friend bool operator==(DirectedEdge const&, DirectedEdge const&) = default;
    friend auto operator<=>(DirectedEdge const& a, DirectedEdge const& b) {
      if (a.edge != b.edge) {
        return a.edge <=> b.edge;
      }
      return static_cast<int>(a.forward) <=> static_cast<int>(b.forward);
    }
  };

  using Word = std::vector<DirectedEdge>;

  struct EdgeRecord {
    std::string label;
    vertex_id   from = 0;
    vertex_id   to   = 0;
  };

  struct Face {
    std::string id;
    FaceKind    kind = FaceKind::Triangle;
    Word        boundary;
  };

  ////////////////////////////////////////////////////////////////////////
  // Unvalidated description, the input of build_complex
  ////////////////////////////////////////////////////////////////////////

  struct LetterSpec {
    std::string label;
    bool        forward = true;
    // Source position, used only in diagnostics (0 = unknown).
    size_t line   = 0;
    size_t column = 0;
  };

  struct EdgeSpec {
    std::string label;
    std::string from;
    std::string to;
    size_t      line = 0;
  };

  struct FaceSpec {
    std::string             id;
    FaceKind                kind = FaceKind::Triangle;
    std::vector<LetterSpec> boundary;
    size_t                  line = 0;
  };

  struct ComplexDescription {
    std::string              name;
    std::vector<std::string> vertices;
    std::vector<EdgeSpec>    edges;
    std::vector<FaceSpec>    faces;
  };

  ////////////////////////////////////////////////////////////////////////
  // Word utilities
  ////////////////////////////////////////////////////////////////////////

  // The word read backwards with every letter reversed: the same boundary
  // traversed in the opposite direction.
  inline Word reflected(Word const& w) {
    Word r;
    r.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      r.push_back(it->reversed());
    }
    return r;
  }

  inline Word rotated(Word const& w, size_t by) {
    Word r(w.size());
    for (size_t k = 0; k < w.size(); ++k) {
      r[k] = w[(k + by) % w.size()];
    }
    return r;
  }

  // How a source boundary word lies on a target word: source[k] equals
  // target[(offset + k) % n] when !reflect, and target[(offset - k) % n]
  // reversed when reflect.
  struct Alignment {
    size_t offset  = 0;
    bool   reflect = false;

    // Target corner index of source corner j. Corner j sits at the initial
    // vertex of letter j.
    size_t corner(size_t j, size_t n) const noexcept {
      return reflect ? (offset + 2 * n - j + 1) % n : (offset + j) % n;
    }
  };

  // First alignment of src onto dst (rotations before reflections), if any.
  inline std::optional<Alignment>
  align_words(Word const& src, Word const& dst, bool allow_reflection = true) {
    size_t const n = src.size();
    if (n != dst.size() || n == 0) {
      return std::nullopt;
    }
    for (int refl = 0; refl <= (allow_reflection ? 1 : 0); ++refl) {
      for (size_t off = 0; off < n; ++off) {
        bool ok = true;
        for (size_t k = 0; k < n && ok; ++k) {
          if (refl == 0) {
            ok = src[k] == dst[(off + k) % n];
          } else {
            ok = src[k] == dst[(off + n - k) % n].reversed();
          }
        }
        if (ok) {
          return Alignment{off, refl == 1};
        }
      }
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Complex
  ////////////////////////////////////////////////////////////////////////

  class Complex {
   public:
    Complex() = default;

    std::string const& name() const noexcept {
      return _name;
    }
    std::vector<std::string> const& vertices() const noexcept {
      return _vertices;
    }
    std::vector<EdgeRecord> const& edges() const noexcept {
      return _edges;
    }
    std::vector<Face> const& faces() const noexcept {
      return _faces;
    }

    size_t number_of_vertices() const noexcept {
      return _vertices.size();
    }
    size_t number_of_edges() const noexcept {
      return _edges.size();
    }
    size_t number_of_faces() const noexcept {
      return _faces.size();
    }

    std::optional<vertex_id> find_vertex(std::string const& name) const {
      auto it = _vertex_index.find(name);
      if (it == _vertex_index.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    vertex_id vertex(std::string const& name) const {
      auto v = find_vertex(name);
      if (!v) {
        throw Error(ErrorCode::UnknownVertex, "no vertex '" + name + "'");
      }
      return *v;
    }

    std::optional<edge_id> find_edge(std::string const& label) const {
      auto it = _edge_index.find(label);
      if (it == _edge_index.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    edge_id edge(std::string const& label) const {
      auto e = find_edge(label);
      if (!e) {
        throw Error(ErrorCode::UnknownLabel, "no edge '" + label + "'");
      }
      return *e;
    }

    // Directed edge from a token such as "e1" or "-e1".
    DirectedEdge letter(std::string const& token) const {
      if (!token.empty() && token[0] == '-') {
        return {edge(token.substr(1)), false};
      }
      return {edge(token), true};
    }

    Word word(std::initializer_list<char const*> tokens) const {
      Word w;
      for (auto t : tokens) {
        w.push_back(letter(t));
      }
      return w;
    }

    std::string const& label(edge_id e) const {
      return _edges[e].label;
    }

    std::string token(DirectedEdge d) const {
      return (d.forward ? "" : "-") + _edges[d.edge].label;
    }

    vertex_id initial(DirectedEdge d) const noexcept {
      auto const& e = _edges[d.edge];
      return d.forward ? e.from : e.to;
    }

    vertex_id terminal(DirectedEdge d) const noexcept {
      auto const& e = _edges[d.edge];
      return d.forward ? e.to : e.from;
    }

    // Vertex at corner j of face f (initial vertex of the j-th letter).
    vertex_id corner_vertex(face_id f, size_t j) const noexcept {
      return initial(_faces[f].boundary[j]);
    }

    ComplexDescription description() const;

    friend Complex build_complex(ComplexDescription const& desc);

   private:
    std::string                                _name;
    std::vector<std::string>                   _vertices;
    std::vector<EdgeRecord>                    _edges;
    std::vector<Face>                          _faces;
    std::unordered_map<std::string, vertex_id> _vertex_index;
    std::unordered_map<std::string, edge_id>   _edge_index;
  };

  // Validates a description and returns the complex.
  inline Complex build_complex(ComplexDescription const& desc) {
    Complex c;
    c._name = desc.name;
    c._vertices.reserve(desc.vertices.size());
    for (auto const& v : desc.vertices) {
      if (!c._vertex_index.emplace(v, c._vertices.size()).second) {
        throw Error(ErrorCode::DuplicateLabel, "vertex '" + v + "' repeated");
      }
      c._vertices.push_back(v);
    }
    c._edges.reserve(desc.edges.size());
    for (auto const& e : desc.edges) {
      auto lookup = [&](std::string const& v) {
        auto it = c._vertex_index.find(v);
        if (it == c._vertex_index.end()) {
          throw Error(ErrorCode::UnknownVertex,
                      e.line,
                      0,
                      "edge '" + e.label + "' uses undeclared vertex '" + v
                          + "'");
        }
        return it->second;
      };
      EdgeRecord rec{e.label, lookup(e.from), lookup(e.to)};
      if (!c._edge_index.emplace(e.label, c._edges.size()).second) {
        throw Error(ErrorCode::DuplicateLabel,
                    e.line,
                    0,
                    "edge label '" + e.label + "' repeated");
      }
      c._edges.push_back(std::move(rec));
    }
    std::unordered_set<std::string> face_ids;
    c._faces.reserve(desc.faces.size());
    for (auto const& f : desc.faces) {
      if (!face_ids.insert(f.id).second) {
        throw Error(ErrorCode::DuplicateLabel,
                    f.line,
                    0,
                    "face id '" + f.id + "' repeated");
      }
      if (f.boundary.size() != face_length(f.kind)) {
        throw Error(ErrorCode::BadFaceLength,
                    f.line,
                    0,
                    std::string(to_string(f.kind)) + " '" + f.id + "' has "
                        + std::to_string(f.boundary.size()) + " letters");
      }
      Face face{f.id, f.kind, {}};
      for (auto const& l : f.boundary) {
        auto it = c._edge_index.find(l.label);
        if (it == c._edge_index.end()) {
          throw Error(ErrorCode::UnknownLabel,
                      l.line,
                      l.column,
                      "face '" + f.id + "' references undeclared edge '"
                          + l.label + "'");
        }
        face.boundary.push_back({it->second, l.forward});
      }
      size_t const n = face.boundary.size();
      for (size_t k = 0; k < n; ++k) {
        if (c.terminal(face.boundary[k]) != c.initial(face.boundary[(k + 1) % n])) {
          throw Error(ErrorCode::OpenBoundaryWord,
                      f.line,
                      0,
                      "boundary of face '" + f.id + "' is not closed after letter "
                          + std::to_string(k + 1));
        }
      }
      c._faces.push_back(std::move(face));
    }
    return c;
  }

  inline ComplexDescription Complex::description() const {
    ComplexDescription d;
    d.name     = _name;
    d.vertices = _vertices;
    for (auto const& e : _edges) {
      d.edges.push_back({e.label, _vertices[e.from], _vertices[e.to], 0});
    }
    for (auto const& f : _faces) {
      FaceSpec fs{f.id, f.kind, {}, 0};
      for (auto const& l : f.boundary) {
        fs.boundary.push_back({_edges[l.edge].label, l.forward, 0, 0});
      }
      d.faces.push_back(std::move(fs));
    }
    return d;
  }

  inline long euler_characteristic(Complex const& c) {
    return static_cast<long>(c.number_of_vertices())
           - static_cast<long>(c.number_of_edges())
           + static_cast<long>(c.number_of_faces());
  }

  // Boundary word as label tokens, rotated to the lexicographically least
  // rotation (tokens compared as strings, so "-a" < "a").
  inline std::vector<std::string> minimal_rotation(Complex const&     c,
                                                   Word const& w) {
    std::vector<std::string> toks;
    for (auto const& l : w) {
      toks.push_back(c.token(l));
    }
    std::vector<std::string> best = toks;
    for (size_t r = 1; r < toks.size(); ++r) {
      std::vector<std::string> cand;
      for (size_t k = 0; k < toks.size(); ++k) {
        cand.push_back(toks[(k + r) % toks.size()]);
      }
      best = std::min(best, cand);
    }
    return best;
  }

  // Faces of one complex are equal when they have the same kind and their
  // boundary words agree up to cyclic rotation.
  inline bool same_face(Word const& a, Word const& b) {
    auto al = align_words(a, b, false);
    return al.has_value();
  }

  namespace detail {
    struct CanonicalForm {
      std::string                                      name;
      std::vector<std::string>                         vertices;
      std::vector<std::tuple<std::string, std::string, std::string>> edges;
      std::vector<std::tuple<int, std::vector<std::string>, std::string>>
          faces;
      friend bool operator==(CanonicalForm const&, CanonicalForm const&)
          = default;
    };

    inline CanonicalForm canonical_form(Complex const& c) {
      CanonicalForm f;
      f.name     = c.name();
      f.vertices = c.vertices();
      std::sort(f.vertices.begin(), f.vertices.end());
      for (auto const& e : c.edges()) {
        f.edges.emplace_back(
            e.label, c.vertices()[e.from], c.vertices()[e.to]);
      }
      std::sort(f.edges.begin(), f.edges.end());
      for (auto const& fc : c.faces()) {
        f.faces.emplace_back(static_cast<int>(fc.kind),
                             minimal_rotation(c, fc.boundary),
                             fc.id);
      }
      std::sort(f.faces.begin(), f.faces.end());
      return f;
    }
  }  // namespace detail

  // Equality of complexes up to the order of listings and cyclic rotation of
  // boundary words.
  inline bool structurally_equal(Complex const& a, Complex const& b) {
    return detail::canonical_form(a) == detail::canonical_form(b);
  }

}  // namespace tsq

#endif  // TSQ_COMPLEX_HPP_
