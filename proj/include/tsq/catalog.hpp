#ifndef TSQ_CATALOG_HPP_
#define TSQ_CATALOG_HPP_

// Built-in complexes. Rhombi are stored split along a diagonal and the
// hexagon of X2 is coned off from a centre vertex "c", so every entry is a
// genuine triangle-square complex.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "complex.hpp"

namespace tsq {

  class CatalogEntry {
   public:
    enum class Kind { X1, X1Prime, X2, X2PrimeVariant };

    static CatalogEntry x1() {
      return CatalogEntry(Kind::X1, 0);
    }
    static CatalogEntry x1_prime() {
      return CatalogEntry(Kind::X1Prime, 0);
    }
    static CatalogEntry x2() {
      return CatalogEntry(Kind::X2, 0);
    }
    // Bit i of `variant` selects the diagonal of the rhombus replacing the
    // square on e_{i+1}: clear = P->R, set = Q->S. Variant 0 has the
    // diagonals of the drawn example.
    static CatalogEntry x2_prime(unsigned variant) {
      if (variant > 7) {
        throw Error(ErrorCode::BadParameter,
                    "X2' variant must be in 0..7, got "
                        + std::to_string(variant));
      }
      return CatalogEntry(Kind::X2PrimeVariant, variant);
    }

    Kind kind() const noexcept {
      return _kind;
    }
    unsigned variant() const noexcept {
      return _variant;
    }

    std::string name() const {
      switch (_kind) {
        case Kind::X1: return "X1";
        case Kind::X1Prime: return "X1'";
        case Kind::X2: return "X2";
        default: return "X2v" + std::to_string(_variant);
      }
    }

    // Accepts X1, X1' (or X1p, X1prime), X2, X2v<k> (or X2'<k>).
    static std::optional<CatalogEntry> parse(std::string_view s) {
      if (s == "X1") {
        return x1();
      }
      if (s == "X1'" || s == "X1p" || s == "X1prime") {
        return x1_prime();
      }
      if (s == "X2") {
        return x2();
      }
      for (std::string_view prefix : {"X2v", "X2'"}) {
        if (s.size() == prefix.size() + 1 && s.substr(0, 3) == prefix) {
          char d = s.back();
          if (d >= '0' && d <= '7') {
            return x2_prime(static_cast<unsigned>(d - '0'));
          }
        }
      }
      return std::nullopt;
    }

    static std::vector<CatalogEntry> all() {
      std::vector<CatalogEntry> out{x1(), x1_prime(), x2()};
      for (unsigned k = 0; k < 8; ++k) {
        out.push_back(x2_prime(k));
      }
      return out;
    }

   private:
    CatalogEntry(Kind k, unsigned v) : _kind(k), _variant(v) {}
    Kind     _kind;
    unsigned _variant;
  };

  namespace detail {
    inline FaceSpec face_spec(std::string id,
                              std::initializer_list<char const*> tokens) {
      FaceSpec f;
      f.id   = std::move(id);
      f.kind = tokens.size() == 3 ? FaceKind::Triangle : FaceKind::Square;
      for (std::string t : tokens) {
        bool fwd = t[0] != '-';
        f.boundary.push_back({fwd ? t : t.substr(1), fwd, 0, 0});
      }
      return f;
    }

    inline void add_loops(ComplexDescription&                d,
                          std::initializer_list<char const*> labels,
                          char const*                        v = "v") {
      for (auto l : labels) {
        d.edges.push_back({l, v, v, 0});
      }
    }

    // The two split rhombi and the third of ABCD shared by X1 and X1'.
    inline void add_x1_triangles(ComplexDescription& d) {
      d.faces.push_back(face_spec("K1L1N1", {"e2", "e3", "e1"}));
      d.faces.push_back(face_spec("L1M1N1", {"-e1", "-e2", "-e3"}));
      d.faces.push_back(face_spec("K2L2N2", {"-f1", "-f3", "-f2"}));
      d.faces.push_back(face_spec("L2M2N2", {"f2", "f1", "f3"}));
      d.faces.push_back(face_spec("ABC", {"-g", "-h", "-i"}));
      d.faces.push_back(face_spec("ACD", {"i", "g", "h"}));
    }
  }  // namespace detail

  inline Complex catalog(CatalogEntry const& entry) {
    using detail::face_spec;
    ComplexDescription d;
    d.name = entry.name();
    switch (entry.kind()) {
      case CatalogEntry::Kind::X1: {
        d.vertices = {"v"};
        detail::add_loops(
            d, {"e1", "e2", "e3", "f1", "f2", "f3", "g", "h", "i"});
        detail::add_x1_triangles(d);
        d.faces.push_back(face_spec("S1", {"e1", "g", "-f1", "-g"}));
        d.faces.push_back(face_spec("S2", {"e2", "h", "-f2", "-h"}));
        d.faces.push_back(face_spec("S3", {"e3", "i", "-f3", "-i"}));
        break;
      }
      case CatalogEntry::Kind::X1Prime: {
        d.vertices = {"v"};
        detail::add_loops(d,
                          {"e1",
                           "e2",
                           "e3",
                           "f1",
                           "f2",
                           "f3",
                           "g",
                           "h",
                           "i",
                           "d1",
                           "d2",
                           "d3"});
        detail::add_x1_triangles(d);
        // Rhombus P_k Q_k R_k S_k with angle pi/3 at P_k, split along Q_k S_k.
        d.faces.push_back(face_spec("P1Q1S1", {"e1", "d1", "-g"}));
        d.faces.push_back(face_spec("Q1R1S1", {"g", "-f1", "-d1"}));
        d.faces.push_back(face_spec("P2Q2S2", {"e2", "d2", "-h"}));
        d.faces.push_back(face_spec("Q2R2S2", {"h", "-f2", "-d2"}));
        d.faces.push_back(face_spec("P3Q3S3", {"e3", "d3", "-i"}));
        d.faces.push_back(face_spec("Q3R3S3", {"i", "-f3", "-d3"}));
        break;
      }
      case CatalogEntry::Kind::X2:
      case CatalogEntry::Kind::X2PrimeVariant: {
        d.vertices = {"c", "v"};
        detail::add_loops(d, {"e1", "e2", "e3", "f1", "f2", "f3"});
        for (int k = 1; k <= 6; ++k) {
          d.edges.push_back({"r" + std::to_string(k), "c", "v", 0});
        }
        // Hexagon ABCDEF coned from c; r_k runs from c to the k-th corner.
        d.faces.push_back(face_spec("cAB", {"r1", "-f3", "-r2"}));
        d.faces.push_back(face_spec("cBC", {"r2", "-f2", "-r3"}));
        d.faces.push_back(face_spec("cCD", {"r3", "-f1", "-r4"}));
        d.faces.push_back(face_spec("cDE", {"r4", "-f2", "-r5"}));
        d.faces.push_back(face_spec("cEF", {"r5", "-f3", "-r6"}));
        d.faces.push_back(face_spec("cFA", {"r6", "-f1", "-r1"}));
        d.faces.push_back(face_spec("K1L1M1", {"e1", "e2", "e3"}));
        d.faces.push_back(face_spec("K2L2M2", {"e1", "e3", "e2"}));
        if (entry.kind() == CatalogEntry::Kind::X2) {
          d.faces.push_back(face_spec("S1", {"e1", "f1", "-e1", "f1"}));
          d.faces.push_back(face_spec("S2", {"e2", "f2", "-e2", "f2"}));
          d.faces.push_back(face_spec("S3", {"e3", "f3", "-e3", "f3"}));
          break;
        }
        for (unsigned i = 0; i < 3; ++i) {
          std::string const k = std::to_string(i + 1);
          std::string const e = "e" + k, f = "f" + k, dg = "d" + k;
          d.edges.push_back({dg, "v", "v", 0});
          auto tri = [&](std::string id, std::array<std::string, 3> w) {
            FaceSpec fs;
            fs.id   = std::move(id);
            fs.kind = FaceKind::Triangle;
            for (auto const& t : w) {
              bool fwd = t[0] != '-';
              fs.boundary.push_back({fwd ? t : t.substr(1), fwd, 0, 0});
            }
            d.faces.push_back(std::move(fs));
          };
          if (((entry.variant() >> i) & 1U) == 0) {
            tri("P" + k + "Q" + k + "R" + k, {e, f, "-" + dg});
            tri("P" + k + "R" + k + "S" + k, {dg, "-" + e, f});
          } else {
            tri("P" + k + "Q" + k + "S" + k, {e, dg, f});
            tri("Q" + k + "R" + k + "S" + k, {f, "-" + e, "-" + dg});
          }
        }
        break;
      }
    }
    return build_complex(d);
  }

}  // namespace tsq

#endif  // TSQ_CATALOG_HPP_
