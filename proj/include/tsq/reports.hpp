#ifndef TSQ_REPORTS_HPP_
#define TSQ_REPORTS_HPP_

// JSON documents for patches and verdict reports. Requires nlohmann/json
// (vendor/json.hpp) on the include path.

#include <string>

#include "json.hpp"
#include "geodesics.hpp"

namespace tsq {

  using Json = nlohmann::ordered_json;

  // p + q*sqrt(3) as exact rational strings.
  inline Json to_json(QSqrt3 const& x) {
    return Json{{"p", x.rational_part().to_string()}, {"q", x.sqrt3_part().to_string()}};
  }

  inline Json angle_json(int units) {
    return Json{{"units", units}, {"text", angle_string(units)}};
  }

  inline Json patch_json(FlatPatch const& p) {
    Complex const& c = p.complex();
    Json           vs = Json::array(), es = Json::array(), fs = Json::array(), rim = Json::array();
    for (vertex_id v = 0; v < c.number_of_vertices(); ++v) {
      vs.push_back({{"name", c.vertices()[v]},
                    {"x", to_json(p.coord(v).x)},
                    {"y", to_json(p.coord(v).y)},
                    {"depth", p.depth(v)}});
      if (p.is_boundary(v)) {
        rim.push_back(c.vertices()[v]);
      }
    }
    for (auto const& e : c.edges()) {
      es.push_back({{"label", e.label}, {"from", c.vertices()[e.from]}, {"to", c.vertices()[e.to]}});
    }
    for (auto const& f : c.faces()) {
      Json word = Json::array();
      for (auto const& l : f.boundary) {
        word.push_back(c.token(l));
      }
      fs.push_back({{"id", f.id},
                    {"kind", f.kind == FaceKind::Triangle ? "triangle" : "square"},
                    {"boundary", word}});
    }
    return Json{{"kind", to_string(p.kind(), p.n())},
                {"n", p.n()},
                {"radius", p.radius()},
                {"center", c.vertices()[p.center()]},
                {"vertices", vs},
                {"edges", es},
                {"faces", fs},
                {"boundary", rim}};
  }

  inline Json cycle_json(Complex const& c, LinkGraph const& g, CycleWitness const& w) {
    Json nodes = Json::array(), arcs = Json::array();
    for (auto n : w.nodes) {
      nodes.push_back(node_name(c, g.nodes()[n]));
    }
    for (auto a : w.arcs) {
      auto const& arc = g.arcs()[a];
      arcs.push_back({{"face", c.faces()[arc.face].id},
                      {"corner", arc.corner},
                      {"weight", angle_json(arc.weight)}});
    }
    return Json{{"vertex", c.vertices()[g.vertex()]},
                {"nodes", nodes},
                {"arcs", arcs},
                {"weight", angle_json(w.total_weight)}};
  }

  inline Json link_condition_json(Complex const& c, LinkConditionReport const& r) {
    Json per = Json::array();
    for (auto const& v : r.vertices) {
      Json item{{"vertex", c.vertices()[v.vertex]}, {"ok", v.ok}};
      if (v.shortest) {
        item["shortest"] = cycle_json(c, build_link(c, v.vertex), *v.shortest);
      } else {
        item["shortest"] = nullptr;
      }
      per.push_back(item);
    }
    return per;
  }

  inline Json injectivity_json(CellularMap const& m, InjectivityReport const& r) {
    Json cs = Json::array();
    for (auto const& col : r.collisions) {
      cs.push_back({{"vertex", m.source().vertices()[col.vertex]},
                    {"on", col.on_nodes ? "nodes" : "arcs"},
                    {"first", col.first},
                    {"second", col.second},
                    {"description", col.description}});
    }
    return Json{{"pass", r.pass},
                {"checked_vertices", r.checked_vertices},
                {"skipped_vertices", r.skipped_vertices},
                {"collisions", cs},
                {"conclusion", r.conclusion}};
  }

  inline Json ftp_json(FtpReport const& r) {
    Json rows = Json::array();
    for (auto const& x : r.rows) {
      rows.push_back({{"ell", x.ell},
                      {"d_u1v1", x.d_u1v1},
                      {"d_u2v2", x.d_u2v2},
                      {"min_dist_o_GS", x.min_dist_o_gs},
                      {"passes_o", x.passes_o},
                      {"ft_distance", x.ft_distance}});
    }
    return Json{{"rows", rows}, {"k", r.k()}};
  }

  // Verdict document shared by all commands.
  inline Json verdict_json(std::string const& command,
                           Json                inputs,
                           std::string const& verdict,
                           Json                witnesses,
                           Json                details,
                           double              total_ms) {
    return Json{{"command", command},
                {"inputs", std::move(inputs)},
                {"verdict", verdict},
                {"witnesses", std::move(witnesses)},
                {"details", std::move(details)},
                {"timings", {{"total_ms", total_ms}}}};
  }

}  // namespace tsq

#endif  // TSQ_REPORTS_HPP_
