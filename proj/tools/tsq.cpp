#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tsq/catalog.hpp"
#include "tsq/reports.hpp"
#include "tsq/specio.hpp"

using namespace tsq;

namespace {

  enum Exit { Pass = 0, Fail = 1, Usage = 2, Precondition = 3 };

  struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  std::string read_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw IoError("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void write_file(std::string const& path, std::string const& text) {
    if (path == "-") {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
      throw IoError("cannot write '" + path + "'");
    }
  }

  // "catalog:NAME" or a path to a .tsq document.
  std::shared_ptr<Complex const> load(std::string const& input) {
    std::string const prefix = "catalog:";
    if (input.rfind(prefix, 0) == 0) {
      auto entry = CatalogEntry::parse(input.substr(prefix.size()));
      if (!entry) {
        throw Error(ErrorCode::BadParameter, "unknown catalog complex '" + input.substr(prefix.size()) + "'");
      }
      return std::make_shared<Complex const>(catalog(*entry));
    }
    return std::make_shared<Complex const>(parse_complex(read_file(input)));
  }

  int exit_for(ErrorCode c) {
    switch (c) {
      case ErrorCode::PreconditionFailed:
      case ErrorCode::ResourceLimit:
      case ErrorCode::BallTooSmall:
      case ErrorCode::AnchorMismatch:
      case ErrorCode::PatchTooSmall:
      case ErrorCode::Disconnected:
      case ErrorCode::UnclassifiableFirstEdgeSet:
      case ErrorCode::NoConfigurationFound: return Precondition;
      default: return Usage;
    }
  }

  class Clock {
   public:
    double ms() const {
      return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - _t0).count();
    }

   private:
    std::chrono::steady_clock::time_point _t0 = std::chrono::steady_clock::now();
  };

  // Writes the verdict document when --json was given.
  struct Reporter {
    std::string json_path;

    void emit(std::string const& command, Json inputs, bool pass, Json witnesses, Json details,
              Clock const& clock) const {
      if (json_path.empty()) {
        return;
      }
      auto doc = verdict_json(command, std::move(inputs), pass ? "pass" : "fail",
                              std::move(witnesses), std::move(details), clock.ms());
      write_file(json_path, doc.dump(2) + "\n");
    }
  };

  void print_cycle(Complex const& c, LinkGraph const& g, CycleWitness const& w) {
    std::cout << "  cycle of weight " << angle_string(w.total_weight) << " (" << w.total_weight
              << " units):";
    for (auto n : w.nodes) {
      std::cout << ' ' << node_name(c, g.nodes()[n]);
    }
    std::cout << '\n';
  }

  int run_check(std::string const& which, std::string const& input, Reporter const& rep) {
    Clock      clock;
    auto const c = load(input);
    LinkConditionReport r;
    if (which == "systolic") {
      try {
        r = check_systolic_cover(*c);
      } catch (Error const& e) {
        if (e.code() != ErrorCode::NotTriangleComplex) {
          throw;
        }
        std::cout << "FAIL systolic " << c->name() << ": " << e.what() << '\n';
        rep.emit("check systolic", {{"input", input}}, false, Json::array(),
                 {{"reason", "NotTriangleComplex"}, {"message", e.what()}}, clock);
        return Fail;
      }
    } else {
      r = check_gromov(*c);
    }
    std::cout << (r.pass ? "PASS " : "FAIL ") << which << ' ' << c->name() << '\n';
    Json witnesses = Json::array();
    for (auto const& v : r.vertices) {
      std::cout << "vertex " << c->vertices()[v.vertex] << ": ";
      if (!v.shortest) {
        std::cout << "no cycles" << (v.ok ? "" : ", not ok") << '\n';
        continue;
      }
      auto const g = build_link(*c, v.vertex);
      if (which == "systolic") {
        std::cout << "girth " << v.shortest->arcs.size() << (v.ok ? "" : " < 6") << '\n';
      } else {
        std::cout << "min " << angle_string(v.shortest->total_weight) << (v.ok ? "" : " < 2pi")
                  << '\n';
      }
      if (!v.ok) {
        print_cycle(*c, g, *v.shortest);
        witnesses.push_back(cycle_json(*c, g, *v.shortest));
      }
    }
    Json details{{"vertices", link_condition_json(*c, r)}};
    if (auto m = r.min_weight()) {
      details["min_weight"] = angle_json(*m);
    }
    rep.emit("check " + which, {{"input", input}}, r.pass, witnesses, details, clock);
    return r.pass ? Pass : Fail;
  }

  int run_validate(std::string const& path, Reporter const& rep) {
    Clock      clock;
    auto const text = read_file(path);
    try {
      auto c = parse_complex(text);
      std::cout << "valid " << c.name() << ": " << c.number_of_vertices() << " vertices, "
                << c.number_of_edges() << " edges, " << c.number_of_faces()
                << " faces, euler characteristic " << euler_characteristic(c) << '\n';
      rep.emit("validate", {{"input", path}}, true, Json::array(),
               {{"name", c.name()},
                {"vertices", c.number_of_vertices()},
                {"edges", c.number_of_edges()},
                {"faces", c.number_of_faces()},
                {"euler_characteristic", euler_characteristic(c)}},
               clock);
      return Pass;
    } catch (Error const& e) {
      std::cout << "invalid: " << e.what() << '\n';
      rep.emit("validate", {{"input", path}}, false,
               Json::array({{{"code", std::string(to_string(e.code()))},
                             {"line", e.line()},
                             {"column", e.column()},
                             {"message", e.what()}}}),
               Json::object(), clock);
      return Fail;
    }
  }

  int run_link(std::string const& input, std::string const& vertex, std::string const& dot) {
    auto const c = load(input);
    auto const g = build_link(*c, vertex);
    std::cout << "link of " << vertex << " in " << c->name() << ": " << g.number_of_nodes()
              << " nodes, " << g.number_of_arcs() << " arcs, total "
              << angle_string(g.total_weight()) << '\n';
    if (auto w = shortest_injective_cycle(g)) {
      print_cycle(*c, g, *w);
    } else {
      std::cout << "  no cycles\n";
    }
    if (!dot.empty()) {
      write_file(dot, export_dot(*c, g));
    }
    return Pass;
  }

  FlatKind flat_kind_arg(std::string const& s) {
    auto k = parse_flat_kind(s);
    if (!k) {
      throw Error(ErrorCode::BadParameter, "unknown flat kind '" + s + "'");
    }
    return *k;
  }

  int run_flat(std::string const& kind, size_t radius, unsigned n, std::string const& json) {
    auto const p = gen_flat(flat_kind_arg(kind), radius, n);
    auto const& c = p.complex();
    size_t       triangles = 0;
    for (auto const& f : c.faces()) {
      triangles += f.kind == FaceKind::Triangle;
    }
    std::cout << "flat " << to_string(p.kind(), p.n()) << " radius " << radius << ": "
              << c.number_of_vertices() << " vertices, " << c.number_of_edges() << " edges, "
              << triangles << " triangles, " << c.number_of_faces() - triangles << " squares, "
              << corners(p).size() << " corners, " << regions(p).size() << " regions\n";
    if (!json.empty()) {
      write_file(json, patch_json(p).dump(2) + "\n");
    }
    return Pass;
  }

  int report_map(std::string const& command, Json inputs, CellularMap const& m,
                 Reporter const& rep, Clock const& clock) {
    auto const r = check_link_injective(m);
    std::cout << (r.pass ? "PASS " : "FAIL ") << command << ": cell-preserving, " << r.conclusion
              << " (" << r.checked_vertices << " vertices checked, " << r.skipped_vertices
              << " skipped)\n";
    for (auto const& col : r.collisions) {
      std::cout << "  at " << m.source().vertices()[col.vertex] << ": " << col.description << '\n';
    }
    rep.emit(command, std::move(inputs), r.pass, injectivity_json(m, r)["collisions"],
             injectivity_json(m, r), clock);
    return r.pass ? Pass : Fail;
  }

  int run_map_check(std::string const& src, std::string const& dst, std::string const& map,
                    Reporter const& rep) {
    Clock clock;
    auto  s = load(src), t = load(dst);
    auto  text = read_file(map);
    Json  inputs{{"src", src}, {"dst", dst}, {"map", map}};
    try {
      auto m = parse_map(text, s, t);
      return report_map("map check", inputs, m, rep, clock);
    } catch (Error const& e) {
      switch (e.code()) {
        case ErrorCode::IncidenceViolation:
        case ErrorCode::KindMismatch:
        case ErrorCode::NoMatchingTargetFace:
          std::cout << "FAIL map check: " << e.what() << '\n';
          rep.emit("map check", inputs, false,
                   Json::array({{{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}),
                   Json::object(), clock);
          return Fail;
        default: throw;
      }
    }
  }

  BuiltinMapKind builtin_kind_arg(std::string const& s) {
    auto k = parse_builtin_map_kind(s);
    if (!k) {
      throw Error(ErrorCode::BadParameter, "unknown builtin map '" + s + "'");
    }
    return *k;
  }

  int run_map_builtin(std::string const& kind, unsigned n, size_t radius, std::string const& out,
                      Reporter const& rep) {
    Clock clock;
    auto  fm = builtin_map(builtin_kind_arg(kind), n, radius);
    if (!out.empty()) {
      write_file(out, serialize_map(fm.map));
    }
    return report_map("map builtin", {{"kind", kind}, {"n", n}, {"radius", radius}}, fm.map, rep,
                      clock);
  }

  int run_develop(std::string const& input, std::string const& vertex, size_t radius,
                  std::string const& out, Reporter const& rep) {
    Clock      clock;
    auto const c    = load(input);
    auto const ball = develop(c, c->vertex(vertex), radius);
    auto const bad  = link_isomorphism_failures(ball);
    bool const simple = interior_skeleton_is_simple(ball);
    size_t     interior = 0;
    for (vertex_id x = 0; x < ball.ball().number_of_vertices(); ++x) {
      interior += ball.is_interior(x);
    }
    std::cout << "ball of radius " << radius << " about " << vertex << " in " << c->name() << ": "
              << ball.ball().number_of_vertices() << " vertices, " << ball.ball().number_of_edges()
              << " edges, " << ball.ball().number_of_faces() << " faces, " << interior
              << " interior\n  shells:";
    Json shells = Json::array();
    for (auto s : ball.shell_sizes()) {
      std::cout << ' ' << s;
      shells.push_back(s);
    }
    std::cout << "\n  link isomorphisms: " << (bad.empty() ? "yes" : "no")
              << "\n  interior skeleton simple: " << (simple ? "yes" : "no") << '\n';
    if (!out.empty()) {
      write_file(out, serialize(ball.ball()));
    }
    Json witnesses = Json::array();
    for (auto x : bad) {
      witnesses.push_back(ball.ball().vertices()[x]);
    }
    rep.emit("develop", {{"input", input}, {"vertex", vertex}, {"radius", radius}},
             bad.empty() && simple, witnesses,
             {{"vertices", ball.ball().number_of_vertices()},
              {"edges", ball.ball().number_of_edges()},
              {"faces", ball.ball().number_of_faces()},
              {"interior", interior},
              {"shells", shells},
              {"simple", simple}},
             clock);
    return bad.empty() && simple ? Pass : Fail;
  }

  int run_embed_check(std::string const& flat, unsigned n, std::string const& target,
                      size_t radius, size_t ball_radius, size_t check_radius,
                      Reporter const& rep) {
    Clock          clock;
    BuiltinMapKind kind;
    unsigned       param = n;
    if (target == "X1") {
      kind = flat == "F" ? BuiltinMapKind::FtoX1 : BuiltinMapKind::FntoX1;
    } else if (target == "X2") {
      kind = flat == "F" ? BuiltinMapKind::FtoX2 : BuiltinMapKind::F2n1toX2;
      if (flat != "F") {
        if (n % 2 == 0) {
          throw Error(ErrorCode::BadParameter, "F_n maps to X2 only for odd n");
        }
        param = (n + 1) / 2;
      }
    } else {
      throw Error(ErrorCode::BadParameter, "target must be X1 or X2");
    }
    if (flat != "F" && flat != "Fn") {
      throw Error(ErrorCode::BadParameter, "flat must be F or Fn");
    }
    ball_radius  = ball_radius ? ball_radius : radius + 2;
    check_radius = check_radius ? check_radius : (radius > 2 ? radius - 2 : 0);

    auto const fm  = builtin_map(kind, param, radius);
    auto const inj = check_link_injective(fm.map);
    auto const l   = lift_on_demand(fm.map, fm.patch.center(), ball_radius);
    std::vector<bool> among(fm.patch.complex().number_of_vertices());
    for (vertex_id v = 0; v < among.size(); ++v) {
      among[v] = fm.patch.depth(v) <= check_radius;
    }
    auto const collisions = vertex_collisions(l.lift, among);
    bool const pass       = inj.pass && l.commutes && collisions.empty();
    std::cout << (pass ? "PASS " : "FAIL ") << "embed-check " << to_string(kind) << " n=" << param
              << " radius " << radius << "\n  cell-preserving: yes\n  link-injective: "
              << (inj.pass ? "yes" : "no") << " (" << inj.checked_vertices
              << " interior vertices)\n  lift commutes: " << (l.commutes ? "yes" : "no")
              << "\n  injective on radius-" << check_radius << " subpatch: "
              << (collisions.empty() ? "yes" : "no") << " (" << l.ball.ball().number_of_faces()
              << " faces developed within radius " << ball_radius << ")\n";
    Json witnesses = Json::array();
    for (auto [a, b] : collisions) {
      witnesses.push_back({fm.patch.complex().vertices()[a], fm.patch.complex().vertices()[b]});
    }
    rep.emit("embed-check",
             {{"flat", flat}, {"n", n}, {"target", target}, {"radius", radius},
              {"ball_radius", ball_radius}, {"check_radius", check_radius}},
             pass, witnesses,
             {{"map", to_string(kind)},
              {"link_injective", inj.pass},
              {"commutes", l.commutes},
              {"faces_developed", l.ball.ball().number_of_faces()}},
             clock);
    return pass ? Pass : Fail;
  }

  // flat:KIND:RADIUS[:N], ball:COMPLEX:VERTEX:RADIUS, or a complex input.
  struct Space {
    std::optional<FlatPatch>       patch;
    std::optional<DevelopedBall>   ball;
    std::shared_ptr<Complex const> complex;

    Complex const& cells() const {
      return patch ? patch->complex() : ball ? ball->ball() : *complex;
    }
    Skeleton skel() const {
      return patch ? skeleton(*patch) : ball ? skeleton(*ball) : skeleton(*complex);
    }
  };

  std::vector<std::string> split(std::string const& s, char sep) {
    std::vector<std::string> out;
    std::stringstream        ss(s);
    for (std::string part; std::getline(ss, part, sep);) {
      out.push_back(part);
    }
    return out;
  }

  size_t number_arg(std::string const& s) {
    try {
      size_t used = 0;
      auto   v    = std::stoul(s, &used);
      if (used == s.size()) {
        return v;
      }
    } catch (std::exception const&) {
    }
    throw Error(ErrorCode::BadParameter, "'" + s + "' is not a number");
  }

  Space load_space(std::string const& text) {
    Space s;
    auto  parts = split(text, ':');
    if (parts.size() >= 3 && parts[0] == "flat") {
      s.patch = gen_flat(flat_kind_arg(parts[1]), number_arg(parts[2]),
                         parts.size() > 3 ? static_cast<unsigned>(number_arg(parts[3])) : 1);
    } else if (parts.size() == 4 && parts[0] == "ball") {
      auto c = load("catalog:" + parts[1]);
      s.ball = develop(c, c->vertex(parts[2]), number_arg(parts[3]));
    } else {
      s.complex = load(text);
    }
    return s;
  }

  int run_gs(std::string const& space, std::string const& from, std::string const& to,
             Reporter const& rep) {
    Clock       clock;
    auto const  s = load_space(space);
    auto const  g = s.skel();
    auto const& c = s.cells();
    auto const  u = c.vertex(from), v = c.vertex(to);
    auto const  dag = geodesic_dag(g, u, v);
    std::cout << "distance " << dag.distance << ", " << dag.arcs.size() << " geodesic edges\n";
    Json moves = Json::array();
    for (auto w = u; w != v;) {
      auto m = classify_move(g, geodesic_dag(g, w, v));
      std::cout << "  " << c.vertices()[w] << " -> " << c.vertices()[m.next] << ": "
                << to_string(m.kind);
      if (m.kind == MoveKind::TriangleRowMove) {
        std::cout << " (" << m.row.size() << " squares)";
      }
      std::cout << '\n';
      moves.push_back({{"from", c.vertices()[w]}, {"to", c.vertices()[m.next]},
                       {"kind", std::string(to_string(m.kind))}, {"squares", m.row.size()}});
      w = m.next;
    }
    auto const p = gersten_short(g, u, v);
    std::cout << "path " << format_path(c, p) << '\n';
    rep.emit("gs", {{"space", space}, {"from", from}, {"to", to}}, true, Json::array(),
             {{"distance", dag.distance}, {"moves", moves}, {"path", format_path(c, p)}}, clock);
    return Pass;
  }

  int run_ftp(std::vector<size_t> const& ells, size_t radius, std::string const& csv,
              Reporter const& rep) {
    Clock     clock;
    FtpReport report;
    bool      pass = true;
    for (auto ell : ells) {
      auto x = flat_ftp_experiment(ell, radius ? radius : default_ftp_radius(ell));
      pass   = pass && x.row.min_dist_o_gs >= (ell + 1) / 2 && x.row.passes_o;
      report.rows.push_back(x.row);
    }
    for (size_t i = 1; i < report.rows.size(); ++i) {
      if (report.rows[i].ell > report.rows[i - 1].ell) {
        pass = pass && report.rows[i].ft_distance > report.rows[i - 1].ft_distance;
      }
    }
    write_file(csv.empty() ? "-" : csv, report.to_csv());
    rep.emit("ftp", {{"ell", ells}, {"radius", radius}}, pass, Json::array(), ftp_json(report),
             clock);
    return pass ? Pass : Fail;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Triangle-square complexes: link conditions, flats, covers and geodesics"};
  app.require_subcommand(1);
  Reporter rep;
  auto     json_opt = [&](CLI::App* sub) {
    sub->add_option("--json", rep.json_path, "Write the verdict document here");
  };
  std::function<int()> action;

  std::string input, output, vertex, dot, kind, src, dst, map, from, to, target, flat;
  size_t      radius = 0, ball_radius = 0, check_radius = 0;
  unsigned    n      = 1;
  std::vector<size_t> ells;

  auto* validate = app.add_subcommand("validate", "Parse and validate a .tsq document");
  validate->add_option("file", input)->required();
  json_opt(validate);
  validate->callback([&] { action = [&] { return run_validate(input, rep); }; });

  auto* cat = app.add_subcommand("catalog", "Print a catalog complex as a .tsq document");
  cat->add_option("name", input, "X1, X1', X2 or X2v0..X2v7");
  cat->add_option("-o,--output", output);
  cat->callback([&] {
    action = [&] {
      if (input.empty()) {
        for (auto const& e : CatalogEntry::all()) {
          std::cout << e.name() << '\n';
        }
        return int(Pass);
      }
      write_file(output.empty() ? "-" : output, serialize(*load("catalog:" + input)));
      return int(Pass);
    };
  });

  auto* check = app.add_subcommand("check", "Check a curvature condition");
  check->require_subcommand(1);
  for (std::string which : {"cat0", "systolic"}) {
    auto* sub = check->add_subcommand(
        which, which == "cat0" ? "Link condition: injective link cycles of length at least 2pi"
                               : "All triangles and every link of girth at least 6");
    sub->add_option("input", input, "catalog:NAME or a .tsq file")->required();
    json_opt(sub);
    sub->callback([&, which] { action = [&, which] { return run_check(which, input, rep); }; });
  }

  auto* link = app.add_subcommand("link", "Describe the link of a vertex");
  link->add_option("input", input)->required();
  link->add_option("--vertex", vertex)->required();
  link->add_option("--dot", dot, "Write a DOT graph ('-' for stdout)");
  link->callback([&] { action = [&] { return run_link(input, vertex, dot); }; });

  auto* fl = app.add_subcommand("flat", "Generate a flat patch");
  fl->add_option("kind", kind, "Eisenstein, F, G or Fn")->required();
  fl->add_option("--radius", radius)->required();
  fl->add_option("--n", n)->check(CLI::PositiveNumber);
  fl->add_option("--json", output, "Write the patch document");
  fl->callback([&] { action = [&] { return run_flat(kind, radius, n, output); }; });

  auto* mp = app.add_subcommand("map", "Cellular maps");
  mp->require_subcommand(1);
  auto* mcheck = mp->add_subcommand("check", "Validate a map document");
  mcheck->add_option("--src", src)->required();
  mcheck->add_option("--dst", dst)->required();
  mcheck->add_option("--map", map)->required();
  json_opt(mcheck);
  mcheck->callback([&] { action = [&] { return run_map_check(src, dst, map, rep); }; });
  auto* mbuiltin = mp->add_subcommand("builtin", "Build and check a builtin flat map");
  mbuiltin->add_option("kind", kind, "FtoX1, FntoX1, FtoX2, F2n1toX2 or Sigma23")->required();
  mbuiltin->add_option("--n", n)->check(CLI::PositiveNumber);
  mbuiltin->add_option("--radius", radius)->required();
  mbuiltin->add_option("-o,--output", output, "Write the map document");
  json_opt(mbuiltin);
  mbuiltin->callback([&] { action = [&] { return run_map_builtin(kind, n, radius, output, rep); }; });

  auto* dev = app.add_subcommand("develop", "Develop a ball of the universal cover");
  dev->add_option("input", input)->required();
  dev->add_option("--vertex", vertex)->required();
  dev->add_option("--radius", radius)->required();
  dev->add_option("-o,--output", output, "Write the ball as a .tsq document");
  json_opt(dev);
  dev->callback([&] { action = [&] { return run_develop(input, vertex, radius, output, rep); }; });

  auto* embed = app.add_subcommand("embed-check", "Check that a builtin flat embeds in a cover");
  embed->add_option("--flat", flat, "F or Fn")->required();
  embed->add_option("--n", n)->check(CLI::PositiveNumber);
  embed->add_option("--target", target, "X1 or X2")->required();
  embed->add_option("--radius", radius, "Patch radius")->required();
  embed->add_option("--ball-radius", ball_radius, "Development radius (default radius + 2)");
  embed->add_option("--check-radius", check_radius, "Injectivity radius (default radius - 2)");
  json_opt(embed);
  embed->callback([&] {
    action = [&] {
      return run_embed_check(flat, n, target, radius, ball_radius, check_radius, rep);
    };
  });

  auto* gs = app.add_subcommand("gs", "Gersten-Short geodesic between two vertices");
  gs->add_option("--space", input,
                 "flat:KIND:RADIUS[:N], ball:NAME:VERTEX:RADIUS, catalog:NAME or a .tsq file")
      ->required();
  gs->add_option("--from", from)->required();
  gs->add_option("--to", to)->required();
  json_opt(gs);
  gs->callback([&] { action = [&] { return run_gs(input, from, to, rep); }; });

  auto* ftp = app.add_subcommand("ftp", "Fellow traveling in the radial flat");
  ftp->add_option("--ell", ells, "Odd separations (repeatable)")->required();
  ftp->add_option("--radius", radius, "Patch radius (default 2*ell + 3)");
  ftp->add_option("--csv", output, "Write the table here instead of stdout");
  json_opt(ftp);
  ftp->callback([&] { action = [&] { return run_ftp(ells, radius, output, rep); }; });

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? Pass : Usage;
  }
  try {
    return action();
  } catch (Error const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_for(e.code());
  } catch (IoError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Usage;
  }
}
