// Command-line front end: closed-form functional weights, verification
// suites, projector application, and convergence studies.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "subdivqi/analysis.hpp"

using namespace subdivqi;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitNumeric = 2;

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Options {
  std::string scheme = "cc";
  int valence = 4;
  std::string mesh_path;
  std::string gen_spec;  // quad:N or tri:N
  std::string masks_path;
  std::string fn_name = "test";
  int levels = 4;
  int start_level = 1;
  int depth = 3;
  int rings = 4;
  int valence_min = 3;
  int valence_max = 12;
  int nets = 20;
  std::string out_dir = ".";
  bool dump_functionals = false;
};

SchemeId make_scheme(const std::string& name, const std::string& masks_path,
                     int valence_hint_min = 3, int valence_hint_max = 12) {
  SchemeKind kind = scheme_from_name(name);
  if (kind == SchemeKind::CatmullClark) return SchemeId::catmull_clark();
  if (kind == SchemeKind::Loop) return SchemeId::loop();
  if (masks_path.empty())
    return SchemeId::modified_loop(
        MLoopMasks::loop_equivalent(valence_hint_min, valence_hint_max));
  return SchemeId::modified_loop(MLoopMasks::from_json_file(masks_path));
}

PolyMesh obtain_mesh(const Options& opt, const SchemeId& scheme) {
  PolyMesh poly;
  if (!opt.mesh_path.empty()) {
    poly = load_obj_file(opt.mesh_path);
  } else if (!opt.gen_spec.empty()) {
    auto colon = opt.gen_spec.find(':');
    if (colon == std::string::npos)
      throw Error(ErrorCode::Io, "--gen expects quad:N or tri:N");
    std::string family = opt.gen_spec.substr(0, colon);
    int n = std::stoi(opt.gen_spec.substr(colon + 1));
    if (family == "quad")
      poly = make_test_mesh(MeshFamily::Quad, n, opt.rings);
    else if (family == "tri")
      poly = make_test_mesh(MeshFamily::Tri, n, opt.rings);
    else
      throw Error(ErrorCode::Io, "--gen expects quad:N or tri:N");
  } else {
    throw Error(ErrorCode::Io, "one of --mesh or --gen is required");
  }
  if (poly.arity != scheme.face_arity())
    throw Error(ErrorCode::InvalidMesh, "mesh arity does not match the scheme");
  return ensure_separated_eps(poly, scheme);
}

std::function<double(const Vec3&)> named_field(const std::string& name) {
  if (name == "test") return test_function;
  if (name == "one") return [](const Vec3&) { return 1.0; };
  if (name == "x") return [](const Vec3& p) { return p.x(); };
  if (name == "y") return [](const Vec3& p) { return p.y(); };
  if (name == "xy") return [](const Vec3& p) { return p.x() * p.y(); };
  if (name == "plane") return [](const Vec3& p) { return 1.0 + 2.0 * p.x() + 3.0 * p.y(); };
  throw Error(ErrorCode::Io, "unknown field '" + name + "' (test|one|x|y|xy|plane)");
}

json weights_json(const WeightProfile& p) {
  json doc;
  doc["scheme"] = scheme_name(p.scheme);
  doc["valence"] = p.valence;
  json w;
  for (std::size_t i = 0; i < p.w.size(); ++i) w["w" + std::to_string(i + 1)] = p.w[i];
  doc["weights"] = w;
  doc["orbit_sizes"] = p.orbit_sizes();
  double sum = 0;
  std::vector<int> sizes = p.orbit_sizes();
  for (std::size_t i = 0; i < p.w.size(); ++i) sum += sizes[i] * p.w[i];
  doc["orbit_weighted_sum"] = sum;
  return doc;
}

int cmd_weights(const Options& opt) {
  SchemeId scheme = make_scheme(opt.scheme, opt.masks_path, opt.valence, opt.valence);
  WeightProfile p = closed_form_weights(scheme, opt.valence);
  json doc = weights_json(p);
  std::cout << doc.dump(2) << "\n";
  if (opt.out_dir != ".") {
    fs::create_directories(opt.out_dir);
    std::ofstream out(fs::path(opt.out_dir) / "weights.json");
    out << doc.dump(2) << "\n";
  }
  return 0;
}

struct CheckReport {
  int failures = 0;
  void line(bool ok, const std::string& what, const std::string& detail = "") {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << what;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++failures;
  }
};

double projector_roundtrip_error(const HalfEdgeMesh& mesh, const SchemeId& scheme,
                                 int nets, std::mt19937& rng) {
  QuasiInterpolant qi = build(mesh, scheme);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double worst = 0;
  for (int t = 0; t < nets; ++t) {
    Eigen::VectorXd c(mesh.vertex_count());
    for (Index v = 0; v < mesh.vertex_count(); ++v) c[v] = dist(rng);
    Eigen::VectorXd rec = qi.apply_to_net(c);
    for (const Functional& fn : qi.functionals)
      worst = std::max(worst, std::abs(rec[fn.owner] - c[fn.owner]));
  }
  return worst;
}

int cmd_verify(const Options& opt) {
  CheckReport rep;
  std::vector<SchemeKind> kinds;
  if (opt.scheme == "all")
    kinds = {SchemeKind::CatmullClark, SchemeKind::Loop, SchemeKind::ModifiedLoop};
  else
    kinds = {scheme_from_name(opt.scheme)};

  for (SchemeKind kind : kinds) {
    SchemeId scheme = kind == SchemeKind::ModifiedLoop
                          ? make_scheme("mloop", opt.masks_path, opt.valence_min,
                                        opt.valence_max)
                          : SchemeId{kind, nullptr};
    for (int n = opt.valence_min; n <= opt.valence_max; ++n) {
      if (kind == SchemeKind::ModifiedLoop && n != 6 && !scheme.masks->has(n)) {
        rep.line(true, std::string(scheme_name(kind)) + " n=" + std::to_string(n),
                 "skipped, no masks for this valence");
        continue;
      }
      LocalSystem sys = local_system(scheme, n);
      double rowsum = 0;
      rowsum = std::max((sys.S.rowwise().sum().array() - 1.0).abs().maxCoeff(),
                        (sys.L.rowwise().sum().array() - 1.0).abs().maxCoeff());
      rowsum = std::max(rowsum, (sys.A.rowwise().sum().array() - 1.0).abs().maxCoeff());
      bool ok1 = rowsum <= 1e-12;
      Mat oracle = oracle_A(scheme, n);
      double dev = (oracle - sys.A).cwiseAbs().maxCoeff();
      bool ok2 = dev <= 1e-12;
      Eigen::VectorXd numeric = solve_row(sys.A, 0);
      Eigen::VectorXd closed = closed_form_weights(scheme, n).expand();
      double wdev = (numeric - closed).cwiseAbs().maxCoeff();
      bool ok3 = wdev <= 1e-10;
      rep.line(ok1 && ok2 && ok3,
               std::string(scheme_name(kind)) + " n=" + std::to_string(n),
               "row-sum " + fmt17(rowsum) + ", assembly-vs-oracle " + fmt17(dev) +
                   ", closed-vs-numeric " + fmt17(wdev));
    }
  }

  // reduction identity: loop-equivalent masks reproduce the plain scheme
  {
    SchemeId mloop = SchemeId::modified_loop(
        MLoopMasks::loop_equivalent(opt.valence_min, opt.valence_max));
    SchemeId loop = SchemeId::loop();
    double dev = 0;
    for (int n = opt.valence_min; n <= opt.valence_max; ++n)
      dev = std::max(dev, (local_A(mloop, n) - local_A(loop, n)).cwiseAbs().maxCoeff());
    rep.line(dev == 0.0, "loop-equivalent mask reduction", "max deviation " + fmt17(dev));
  }

  // projector property on fan meshes and grids (boundary paths included)
  std::mt19937 rng(20240817u);
  for (SchemeKind kind : kinds) {
    SchemeId scheme = kind == SchemeKind::ModifiedLoop
                          ? make_scheme("mloop", opt.masks_path, 3, 8)
                          : SchemeId{kind, nullptr};
    MeshFamily fam = kind == SchemeKind::CatmullClark ? MeshFamily::Quad : MeshFamily::Tri;
    int rings = kind == SchemeKind::ModifiedLoop ? 5 : 4;
    for (int n = 3; n <= 8; ++n) {
      if (kind == SchemeKind::ModifiedLoop && n != 6 && !scheme.masks->has(n)) continue;
      HalfEdgeMesh mesh = HalfEdgeMesh::build(make_test_mesh(fam, n, rings));
      double worst = projector_roundtrip_error(mesh, scheme, opt.nets, rng);
      rep.line(worst <= 1e-9,
               std::string("projector ") + scheme_name(kind) + " fan n=" + std::to_string(n),
               "max net error " + fmt17(worst));
    }
    HalfEdgeMesh grid = HalfEdgeMesh::build(
        fam == MeshFamily::Quad ? make_quad_grid(8, 8) : make_tri_grid(8, 8));
    double worst = projector_roundtrip_error(grid, scheme, opt.nets, rng);
    rep.line(worst <= 1e-9, std::string("projector ") + scheme_name(kind) + " grid",
             "max net error " + fmt17(worst));
  }
  return rep.failures == 0 ? 0 : kExitNumeric;
}

int cmd_project(const Options& opt) {
  SchemeId scheme = make_scheme(opt.scheme, opt.masks_path);
  PolyMesh poly = obtain_mesh(opt, scheme);
  HalfEdgeMesh mesh = HalfEdgeMesh::build(poly);
  auto f = named_field(opt.fn_name);

  QuasiInterpolant qi = build(mesh, scheme);
  Eigen::VectorXd coeffs = qi.apply(f);

  fs::create_directories(opt.out_dir);
  json doc;
  doc["scheme"] = scheme_name(scheme.kind);
  doc["field"] = opt.fn_name;
  std::vector<double> cvec(coeffs.data(), coeffs.data() + coeffs.size());
  doc["coefficients"] = cvec;
  doc["dropped"] = qi.dropped;
  {
    std::ofstream out(fs::path(opt.out_dir) / "coefficients.json");
    out << doc.dump(2) << "\n";
  }
  if (opt.dump_functionals) {
    std::ofstream out(fs::path(opt.out_dir) / "functionals.json");
    out << qi.to_json().dump(2) << "\n";
  }

  // graph mesh of the fit: refine, push to the limit, add the value to z,
  // keep the faces that carry the surface
  HalfEdgeMesh fine = mesh;
  Channels vals(mesh.vertex_count(), 1);
  vals.col(0) = coeffs;
  std::vector<bool> base_active = active_faces(mesh);
  for (int k = 0; k < opt.depth; ++k) {
    RefineResult r = refine(fine, vals, scheme);
    fine = std::move(r.mesh);
    vals = std::move(r.channels);
  }
  Channels lim_pos = limit_positions(fine, fine.position_channels(), scheme);
  Channels lim_val = limit_positions(fine, vals, scheme);
  const Index shift = 2 * opt.depth;

  PolyMesh out_mesh;
  out_mesh.arity = fine.arity();
  std::vector<Index> remap(fine.vertex_count(), kInvalid);
  for (Index fidx = 0; fidx < fine.face_count(); ++fidx) {
    if (!base_active[fidx >> shift]) continue;
    for (Index v : fine.face_vertex_list(fidx)) {
      if (remap[v] == kInvalid) {
        remap[v] = static_cast<Index>(out_mesh.positions.size());
        out_mesh.positions.emplace_back(lim_pos(v, 0), lim_pos(v, 1),
                                        lim_pos(v, 2) + lim_val(v, 0));
      }
      out_mesh.face_vertices.push_back(remap[v]);
    }
  }
  save_obj_file(out_mesh, (fs::path(opt.out_dir) / "fitted.obj").string());

  std::cout << "wrote " << (fs::path(opt.out_dir) / "coefficients.json").string() << " and "
            << (fs::path(opt.out_dir) / "fitted.obj").string() << "\n";
  std::cout << "functionals: " << qi.functionals.size() << ", dropped: " << qi.dropped.size()
            << "\n";
  return 0;
}

int cmd_convergence(const Options& opt) {
  SchemeId scheme = make_scheme(opt.scheme, opt.masks_path);
  std::vector<int> levels;
  for (int l = opt.start_level; l < opt.start_level + opt.levels; ++l) levels.push_back(l);
  ConvergenceReport report =
      convergence_study(scheme, opt.valence, levels, opt.depth, opt.rings);

  fs::create_directories(opt.out_dir);
  {
    std::ofstream out(fs::path(opt.out_dir) / "report.csv");
    report.write_csv(out);
  }
  {
    std::ofstream out(fs::path(opt.out_dir) / "report.json");
    out << report.to_json().dump(2) << "\n";
  }
  std::cout << "fitted L2 order:   " << fmt17(report.fitted_order2) << "\n";
  std::cout << "fitted Linf order: " << fmt17(report.fitted_order_inf) << "\n";
  return 0;
}

// JSON config file supplies defaults; explicit flags win.
void apply_config(Options& opt, const std::string& path,
                  const std::map<std::string, bool>& given) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config " + path);
  json doc;
  in >> doc;
  auto set_str = [&](const char* key, std::string& field) {
    if (!given.count(key) && doc.contains(key)) field = doc[key].get<std::string>();
  };
  auto set_int = [&](const char* key, int& field) {
    if (!given.count(key) && doc.contains(key)) field = doc[key].get<int>();
  };
  set_str("scheme", opt.scheme);
  set_int("valence", opt.valence);
  set_str("mesh", opt.mesh_path);
  set_str("gen", opt.gen_spec);
  set_str("masks", opt.masks_path);
  set_str("fn", opt.fn_name);
  set_int("levels", opt.levels);
  set_int("start", opt.start_level);
  set_int("depth", opt.depth);
  set_int("rings", opt.rings);
  set_str("out", opt.out_dir);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasi-interpolation projectors for subdivision surfaces"};
  app.require_subcommand(1);

  Options opt;
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config with defaults (flags win)");
    sub->add_option("--scheme", opt.scheme, "cc|loop|mloop");
    sub->add_option("--masks", opt.masks_path, "modified-loop mask table (JSON)");
    sub->add_option("--out", opt.out_dir, "output directory");
  };

  CLI::App* weights = app.add_subcommand("weights", "closed-form functional weights");
  add_common(weights);
  weights->add_option("--valence", opt.valence, "vertex valence");

  CLI::App* verify = app.add_subcommand("verify", "consistency suites");
  add_common(verify);
  verify->add_option("--valence-min", opt.valence_min);
  verify->add_option("--valence-max", opt.valence_max);
  verify->add_option("--nets", opt.nets, "random nets per projector check");

  CLI::App* project = app.add_subcommand("project", "fit a field and export the result");
  add_common(project);
  project->add_option("--mesh", opt.mesh_path, "OBJ input");
  project->add_option("--gen", opt.gen_spec, "generated mesh, quad:N or tri:N");
  project->add_option("--rings", opt.rings, "rings of generated meshes");
  project->add_option("--fn", opt.fn_name, "field: test|one|x|y|xy|plane");
  project->add_option("--depth", opt.depth, "refinement depth of the exported mesh");
  project->add_flag("--dump-functionals", opt.dump_functionals,
                    "also export every functional");

  CLI::App* conv = app.add_subcommand("convergence", "refinement study");
  add_common(conv);
  conv->add_option("--valence", opt.valence, "extraordinary valence of the test mesh");
  conv->add_option("--levels", opt.levels, "number of refinement levels");
  conv->add_option("--start", opt.start_level, "first level");
  conv->add_option("--depth", opt.depth, "extra sampling depth");
  conv->add_option("--rings", opt.rings, "rings of the test mesh");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (!config_path.empty()) {
      std::map<std::string, bool> given;
      for (const CLI::Option* o : sub->get_options())
        if (o->count() > 0) given[o->get_name(false, true)] = true;
      std::map<std::string, bool> by_key;
      for (auto& [k, v] : given) {
        std::string key = k;
        if (key.rfind("--", 0) == 0) key = key.substr(2);
        by_key[key] = v;
      }
      apply_config(opt, config_path, by_key);
    }
    if (sub == weights) return cmd_weights(opt);
    if (sub == verify) return cmd_verify(opt);
    if (sub == project) return cmd_project(opt);
    if (sub == conv) return cmd_convergence(opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::SingularSystem:
      case ErrorCode::DegenerateFunction:
        return kExitNumeric;
      default:
        return kExitValidation;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
