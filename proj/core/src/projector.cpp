#include "subdivqi/projector.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <variant>

#include <nlohmann/json.hpp>

namespace subdivqi {

const char* provenance_name(Functional::Provenance p) {
  switch (p) {
    case Functional::Provenance::ClosedFormEp: return "ClosedFormEp";
    case Functional::Provenance::ClosedFormRegular: return "ClosedFormRegular";
    case Functional::Provenance::TargetPoint: return "TargetPoint";
    case Functional::Provenance::CornerSystem: return "CornerSystem";
  }
  return "?";
}

namespace {

struct BuildContext {
  const HalfEdgeMesh& mesh;
  SchemeId scheme;
  const VertexClassification& cls;
  std::vector<bool> active;
  std::vector<bool> ep;

  std::map<int, std::shared_ptr<const Mat>> system_by_valence;
  std::map<int, std::shared_ptr<const RowSolver>> solver_by_valence;
  std::shared_ptr<const Mat> corner_matrix;
  std::shared_ptr<const RowSolver> corner_solver;

  BuildContext(const HalfEdgeMesh& m, const SchemeId& s, const VertexClassification& c)
      : mesh(m), scheme(s), cls(c), active(active_faces(m)), ep(m.vertex_count(), false) {
    for (Index e : c.eps) ep[e] = true;
  }

  const Mat& system(int n) {
    auto it = system_by_valence.find(n);
    if (it == system_by_valence.end()) {
      auto A = std::make_shared<Mat>(local_A(scheme, n));
      it = system_by_valence.emplace(n, std::move(A)).first;
    }
    return *it->second;
  }
  std::shared_ptr<const Mat> system_ref(int n) {
    system(n);
    return system_by_valence.at(n);
  }
  const RowSolver& solver(int n) {
    auto it = solver_by_valence.find(n);
    if (it == solver_by_valence.end())
      it = solver_by_valence.emplace(n, std::make_shared<RowSolver>(system(n))).first;
    return *it->second;
  }
  const Mat& corner() {
    if (!corner_matrix) {
      corner_matrix = std::make_shared<Mat>(corner_system());
      corner_solver = std::make_shared<RowSolver>(*corner_matrix);
    }
    return *corner_matrix;
  }
};

std::vector<Vec3> mat_times_positions(const HalfEdgeMesh& mesh, const Mat& A,
                                      const std::vector<Index>& window) {
  Eigen::MatrixXd P(window.size(), 3);
  for (std::size_t i = 0; i < window.size(); ++i)
    P.row(i) = mesh.position(window[i]).transpose();
  Eigen::MatrixXd X = A * P;
  std::vector<Vec3> out(X.rows());
  for (Eigen::Index k = 0; k < X.rows(); ++k) out[k] = X.row(k).transpose();
  return out;
}

bool all_ring_faces_active(const BuildContext& ctx, Index v) {
  for (Index h : ctx.mesh.star(v))
    if (!ctx.active[ctx.mesh.face_of(h)]) return false;
  return true;
}

// Clean anchor test: interior, regular valence, buildable two-ring window
// with every incident face active, owner inside the window. The modified
// triangle scheme additionally needs the whole window free of extraordinary
// vertices.
std::optional<Window> anchor_window(BuildContext& ctx, Index t, Index owner) {
  const HalfEdgeMesh& mesh = ctx.mesh;
  if (t == kInvalid || mesh.is_boundary_vertex(t)) return std::nullopt;
  if (mesh.valence(t) != ctx.scheme.regular_valence()) return std::nullopt;
  if (!all_ring_faces_active(ctx, t)) return std::nullopt;
  Window win;
  try {
    win = control_window(mesh, t);
  } catch (const Error&) {
    return std::nullopt;
  }
  for (Index w : mesh.neighbors(t))
    if (ctx.ep[w]) return std::nullopt;
  if (ctx.scheme.kind == SchemeKind::ModifiedLoop) {
    for (std::size_t i = 1; i < win.control.size(); ++i)
      if (ctx.ep[win.control[i]]) return std::nullopt;
  }
  if (win.index_of(owner) < 0) return std::nullopt;
  return win;
}

std::vector<std::pair<Index, int>> vertices_within(const HalfEdgeMesh& mesh, Index v,
                                                   int depth) {
  std::vector<std::pair<Index, int>> out;
  std::set<Index> seen{v};
  std::queue<std::pair<Index, int>> frontier;
  frontier.push({v, 0});
  while (!frontier.empty()) {
    auto [w, d] = frontier.front();
    frontier.pop();
    if (d == depth) continue;
    for (Index u : mesh.neighbors(w))
      if (seen.insert(u).second) {
        out.push_back({u, d + 1});
        frontier.push({u, d + 1});
      }
  }
  return out;
}

// Symmetric candidates of the adjacent-to-extraordinary rule: straight
// across the shared edge (quads), reflection through the flanking ring edge
// (triangles).
std::vector<Index> preferred_targets(const BuildContext& ctx, Index v, Index ep) {
  const HalfEdgeMesh& mesh = ctx.mesh;
  std::vector<Index> out;
  std::vector<Index> star = mesh.star(v);
  if (mesh.arity() == 4) {
    int pos = -1;
    for (std::size_t i = 0; i < star.size(); ++i)
      if (mesh.head(star[i]) == ep) pos = static_cast<int>(i);
    if (pos >= 0 && star.size() == 4) {
      out.push_back(mesh.head(star[(pos + 2) % 4]));  // straight continuation
      return out;
    }
    // diagonal neighbor: reflect through v to the diagonal of the opposite face
    for (std::size_t i = 0; i < star.size(); ++i)
      if (mesh.head(mesh.next(star[i])) == ep) pos = static_cast<int>(i);
    if (pos >= 0 && star.size() == 4)
      out.push_back(mesh.head(mesh.next(star[(pos + 2) % 4])));
    return out;
  }
  for (Index h : star) {
    if (mesh.head(h) != ep) continue;
    // triangles [v, ep, w2] and [w1, v, ep]; reflect ep across [v, w_i]
    Index t = mesh.twin(h);
    if (t != kInvalid) {
      Index via = mesh.twin(mesh.next(t));  // v -> w2 in the far face
      if (via != kInvalid) out.push_back(mesh.head(mesh.next(via)));
    }
    Index p = mesh.twin(mesh.prev(h));  // v -> w1 in the far face
    if (p != kInvalid) out.push_back(mesh.head(mesh.next(p)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Candidate ranking is purely combinatorial (breadth-first depth, then
// vertex index) so a rebuilt mesh with moved positions picks the same
// targets.
Index pick_target(BuildContext& ctx, Index v, Index governing_ep) {
  if (governing_ep != kInvalid)
    for (Index t : preferred_targets(ctx, v, governing_ep))
      if (anchor_window(ctx, t, v)) return t;

  std::vector<std::pair<Index, int>> pool =
      vertices_within(ctx.mesh, v, ctx.mesh.arity() == 4 ? 4 : 3);
  std::sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first < b.first;
  });
  for (auto [t, depth] : pool)
    if (anchor_window(ctx, t, v)) return t;
  return kInvalid;
}

Functional system_row_functional(BuildContext& ctx, Index owner, const Window& win,
                                 Functional::Provenance prov, Index anchor) {
  const Mat& A = ctx.system(win.valence);
  int k = win.index_of(owner);
  if (k < 0) throw Error(ErrorCode::InvalidMesh, "owner missing from anchor window");
  Functional fn;
  fn.owner = owner;
  fn.provenance = prov;
  fn.target = anchor;
  fn.window = win.control;
  fn.row = k;
  fn.system = ctx.system_ref(win.valence);
  fn.weights = ctx.solver(win.valence).row(k);
  fn.samples = mat_times_positions(ctx.mesh, A, win.control);
  return fn;
}

// Row of a nearby extraordinary vertex's own system, when that window
// reaches v (the fallback of last resort; such a window always exists on
// the separated meshes the tests cover).
std::optional<Functional> ep_window_functional(BuildContext& ctx, Index v) {
  for (Index e : ctx.cls.eps) {
    if (!all_ring_faces_active(ctx, e)) continue;
    Window win;
    try {
      win = control_window(ctx.mesh, e);
    } catch (const Error&) {
      continue;
    }
    if (ctx.scheme.kind == SchemeKind::ModifiedLoop) {
      bool clean = true;
      for (std::size_t i = 1; i < win.control.size(); ++i)
        if (ctx.ep[win.control[i]]) clean = false;
      if (!clean) continue;
    }
    if (win.index_of(v) < 0) continue;
    return system_row_functional(ctx, v, win, Functional::Provenance::TargetPoint, e);
  }
  return std::nullopt;
}

Functional closed_form_functional(BuildContext& ctx, Index v) {
  Window win = control_window(ctx.mesh, v);
  const int n = win.valence;
  const bool regular = n == ctx.scheme.regular_valence();
  if (ctx.scheme.kind == SchemeKind::ModifiedLoop && !regular) {
    for (std::size_t i = 1; i < win.control.size(); ++i)
      if (ctx.ep[win.control[i]])
        throw Error(ErrorCode::InvalidMesh,
                    "extraordinary vertices closer than two rings are not supported by "
                    "the modified scheme");
  }
  Functional fn;
  fn.owner = v;
  fn.provenance = regular ? Functional::Provenance::ClosedFormRegular
                          : Functional::Provenance::ClosedFormEp;
  fn.window = win.control;
  fn.row = 0;
  fn.system = ctx.system_ref(n);
  fn.weights = closed_form_weights(ctx.scheme, n).expand();
  fn.samples = mat_times_positions(ctx.mesh, ctx.system(n), win.control);
  return fn;
}

// --- corner configuration (triangle meshes) --------------------------------
//
// A boundary corner with a single incident face has no interior anchor whose
// window reaches it. The 21-point system covers the corner's two boundary
// neighbors and the interior vertex across the corner face; the corner vertex
// itself has no support on active elements.

struct CornerPatch {
  std::vector<Index> control;         // 21 control vertices (matrix columns)
  std::vector<InterpEntity> entities; // 21 interpolation entities (rows)
};

Index common_neighbor(const HalfEdgeMesh& mesh, Index a, Index b, Index exclude) {
  std::vector<Index> na = mesh.neighbors(a);
  std::vector<Index> nb = mesh.neighbors(b);
  std::sort(na.begin(), na.end());
  std::sort(nb.begin(), nb.end());
  std::vector<Index> isect;
  std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(),
                        std::back_inserter(isect));
  isect.erase(std::remove(isect.begin(), isect.end(), exclude), isect.end());
  if (isect.size() != 1) return kInvalid;
  return isect[0];
}

Index find_edge(const HalfEdgeMesh& mesh, Index a, Index b) {
  for (Index h : mesh.star(a))
    if (mesh.head(h) == b) return mesh.edge_id(h);
  return kInvalid;
}

std::optional<CornerPatch> corner_patch_from(BuildContext& ctx, Index c) {
  const HalfEdgeMesh& mesh = ctx.mesh;
  if (mesh.arity() != 3) return std::nullopt;
  if (!mesh.is_boundary_vertex(c) || mesh.valence(c) != 1) return std::nullopt;

  Index h = mesh.out_he(c);  // the corner face [c, a, b]
  Index a = mesh.head(h);
  Index b = mesh.origin(mesh.prev(h));
  Index hd = mesh.twin(mesh.next(h));
  if (hd == kInvalid) return std::nullopt;
  Index d = mesh.head(mesh.next(hd));  // apex across [a, b]

  std::vector<Index> id(22, kInvalid);
  id[20] = a;
  id[21] = b;
  id[13] = d;
  auto other_boundary = [&](Index w, Index not_this) -> Index {
    if (!mesh.is_boundary_vertex(w)) return kInvalid;
    auto nb = mesh.boundary_neighbors(w);
    if (nb[0] == not_this) return nb[1];
    if (nb[1] == not_this) return nb[0];
    return kInvalid;
  };
  id[8] = other_boundary(a, c);
  id[17] = other_boundary(b, c);
  auto walk = [&](int x, int y, int exclude) -> Index {
    if (id[x] == kInvalid || id[y] == kInvalid) return kInvalid;
    Index ex = exclude ? id[exclude] : kInvalid;
    return common_neighbor(mesh, id[x], id[y], ex);
  };
  id[9] = walk(8, 13, 20);
  id[14] = walk(17, 13, 21);
  id[10] = walk(9, 14, 13);
  id[5] = walk(9, 10, 14);
  id[4] = walk(5, 8, 9);
  id[6] = walk(5, 10, 9);
  id[2] = walk(5, 6, 10);
  id[1] = walk(4, 2, 5);
  id[3] = walk(2, 6, 5);
  id[11] = walk(10, 6, 5);
  id[7] = walk(6, 11, 10);
  id[15] = walk(10, 14, 9);
  id[12] = walk(11, 7, 6);
  id[16] = walk(11, 15, 10);
  id[18] = walk(14, 15, 10);
  id[19] = walk(15, 18, 14);
  for (int i = 1; i <= 21; ++i)
    if (id[i] == kInvalid) return std::nullopt;

  // the interior vertices carrying interpolation points must be regular with
  // active incident faces
  for (int i : {5, 6, 9, 10, 11, 13, 14, 15}) {
    if (mesh.is_boundary_vertex(id[i]) || mesh.valence(id[i]) != 6) return std::nullopt;
  }
  for (Index hh : mesh.star(id[10]))
    if (!ctx.active[mesh.face_of(hh)]) return std::nullopt;
  // the extra corner triangle [9, 13, 14]
  for (Index hh : mesh.star(id[13])) {
    Index f = mesh.face_of(hh);
    std::vector<Index> fv = mesh.face_vertex_list(f);
    bool has9 = std::count(fv.begin(), fv.end(), id[9]);
    bool has14 = std::count(fv.begin(), fv.end(), id[14]);
    if (has9 && has14 && !ctx.active[f]) return std::nullopt;
  }

  CornerPatch patch;
  patch.control.assign(id.begin() + 1, id.end());
  auto V = [&](int i) { return InterpEntity{InterpEntity::VertexPoint, id[i]}; };
  auto E = [&](int i, int j) -> std::optional<InterpEntity> {
    Index e = find_edge(mesh, id[i], id[j]);
    if (e == kInvalid) return std::nullopt;
    return InterpEntity{InterpEntity::EdgePoint, e};
  };
  std::vector<std::optional<InterpEntity>> rows = {
      V(5),        E(5, 6),   V(6),      E(5, 9),   E(5, 10),  E(6, 10),  V(13),
      V(9),        E(9, 10),  V(10),     E(10, 11), V(11),     E(9, 14),  E(10, 14),
      E(10, 15),   E(11, 15), V(14),     E(14, 15), V(15),     E(9, 13),  E(13, 14)};
  for (auto& r : rows) {
    if (!r) return std::nullopt;
    patch.entities.push_back(*r);
  }
  return patch;
}

std::optional<CornerPatch> corner_patch_for(BuildContext& ctx, Index v) {
  if (ctx.mesh.arity() != 3) return std::nullopt;
  std::vector<Index> near{v};
  for (auto [u, depth] : vertices_within(ctx.mesh, v, 2)) near.push_back(u);
  for (Index c : near) {
    if (!ctx.mesh.is_boundary_vertex(c) || ctx.mesh.valence(c) != 1) continue;
    auto patch = corner_patch_from(ctx, c);
    if (!patch) continue;
    // the covered vertices are the corner's two boundary neighbors and the
    // apex across the corner face
    if (patch->control[12] == v || patch->control[19] == v || patch->control[20] == v)
      return patch;
  }
  return std::nullopt;
}

// Surface sample positions of the corner system's interpolation points: the
// rows of the matrix are exact basis values, so positions are A * P.
Functional corner_functional(BuildContext& ctx, Index v, const CornerPatch& patch) {
  ctx.corner();
  int k = -1;
  for (std::size_t i = 0; i < patch.control.size(); ++i)
    if (patch.control[i] == v) k = static_cast<int>(i);
  if (k < 0) throw Error(ErrorCode::InvalidMesh, "vertex missing from corner patch");
  Functional fn;
  fn.owner = v;
  fn.provenance = Functional::Provenance::CornerSystem;
  fn.window = patch.control;
  fn.row = k;
  fn.system = ctx.corner_matrix;
  fn.weights = ctx.corner_solver->row(k);
  fn.samples = mat_times_positions(ctx.mesh, *ctx.corner_matrix, patch.control);
  return fn;
}

// True when the basis function of v vanishes on every active face: no face
// of its support (faces touching the closed one-ring) is active.
bool basis_vanishes_on_active(const BuildContext& ctx, Index v) {
  std::vector<Index> ring = one_ring_vertices(ctx.mesh, v);
  ring.push_back(v);
  std::set<Index> ring_set(ring.begin(), ring.end());
  for (Index f = 0; f < ctx.mesh.face_count(); ++f) {
    if (!ctx.active[f]) continue;
    for (Index w : ctx.mesh.face_vertex_list(f))
      if (ring_set.count(w)) return false;
  }
  return true;
}

struct Dropped {};

std::variant<Functional, Dropped> boundary_functional_impl(BuildContext& ctx, Index v) {
  if (auto patch = corner_patch_for(ctx, v)) return corner_functional(ctx, v, *patch);

  Index t = pick_target(ctx, v, kInvalid);
  if (t != kInvalid) {
    Window win = *anchor_window(ctx, t, v);
    return system_row_functional(ctx, v, win, Functional::Provenance::TargetPoint, t);
  }
  if (auto fn = ep_window_functional(ctx, v)) return std::move(*fn);

  if (basis_vanishes_on_active(ctx, v)) return Dropped{};
  throw Error(ErrorCode::UnsupportedBoundary,
              "no admissible system covers boundary vertex " + std::to_string(v));
}

std::variant<Functional, Dropped> functional_impl(BuildContext& ctx, Index v) {
  switch (ctx.cls.tag[v]) {
    case VertexClass::RegularInterior:
      try {
        return closed_form_functional(ctx, v);
      } catch (const Error&) {
        // the two-ring can fold around a nearby low-valence vertex, in which
        // case no regular system is centered here; borrow a clean one
        Index t = pick_target(ctx, v, kInvalid);
        if (t != kInvalid)
          return system_row_functional(ctx, v, *anchor_window(ctx, t, v),
                                       Functional::Provenance::TargetPoint, t);
        if (auto fn = ep_window_functional(ctx, v)) return std::move(*fn);
        throw;
      }
    case VertexClass::ExtraordinaryInterior:
      return closed_form_functional(ctx, v);
    case VertexClass::RegularAdjacentToEp: {
      Index t = pick_target(ctx, v, ctx.cls.governing_ep[v]);
      if (t != kInvalid) {
        Window win = *anchor_window(ctx, t, v);
        return system_row_functional(ctx, v, win, Functional::Provenance::TargetPoint, t);
      }
      // the adjacent extraordinary vertex serves as the target
      if (auto fn = ep_window_functional(ctx, v)) return std::move(*fn);
      throw Error(ErrorCode::InvalidMesh,
                  "no admissible system covers vertex " + std::to_string(v));
    }
    case VertexClass::MeshBoundary:
    case VertexClass::SurfaceBoundary:
      return boundary_functional_impl(ctx, v);
  }
  throw Error(ErrorCode::InvalidMesh, "unclassified vertex");
}

}  // namespace

std::vector<Vec3> sample_points(const HalfEdgeMesh& mesh, Index v, const SchemeId& scheme) {
  Window win = control_window(mesh, v);
  Mat A = local_A(scheme, win.valence);
  Eigen::MatrixXd P(win.control.size(), 3);
  for (std::size_t i = 0; i < win.control.size(); ++i)
    P.row(i) = mesh.position(win.control[i]).transpose();
  Eigen::MatrixXd X = A * P;
  std::vector<Vec3> out(X.rows());
  for (Eigen::Index k = 0; k < X.rows(); ++k) out[k] = X.row(k).transpose();
  return out;
}

Index target_point(const HalfEdgeMesh& mesh, const VertexClassification& cls, Index v,
                   const SchemeId& scheme) {
  if (cls.tag[v] != VertexClass::RegularAdjacentToEp)
    throw Error(ErrorCode::InvalidMesh, "target_point expects a vertex adjacent to an Ep");
  BuildContext ctx(mesh, scheme, cls);
  Index t = pick_target(ctx, v, cls.governing_ep[v]);
  return t == kInvalid ? cls.governing_ep[v] : t;
}

Functional functional_for(const HalfEdgeMesh& mesh, const VertexClassification& cls,
                          Index v, const SchemeId& scheme) {
  BuildContext ctx(mesh, scheme, cls);
  auto r = functional_impl(ctx, v);
  if (std::holds_alternative<Dropped>(r))
    throw Error(ErrorCode::UnsupportedBoundary,
                "basis of vertex " + std::to_string(v) + " vanishes on the active region");
  return std::get<Functional>(std::move(r));
}

Functional boundary_functional(const HalfEdgeMesh& mesh, const VertexClassification& cls,
                               Index v, const SchemeId& scheme) {
  if (cls.tag[v] != VertexClass::MeshBoundary && cls.tag[v] != VertexClass::SurfaceBoundary)
    throw Error(ErrorCode::InvalidMesh, "boundary_functional expects a boundary vertex");
  BuildContext ctx(mesh, scheme, cls);
  auto r = boundary_functional_impl(ctx, v);
  if (std::holds_alternative<Dropped>(r))
    throw Error(ErrorCode::UnsupportedBoundary,
                "basis of vertex " + std::to_string(v) + " vanishes on the active region");
  return std::get<Functional>(std::move(r));
}

std::optional<CornerPatchInfo> corner_patch(const HalfEdgeMesh& mesh,
                                            const VertexClassification& cls, Index v,
                                            const SchemeId& scheme) {
  BuildContext ctx(mesh, scheme, cls);
  auto patch = corner_patch_for(ctx, v);
  if (!patch) return std::nullopt;
  return CornerPatchInfo{patch->control, patch->entities};
}

QuasiInterpolant build(const HalfEdgeMesh& mesh, const SchemeId& scheme) {
  if (!eps_separated(mesh))
    throw Error(ErrorCode::InvalidMesh,
                "mesh has a face with several extraordinary vertices; separate them first");
  VertexClassification cls = classify(mesh, scheme);
  BuildContext ctx(mesh, scheme, cls);

  QuasiInterpolant qi;
  qi.scheme = scheme;
  qi.vertex_count = mesh.vertex_count();
  qi.functional_of_vertex.assign(mesh.vertex_count(), kInvalid);

  std::string failures;
  int failure_count = 0;
  for (Index v = 0; v < mesh.vertex_count(); ++v) {
    try {
      auto r = functional_impl(ctx, v);
      if (std::holds_alternative<Dropped>(r)) {
        qi.dropped.push_back(v);
        continue;
      }
      qi.functional_of_vertex[v] = static_cast<Index>(qi.functionals.size());
      qi.functionals.push_back(std::get<Functional>(std::move(r)));
    } catch (const Error& e) {
      ++failure_count;
      if (failures.size() < 512)
        failures += "\n  vertex " + std::to_string(v) + ": " + e.what();
    }
  }
  if (failure_count > 0)
    throw Error(ErrorCode::InvalidMesh,
                std::to_string(failure_count) + " vertices failed:" + failures);
  return qi;
}

Eigen::VectorXd QuasiInterpolant::apply(const std::function<double(const Vec3&)>& f) const {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(vertex_count);
  for (const Functional& fn : functionals) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < fn.weights.size(); ++k) {
      double value;
      try {
        value = f(fn.samples[k]);
      } catch (const std::exception& e) {
        throw Error(ErrorCode::DegenerateFunction,
                    std::string("evaluation failed at (") +
                        std::to_string(fn.samples[k].x()) + ", " +
                        std::to_string(fn.samples[k].y()) + ", " +
                        std::to_string(fn.samples[k].z()) + "): " + e.what());
      }
      acc += fn.weights[k] * value;
    }
    c[fn.owner] = acc;
  }
  return c;
}

Eigen::VectorXd QuasiInterpolant::apply_to_net(const Eigen::VectorXd& coefficients) const {
  if (coefficients.size() != static_cast<Eigen::Index>(vertex_count))
    throw Error(ErrorCode::InvalidMesh, "coefficient count mismatch");
  Eigen::VectorXd c = Eigen::VectorXd::Zero(vertex_count);
  for (const Functional& fn : functionals) {
    Eigen::VectorXd cw(fn.window.size());
    for (std::size_t i = 0; i < fn.window.size(); ++i) cw[i] = coefficients[fn.window[i]];
    c[fn.owner] = fn.weights.dot((*fn.system) * cw);
  }
  return c;
}

nlohmann::json QuasiInterpolant::to_json() const {
  nlohmann::json doc;
  doc["scheme"] = scheme_name(scheme.kind);
  doc["vertex_count"] = vertex_count;
  doc["dropped"] = dropped;
  nlohmann::json fns = nlohmann::json::array();
  for (const Functional& fn : functionals) {
    nlohmann::json jf;
    jf["owner"] = fn.owner;
    jf["provenance"] = provenance_name(fn.provenance);
    if (fn.target != kInvalid) jf["target"] = fn.target;
    nlohmann::json samples = nlohmann::json::array();
    for (const Vec3& p : fn.samples) samples.push_back({p.x(), p.y(), p.z()});
    jf["samples"] = samples;
    std::vector<double> w(fn.weights.data(), fn.weights.data() + fn.weights.size());
    jf["weights"] = w;
    fns.push_back(std::move(jf));
  }
  doc["functionals"] = std::move(fns);
  return doc;
}

}  // namespace subdivqi
