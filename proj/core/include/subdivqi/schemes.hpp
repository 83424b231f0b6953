#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "subdivqi/mesh.hpp"

namespace subdivqi {

enum class SchemeKind { CatmullClark, Loop, ModifiedLoop };

/// Refinement masks for one extraordinary valence of the modified triangle
/// scheme: vertex update (alpha, beta) and the ring edge-point weights
/// (gamma on the center, gamma_j around the ring). Both masks are affine:
///   alpha + n*beta = 1 and gamma + sum_j gamma_j = 1.
struct MLoopValenceMasks {
  double alpha = 0;
  double beta = 0;
  double gamma = 0;
  std::vector<double> gamma_j;
};

struct MLoopMasks {
  double lambda = 0;  // target subdominant eigenvalue, metadata only
  std::map<int, MLoopValenceMasks> valences;

  const MLoopValenceMasks& at(int n) const;
  bool has(int n) const { return valences.count(n) != 0; }
  void validate() const;  // throws InvalidMasks naming the violated identity

  /// Masks that reproduce the plain Loop rules (gamma = 3/8, ring weights
  /// 3/8, 1/8, 0, ..., 0, 1/8) for valences [min_n, max_n].
  static MLoopMasks loop_equivalent(int min_n, int max_n);

  static MLoopMasks from_json(const nlohmann::json& doc);
  static MLoopMasks from_json_file(const std::string& path);
  nlohmann::json to_json() const;
};

/// Scheme selector; ModifiedLoop carries its mask table.
struct SchemeId {
  SchemeKind kind = SchemeKind::CatmullClark;
  std::shared_ptr<const MLoopMasks> masks;

  int face_arity() const { return kind == SchemeKind::CatmullClark ? 4 : 3; }
  int regular_valence() const { return kind == SchemeKind::CatmullClark ? 4 : 6; }
  bool is_triangular() const { return kind != SchemeKind::CatmullClark; }

  static SchemeId catmull_clark() { return {SchemeKind::CatmullClark, nullptr}; }
  static SchemeId loop() { return {SchemeKind::Loop, nullptr}; }
  static SchemeId modified_loop(MLoopMasks m) {
    m.validate();
    return {SchemeKind::ModifiedLoop, std::make_shared<const MLoopMasks>(std::move(m))};
  }
};

const char* scheme_name(SchemeKind kind);
SchemeKind scheme_from_name(const std::string& name);

// Loop vertex-update coefficients (original convention, beta(6) = 1/16) and
// the matching limit-mask coefficient tau(n); the regular limit mask is
// v_inf = 1/2 v + 1/12 sum(e).
double loop_beta(int n);
double loop_alpha(int n);
double loop_tau(int n);
double mloop_tau(const MLoopValenceMasks& m, int n);

/// One global refinement step. Refined vertex ids are deterministic:
///   old vertex v          -> v
///   edge e                -> V + e
///   face f (quads only)   -> V + E + f
/// and child face c of face f is 4*f + c. Extra per-vertex channels are
/// refined with the same masks as the geometry.
struct RefineResult {
  HalfEdgeMesh mesh;
  Channels channels;  // refined extra channels (0 columns if none given)
  Index parent_vertex_count = 0;
  Index parent_edge_count = 0;

  Index vertex_point(Index v) const { return v; }
  Index edge_point(Index e) const { return parent_vertex_count + e; }
  Index face_point(Index f) const { return parent_vertex_count + parent_edge_count + f; }
};

RefineResult refine(const HalfEdgeMesh& mesh, const Channels& extra, const SchemeId& scheme);
inline RefineResult refine(const HalfEdgeMesh& mesh, const SchemeId& scheme) {
  return refine(mesh, Channels(mesh.vertex_count(), 0), scheme);
}

/// Limit values of the given channels at every vertex. Mesh-boundary vertices
/// take the cubic curve mask (1,4,1)/6 along the boundary polyline.
Channels limit_positions(const HalfEdgeMesh& mesh, const Channels& channels,
                         const SchemeId& scheme);

}  // namespace subdivqi
