#pragma once

#include <functional>
#include <memory>
#include <optional>

#include <nlohmann/json_fwd.hpp>

#include "subdivqi/classify.hpp"
#include "subdivqi/local_system.hpp"
#include "subdivqi/rings.hpp"
#include "subdivqi/weights.hpp"

namespace subdivqi {

/// Point-evaluation functional lambda(f) = sum_k weights[k] * f(samples[k]).
/// Samples are limit-surface points of the local system that produced the
/// weights; the window and system matrix are kept so coefficient nets can be
/// pushed through the same system (A * c gives the function values at the
/// samples for f in the subdivision space).
struct Functional {
  enum class Provenance { ClosedFormEp, ClosedFormRegular, TargetPoint, CornerSystem };

  Index owner = kInvalid;
  Provenance provenance = Provenance::ClosedFormRegular;
  Index target = kInvalid;  // anchor vertex for TargetPoint
  std::vector<Vec3> samples;
  Eigen::VectorXd weights;

  std::vector<Index> window;            // control vertices of the system
  int row = 0;                          // owner's column in the system
  std::shared_ptr<const Mat> system;    // basis values at the samples
};

const char* provenance_name(Functional::Provenance p);

struct QuasiInterpolant {
  SchemeId scheme;
  Index vertex_count = 0;
  std::vector<Functional> functionals;
  std::vector<Index> functional_of_vertex;  // kInvalid for dropped vertices
  std::vector<Index> dropped;               // basis vanishes on the active region

  /// Coefficient per vertex: lambda_i(f); dropped vertices get 0.
  Eigen::VectorXd apply(const std::function<double(const Vec3&)>& f) const;

  /// Same, but f given as a coefficient net of the subdivision space: the
  /// sample values of functional i are system_i * c[window_i].
  Eigen::VectorXd apply_to_net(const Eigen::VectorXd& coefficients) const;

  nlohmann::json to_json() const;
};

/// Limit-surface positions of the interpolation points of the local system
/// at v (the center's own system; v may be extraordinary).
std::vector<Vec3> sample_points(const HalfEdgeMesh& mesh, Index v, const SchemeId& scheme);

/// Target of a regular vertex adjacent to an extraordinary one: a regular
/// vertex whose own system is clean and whose window contains v. Falls back
/// to the extraordinary vertex itself when no such target exists.
Index target_point(const HalfEdgeMesh& mesh, const VertexClassification& cls, Index v,
                   const SchemeId& scheme);

QuasiInterpolant build(const HalfEdgeMesh& mesh, const SchemeId& scheme);

/// Functional for a single vertex (classification supplied by the caller).
Functional functional_for(const HalfEdgeMesh& mesh, const VertexClassification& cls,
                          Index v, const SchemeId& scheme);

/// Functional for a mesh- or surface-boundary vertex: an interior target
/// whose samples stay on active elements, or the corner system when no
/// target exists. Throws UnsupportedBoundary when the vertex has no support
/// on active elements.
Functional boundary_functional(const HalfEdgeMesh& mesh, const VertexClassification& cls,
                               Index v, const SchemeId& scheme);

/// Control vertices (columns) and interpolation entities (rows) of the
/// 21-point corner system covering v, when v sits in such a corner
/// configuration. Introspection for verification tooling.
struct CornerPatchInfo {
  std::vector<Index> control;
  std::vector<InterpEntity> entities;
};
std::optional<CornerPatchInfo> corner_patch(const HalfEdgeMesh& mesh,
                                            const VertexClassification& cls, Index v,
                                            const SchemeId& scheme);

}  // namespace subdivqi
