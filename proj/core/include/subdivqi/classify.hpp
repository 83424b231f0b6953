#pragma once

#include <vector>

#include "subdivqi/mesh.hpp"
#include "subdivqi/schemes.hpp"

namespace subdivqi {

/// Vertex roles for functional dispatch. Tags are mutually exclusive with
/// precedence MeshBoundary > SurfaceBoundary > ExtraordinaryInterior >
/// RegularAdjacentToEp > RegularInterior; SurfaceBoundary marks interior
/// vertices with an inactive incident face (they sit on the boundary of the
/// active-element region).
enum class VertexClass {
  RegularInterior,
  ExtraordinaryInterior,
  RegularAdjacentToEp,
  MeshBoundary,
  SurfaceBoundary,
};

const char* vertex_class_name(VertexClass c);

struct VertexClassification {
  std::vector<VertexClass> tag;
  std::vector<int> ep_ring;        // 1 or 2 for RegularAdjacentToEp, else 0
  std::vector<Index> governing_ep; // lowest-index nearby Ep, else kInvalid
  std::vector<Index> eps;          // all extraordinary interior vertices
};

/// Extraordinary = interior vertex whose valence differs from the regular
/// valence of the mesh family (4 for quads, 6 for triangles).
bool is_extraordinary(const HalfEdgeMesh& mesh, Index v);

/// A face is active iff none of its vertices lies on the mesh boundary; the
/// union of active faces is the domain of the subdivision surface.
std::vector<bool> active_faces(const HalfEdgeMesh& mesh);

/// Vertices of incident faces (for quads this includes the diagonals).
std::vector<Index> one_ring_vertices(const HalfEdgeMesh& mesh, Index v);

/// Connectivity-only classification. The scheme selects the adjacency depth:
/// the modified triangle scheme enlarges edge-point supports, so its
/// RegularAdjacentToEp covers the 2-ring as well.
VertexClassification classify(const HalfEdgeMesh& mesh, const SchemeId& scheme);

/// True iff every face contains at most one extraordinary vertex.
bool eps_separated(const HalfEdgeMesh& mesh);

/// If some face touches two or more extraordinary vertices, apply one global
/// refinement with the scheme's rules; otherwise return the input unchanged.
PolyMesh ensure_separated_eps(const PolyMesh& mesh, const SchemeId& scheme);

}  // namespace subdivqi
