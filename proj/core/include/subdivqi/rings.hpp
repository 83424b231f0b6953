#pragma once

#include <vector>

#include "subdivqi/mesh.hpp"
#include "subdivqi/schemes.hpp"

namespace subdivqi {

/// One-ring of an interior vertex in deterministic order: counterclockwise by
/// face winding, anchored at the lowest-index edge-neighbor.
struct Ring1 {
  Index center = kInvalid;
  int valence = 0;
  std::vector<Index> spoke_hes;        // outgoing halfedges center->e_j
  std::vector<Index> edge_neighbors;   // e_j
  std::vector<Index> diagonals;        // f_j (quads only)
  std::vector<Index> faces;            // face between spokes j and j+1
  std::vector<Index> ring_edges;       // quad: [e_j,f_j],[f_j,e_{j+1}]; tri: [e_j,e_{j+1}]
};

Ring1 ordered_ring1(const HalfEdgeMesh& mesh, Index v);

/// Control points of the local interpolation system at v, in sector order:
///   [v ; sector 0 ; sector 1 ; ...]
/// quad sector: e_j, s_j (straight past e_j), f_j, d1_j, d2_j, c_j
/// tri  sector: e_j, s_j (straight past e_j), m_j (apex across the ring edge)
/// Requires every 1-ring vertex regular and the two-ring fully inside the
/// mesh; sizes are 6n+1 (quad) and 3n+1 (triangle).
struct Window {
  Index center = kInvalid;
  int valence = 0;
  std::vector<Index> control;

  int index_of(Index v) const {
    for (std::size_t i = 0; i < control.size(); ++i)
      if (control[i] == v) return static_cast<int>(i);
    return -1;
  }
};

Window control_window(const HalfEdgeMesh& mesh, Index v);

/// Interpolation-point entities of the local system at v, in the row order of
/// the assembled matrices: the center vertex, then per sector the spoke edge
/// midpoint, the ring vertex, (quad: the face centroid,) and the ring edge
/// midpoints, (quad: the diagonal vertex).
struct InterpEntity {
  enum Kind { VertexPoint, EdgePoint, FacePoint } kind;
  Index id;  // vertex id, edge id, or face id
};

std::vector<InterpEntity> interp_entities(const HalfEdgeMesh& mesh, Index v);

/// ordered_ring of the module contract: depth 1 returns the ring, depth 2 the
/// window's control list.
std::vector<Index> ordered_ring(const HalfEdgeMesh& mesh, Index v, int depth);

}  // namespace subdivqi
