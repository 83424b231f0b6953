#include "subdivqi/rings.hpp"

#include <algorithm>

namespace subdivqi {

namespace {

// CCW star anchored at the lowest-index neighbor; interior vertices only.
std::vector<Index> anchored_star(const HalfEdgeMesh& mesh, Index v) {
  if (mesh.is_boundary_vertex(v))
    throw Error(ErrorCode::IncompleteRing, "ring truncated by boundary at vertex " +
                                               std::to_string(v));
  std::vector<Index> star = mesh.star(v);
  std::size_t best = 0;
  for (std::size_t i = 1; i < star.size(); ++i)
    if (mesh.head(star[i]) < mesh.head(star[best])) best = i;
  std::rotate(star.begin(), star.begin() + best, star.end());
  return star;
}

// Position of the outgoing halfedge h in the CCW star of its origin.
int star_pos(const std::vector<Index>& star, Index h) {
  for (std::size_t i = 0; i < star.size(); ++i)
    if (star[i] == h) return static_cast<int>(i);
  throw Error(ErrorCode::InvalidMesh, "halfedge missing from its vertex star");
}

void require_full_interior(const HalfEdgeMesh& mesh, Index v, int expected_valence) {
  if (mesh.is_boundary_vertex(v))
    throw Error(ErrorCode::IncompleteRing,
                "two-ring truncated by boundary at vertex " + std::to_string(v));
  if (expected_valence > 0 && mesh.valence(v) != expected_valence)
    throw Error(ErrorCode::InvalidMesh,
                "window requires a regular one-ring (vertex " + std::to_string(v) +
                    " has valence " + std::to_string(mesh.valence(v)) + ")");
}

}  // namespace

Ring1 ordered_ring1(const HalfEdgeMesh& mesh, Index v) {
  Ring1 ring;
  ring.center = v;
  ring.spoke_hes = anchored_star(mesh, v);
  ring.valence = static_cast<int>(ring.spoke_hes.size());
  const bool quad = mesh.arity() == 4;
  for (Index h : ring.spoke_hes) {
    ring.edge_neighbors.push_back(mesh.head(h));
    ring.faces.push_back(mesh.face_of(h));
    if (quad) {
      ring.diagonals.push_back(mesh.head(mesh.next(h)));
      ring.ring_edges.push_back(mesh.edge_id(mesh.next(h)));
      ring.ring_edges.push_back(mesh.edge_id(mesh.next(mesh.next(h))));
    } else {
      ring.ring_edges.push_back(mesh.edge_id(mesh.next(h)));
    }
  }
  return ring;
}

Window control_window(const HalfEdgeMesh& mesh, Index v) {
  Window win;
  win.center = v;
  std::vector<Index> star = anchored_star(mesh, v);
  win.valence = static_cast<int>(star.size());
  const bool quad = mesh.arity() == 4;
  const int regular = quad ? 4 : 6;
  win.control.push_back(v);

  for (Index h : star) {
    Index e = mesh.head(h);
    require_full_interior(mesh, e, regular);
    std::vector<Index> star_e = mesh.star(e);
    int pos_v = star_pos(star_e, mesh.twin(h));

    if (quad) {
      Index f = mesh.head(mesh.next(h));
      Index s_he = star_e[(pos_v + 2) % 4];
      Index s = mesh.head(s_he);
      Index d1 = mesh.head(mesh.next(s_he));

      require_full_interior(mesh, f, regular);
      std::vector<Index> star_f = mesh.star(f);
      int pos_e = star_pos(star_f, mesh.twin(mesh.next(h)));
      Index d1_he = star_f[(pos_e + 1) % 4];
      if (mesh.head(d1_he) != d1)
        throw Error(ErrorCode::InvalidMesh, "two-ring is not grid-like at vertex " +
                                                std::to_string(v));
      Index c = mesh.head(mesh.next(d1_he));
      Index d2 = mesh.head(star_f[(pos_e + 2) % 4]);
      win.control.insert(win.control.end(), {e, s, f, d1, d2, c});
    } else {
      Index s = mesh.head(star_e[(pos_v + 3) % 6]);
      Index ring_he = mesh.next(h);  // e_j -> e_{j+1}
      Index t = mesh.twin(ring_he);
      if (t == kInvalid)
        throw Error(ErrorCode::IncompleteRing, "two-ring truncated by boundary");
      Index m = mesh.head(mesh.next(t));
      win.control.insert(win.control.end(), {e, s, m});
    }
  }

  // distinctness: the window must embed without wrap-around
  std::vector<Index> sorted = win.control;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorCode::InvalidMesh,
                "two-ring window wraps around (duplicate control point) at vertex " +
                    std::to_string(v));
  return win;
}

std::vector<InterpEntity> interp_entities(const HalfEdgeMesh& mesh, Index v) {
  std::vector<InterpEntity> ents;
  std::vector<Index> star = anchored_star(mesh, v);
  const bool quad = mesh.arity() == 4;
  ents.push_back({InterpEntity::VertexPoint, v});
  for (Index h : star) {
    if (quad) {
      ents.push_back({InterpEntity::EdgePoint, mesh.edge_id(h)});
      ents.push_back({InterpEntity::VertexPoint, mesh.head(h)});
      ents.push_back({InterpEntity::FacePoint, mesh.face_of(h)});
      ents.push_back({InterpEntity::EdgePoint, mesh.edge_id(mesh.next(h))});
      ents.push_back({InterpEntity::EdgePoint, mesh.edge_id(mesh.next(mesh.next(h)))});
      ents.push_back({InterpEntity::VertexPoint, mesh.head(mesh.next(h))});
    } else {
      ents.push_back({InterpEntity::EdgePoint, mesh.edge_id(h)});
      ents.push_back({InterpEntity::VertexPoint, mesh.head(h)});
      ents.push_back({InterpEntity::EdgePoint, mesh.edge_id(mesh.next(h))});
    }
  }
  return ents;
}

std::vector<Index> ordered_ring(const HalfEdgeMesh& mesh, Index v, int depth) {
  if (depth == 1) {
    Ring1 r = ordered_ring1(mesh, v);
    std::vector<Index> out;
    out.reserve(r.edge_neighbors.size() + r.diagonals.size());
    for (std::size_t j = 0; j < r.edge_neighbors.size(); ++j) {
      out.push_back(r.edge_neighbors[j]);
      if (!r.diagonals.empty()) out.push_back(r.diagonals[j]);
    }
    return out;
  }
  if (depth == 2) return control_window(mesh, v).control;
  throw Error(ErrorCode::InvalidMesh, "ring depth must be 1 or 2");
}

}  // namespace subdivqi
