#include "subdivqi/classify.hpp"

#include <algorithm>

namespace subdivqi {

const char* vertex_class_name(VertexClass c) {
  switch (c) {
    case VertexClass::RegularInterior: return "RegularInterior";
    case VertexClass::ExtraordinaryInterior: return "ExtraordinaryInterior";
    case VertexClass::RegularAdjacentToEp: return "RegularAdjacentToEp";
    case VertexClass::MeshBoundary: return "MeshBoundary";
    case VertexClass::SurfaceBoundary: return "SurfaceBoundary";
  }
  return "?";
}

bool is_extraordinary(const HalfEdgeMesh& mesh, Index v) {
  if (mesh.is_boundary_vertex(v)) return false;
  int regular = mesh.arity() == 4 ? 4 : 6;
  return mesh.valence(v) != regular;
}

std::vector<bool> active_faces(const HalfEdgeMesh& mesh) {
  std::vector<bool> active(mesh.face_count(), true);
  for (Index f = 0; f < mesh.face_count(); ++f)
    for (Index v : mesh.face_vertex_list(f))
      if (mesh.is_boundary_vertex(v)) {
        active[f] = false;
        break;
      }
  return active;
}

std::vector<Index> one_ring_vertices(const HalfEdgeMesh& mesh, Index v) {
  std::vector<Index> out;
  for (Index h : mesh.star(v))
    for (Index w : mesh.face_vertex_list(mesh.face_of(h)))
      if (w != v) out.push_back(w);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

VertexClassification classify(const HalfEdgeMesh& mesh, const SchemeId& scheme) {
  if (mesh.arity() != scheme.face_arity())
    throw Error(ErrorCode::InvalidMesh, "mesh arity does not match scheme");
  const Index nv = mesh.vertex_count();
  VertexClassification cls;
  cls.tag.assign(nv, VertexClass::RegularInterior);
  cls.ep_ring.assign(nv, 0);
  cls.governing_ep.assign(nv, kInvalid);

  std::vector<bool> ep(nv, false);
  for (Index v = 0; v < nv; ++v)
    if (is_extraordinary(mesh, v)) {
      ep[v] = true;
      cls.eps.push_back(v);
    }

  std::vector<bool> active = active_faces(mesh);

  for (Index v = 0; v < nv; ++v) {
    if (mesh.is_boundary_vertex(v)) {
      cls.tag[v] = VertexClass::MeshBoundary;
      continue;
    }
    bool all_active = true;
    for (Index h : mesh.star(v))
      if (!active[mesh.face_of(h)]) all_active = false;
    if (!all_active) {
      cls.tag[v] = VertexClass::SurfaceBoundary;
      continue;
    }
    if (ep[v]) {
      cls.tag[v] = VertexClass::ExtraordinaryInterior;
      continue;
    }
    Index gov = kInvalid;
    int ring = 0;
    for (Index w : one_ring_vertices(mesh, v))
      if (ep[w] && w < gov) {
        gov = w;
        ring = 1;
      }
    if (ring == 0 && scheme.kind == SchemeKind::ModifiedLoop) {
      // the modified edge rule reaches one ring further
      std::vector<Index> two_ring;
      for (Index w : mesh.neighbors(v))
        for (Index u : mesh.neighbors(w))
          if (u != v) two_ring.push_back(u);
      std::sort(two_ring.begin(), two_ring.end());
      two_ring.erase(std::unique(two_ring.begin(), two_ring.end()), two_ring.end());
      for (Index u : two_ring)
        if (ep[u] && u < gov) {
          gov = u;
          ring = 2;
        }
    }
    if (ring > 0) {
      cls.tag[v] = VertexClass::RegularAdjacentToEp;
      cls.ep_ring[v] = ring;
      cls.governing_ep[v] = gov;
    }
  }
  return cls;
}

bool eps_separated(const HalfEdgeMesh& mesh) {
  for (Index f = 0; f < mesh.face_count(); ++f) {
    int count = 0;
    for (Index v : mesh.face_vertex_list(f))
      if (is_extraordinary(mesh, v)) ++count;
    if (count > 1) return false;
  }
  return true;
}

PolyMesh ensure_separated_eps(const PolyMesh& mesh, const SchemeId& scheme) {
  HalfEdgeMesh he = HalfEdgeMesh::build(mesh);
  if (eps_separated(he)) return mesh;
  RefineResult r = refine(he, scheme);
  return r.mesh.to_poly();
}

}  // namespace subdivqi
