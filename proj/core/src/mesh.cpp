#include "subdivqi/mesh.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace subdivqi {

PolyMesh load_obj(std::istream& in) {
  PolyMesh mesh;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      double x, y, z;
      if (!(ls >> x >> y >> z))
        throw Error(ErrorCode::Io, "malformed vertex record at line " + std::to_string(lineno));
      mesh.positions.emplace_back(x, y, z);
    } else if (tag == "f") {
      std::vector<Index> corners;
      std::string item;
      while (ls >> item) {
        // accept v, v/vt, v//vn, v/vt/vn; only the vertex index is used
        std::size_t slash = item.find('/');
        std::string head = slash == std::string::npos ? item : item.substr(0, slash);
        long idx = 0;
        try {
          idx = std::stol(head);
        } catch (const std::exception&) {
          throw Error(ErrorCode::Io, "malformed face record at line " + std::to_string(lineno));
        }
        if (idx <= 0 || static_cast<std::size_t>(idx) > mesh.positions.size())
          throw Error(ErrorCode::BadIndex,
                      "face index " + std::to_string(idx) + " out of range at line " +
                          std::to_string(lineno));
        corners.push_back(static_cast<Index>(idx - 1));
      }
      if (corners.size() != 3 && corners.size() != 4)
        throw Error(ErrorCode::MixedArity,
                    "faces must be all triangles or all quads (got a face of arity " +
                        std::to_string(corners.size()) + ")");
      if (mesh.arity == 0) mesh.arity = static_cast<int>(corners.size());
      if (static_cast<int>(corners.size()) != mesh.arity)
        throw Error(ErrorCode::MixedArity, "faces must be all triangles or all quads");
      for (std::size_t i = 0; i < corners.size(); ++i)
        for (std::size_t j = i + 1; j < corners.size(); ++j)
          if (corners[i] == corners[j])
            throw Error(ErrorCode::InvalidMesh,
                        "repeated vertex in face at line " + std::to_string(lineno));
      mesh.face_vertices.insert(mesh.face_vertices.end(), corners.begin(), corners.end());
    }
    // all other records (vt, vn, usemtl, ...) are ignored
  }
  if (mesh.arity == 0)
    throw Error(ErrorCode::Io, "no faces in OBJ input");
  return mesh;
}

PolyMesh load_obj_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  return load_obj(in);
}

void save_obj(const PolyMesh& mesh, std::ostream& out) {
  char buf[128];
  for (const Vec3& p : mesh.positions) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", p.x(), p.y(), p.z());
    out << buf;
  }
  for (Index f = 0; f < mesh.face_count(); ++f) {
    out << 'f';
    for (int c = 0; c < mesh.arity; ++c) out << ' ' << (mesh.face(f)[c] + 1);
    out << '\n';
  }
}

void save_obj_file(const PolyMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path);
  save_obj(mesh, out);
}

HalfEdgeMesh HalfEdgeMesh::build(const PolyMesh& poly) {
  if (poly.arity != 3 && poly.arity != 4)
    throw Error(ErrorCode::MixedArity, "faces must be all triangles or all quads");
  const Index nv = poly.vertex_count();
  const Index nf = poly.face_count();
  const int arity = poly.arity;
  const Index nh = nf * arity;

  HalfEdgeMesh m;
  m.arity_ = arity;
  m.positions_ = poly.positions;
  m.origin_.resize(nh);

  for (Index f = 0; f < nf; ++f) {
    for (int c = 0; c < arity; ++c) {
      Index v = poly.face(f)[c];
      if (v >= nv) throw Error(ErrorCode::BadIndex, "face vertex index out of range");
      m.origin_[f * arity + c] = v;
    }
  }

  // Twin matching: bucket halfedges by their min endpoint, then match
  // opposite directions within a bucket. Two same-direction halfedges on one
  // edge mean inconsistent winding or a non-manifold edge.
  m.twin_.assign(nh, kInvalid);
  {
    std::vector<Index> count(nv + 1, 0);
    auto min_end = [&](Index h) { return std::min(m.origin_[h], m.origin_[m.next(h)]); };
    for (Index h = 0; h < nh; ++h) ++count[min_end(h) + 1];
    for (Index v = 0; v < nv; ++v) count[v + 1] += count[v];
    std::vector<Index> bucket(nh);
    {
      std::vector<Index> cursor(count.begin(), count.end() - 1);
      for (Index h = 0; h < nh; ++h) bucket[cursor[min_end(h)]++] = h;
    }
    for (Index v = 0; v < nv; ++v) {
      for (Index i = count[v]; i < count[v + 1]; ++i) {
        Index h = bucket[i];
        Index a = m.origin_[h], b = m.origin_[m.next(h)];
        for (Index j = i + 1; j < count[v + 1]; ++j) {
          Index g = bucket[j];
          Index c = m.origin_[g], d = m.origin_[m.next(g)];
          if (a == c && b == d)
            throw Error(ErrorCode::NonManifold,
                        "duplicate directed edge (non-manifold or inconsistent winding)");
          if (a == d && b == c) {
            if (m.twin_[h] != kInvalid || m.twin_[g] != kInvalid)
              throw Error(ErrorCode::NonManifold, "edge shared by more than two faces");
            m.twin_[h] = g;
            m.twin_[g] = h;
          }
        }
      }
    }
  }

  // Undirected edge ids: canonical halfedge is the one with the smaller index.
  m.he_edge_.assign(nh, kInvalid);
  for (Index h = 0; h < nh; ++h) {
    Index t = m.twin_[h];
    if (t == kInvalid || h < t) {
      m.he_edge_[h] = static_cast<Index>(m.edge_he_.size());
      m.edge_he_.push_back(h);
    }
  }
  for (Index h = 0; h < nh; ++h)
    if (m.he_edge_[h] == kInvalid) m.he_edge_[h] = m.he_edge_[m.twin_[h]];

  // Vertex -> outgoing halfedge; boundary vertices anchor at their outgoing
  // boundary halfedge so CCW rotation sweeps the whole fan.
  m.vertex_he_.assign(nv, kInvalid);
  m.valence_.assign(nv, 0);
  m.boundary_vertex_.assign(nv, false);
  for (Index h = 0; h < nh; ++h) {
    Index v = m.origin_[h];
    ++m.valence_[v];
    if (m.twin_[h] == kInvalid) {
      if (m.boundary_vertex_[v])
        throw Error(ErrorCode::NonManifold, "vertex with more than one boundary fan");
      m.boundary_vertex_[v] = true;
      m.vertex_he_[v] = h;
    } else if (m.vertex_he_[v] == kInvalid) {
      m.vertex_he_[v] = h;
    }
  }
  for (Index v = 0; v < nv; ++v) {
    if (m.valence_[v] == 0) throw Error(ErrorCode::InvalidMesh, "isolated vertex");
    // single-fan check: CCW rotation from the anchor must reach every
    // outgoing halfedge
    Index h = m.vertex_he_[v];
    int seen = 0;
    while (h != kInvalid) {
      ++seen;
      if (seen > m.valence_[v]) break;
      h = m.rotate_ccw(h);
      if (h == m.vertex_he_[v]) break;
    }
    if (seen != m.valence_[v])
      throw Error(ErrorCode::NonManifold, "vertex star is not a single fan");
  }
  return m;
}

std::vector<Index> HalfEdgeMesh::star(Index v) const {
  std::vector<Index> out;
  out.reserve(valence_[v]);
  Index h = vertex_he_[v];
  do {
    out.push_back(h);
    h = rotate_ccw(h);
  } while (h != kInvalid && h != vertex_he_[v]);
  return out;
}

std::vector<Index> HalfEdgeMesh::neighbors(Index v) const {
  std::vector<Index> out;
  Index h = vertex_he_[v];
  do {
    out.push_back(head(h));
    Index n = rotate_ccw(h);
    if (n == kInvalid) {
      // boundary fan: the last incoming edge is also a neighbor
      out.push_back(origin(prev(h)));
      break;
    }
    h = n;
  } while (h != vertex_he_[v]);
  return out;
}

std::array<Index, 2> HalfEdgeMesh::boundary_neighbors(Index v) const {
  if (!boundary_vertex_[v])
    throw Error(ErrorCode::InvalidMesh, "boundary_neighbors on interior vertex");
  Index h = vertex_he_[v];  // outgoing boundary halfedge
  Index forward = head(h);
  Index g = h;
  while (rotate_ccw(g) != kInvalid && rotate_ccw(g) != h) g = rotate_ccw(g);
  Index backward = origin(prev(g));
  return {backward, forward};
}

Channels HalfEdgeMesh::position_channels() const {
  Channels ch(vertex_count(), 3);
  for (Index v = 0; v < vertex_count(); ++v) ch.row(v) = positions_[v].transpose();
  return ch;
}

std::vector<Index> HalfEdgeMesh::face_vertex_list(Index f) const {
  std::vector<Index> out(arity_);
  for (int c = 0; c < arity_; ++c) out[c] = origin_[f * arity_ + c];
  return out;
}

PolyMesh HalfEdgeMesh::to_poly() const {
  PolyMesh p;
  p.arity = arity_;
  p.positions = positions_;
  p.face_vertices.assign(origin_.begin(), origin_.end());
  return p;
}

HalfEdgeMesh HalfEdgeMesh::with_positions(std::vector<Vec3> positions) const {
  if (positions.size() != positions_.size())
    throw Error(ErrorCode::InvalidMesh, "position count mismatch");
  HalfEdgeMesh m = *this;
  m.positions_ = std::move(positions);
  return m;
}

void HalfEdgeMesh::check_invariants() const {
  for (Index h = 0; h < halfedge_count(); ++h) {
    if (twin_[h] != kInvalid) {
      if (twin_[twin_[h]] != h) throw Error(ErrorCode::InvalidMesh, "twin not involutive");
      if (origin(h) != head(twin_[h]) || head(h) != origin(twin_[h]))
        throw Error(ErrorCode::InvalidMesh, "twin endpoints mismatch");
    }
    Index g = h;
    for (int i = 0; i < arity_; ++i) g = next(g);
    if (g != h) throw Error(ErrorCode::InvalidMesh, "face not closed in arity steps");
  }
  for (Index v = 0; v < vertex_count(); ++v) {
    if (static_cast<int>(star(v).size()) != valence_[v])
      throw Error(ErrorCode::InvalidMesh, "fan size mismatch");
  }
}

}  // namespace subdivqi
