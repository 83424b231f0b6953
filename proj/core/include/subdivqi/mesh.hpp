#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "subdivqi/errors.hpp"

namespace subdivqi {

using Index = std::uint32_t;
inline constexpr Index kInvalid = 0xffffffffu;

using Vec3 = Eigen::Vector3d;

// Per-vertex data channels (positions are channels 0..2, extra payload after).
using Channels = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Indexed polygon mesh with homogeneous face arity (3 or 4).
struct PolyMesh {
  int arity = 0;
  std::vector<Vec3> positions;
  std::vector<Index> face_vertices;  // arity entries per face

  Index vertex_count() const { return static_cast<Index>(positions.size()); }
  Index face_count() const {
    return arity == 0 ? 0 : static_cast<Index>(face_vertices.size() / arity);
  }
  const Index* face(Index f) const { return face_vertices.data() + std::size_t(f) * arity; }
  void add_face(std::initializer_list<Index> vs) {
    face_vertices.insert(face_vertices.end(), vs.begin(), vs.end());
  }
};

PolyMesh load_obj(std::istream& in);
PolyMesh load_obj_file(const std::string& path);
void save_obj(const PolyMesh& mesh, std::ostream& out);
void save_obj_file(const PolyMesh& mesh, const std::string& path);

/// Half-edge connectivity over a homogeneous polygon mesh.
///
/// Halfedges are stored face-contiguous: halfedge h belongs to face h/arity
/// and runs from origin(h) to origin(next(h)); next/prev are index arithmetic.
/// Boundary edges carry a single halfedge whose twin is kInvalid. The mesh is
/// immutable after build(), so all queries are safe for concurrent use.
class HalfEdgeMesh {
public:
  HalfEdgeMesh() = default;

  /// Validates indices, arity, orientability and manifoldness (throws Error).
  static HalfEdgeMesh build(const PolyMesh& poly);

  int arity() const { return arity_; }
  Index vertex_count() const { return static_cast<Index>(positions_.size()); }
  Index face_count() const { return static_cast<Index>(origin_.size() / arity_); }
  Index halfedge_count() const { return static_cast<Index>(origin_.size()); }
  Index edge_count() const { return static_cast<Index>(edge_he_.size()); }

  Index origin(Index h) const { return origin_[h]; }
  Index head(Index h) const { return origin_[next(h)]; }
  Index twin(Index h) const { return twin_[h]; }
  Index next(Index h) const {
    Index f = h / arity_;
    Index c = h - f * arity_;
    return c + 1 == static_cast<Index>(arity_) ? f * arity_ : h + 1;
  }
  Index prev(Index h) const {
    Index f = h / arity_;
    Index c = h - f * arity_;
    return c == 0 ? f * arity_ + arity_ - 1 : h - 1;
  }
  Index face_of(Index h) const { return h / arity_; }
  Index he_of_face(Index f) const { return f * arity_; }
  Index out_he(Index v) const { return vertex_he_[v]; }

  /// Rotate an outgoing halfedge counterclockwise around its origin
  /// (kInvalid once the fan leaves the mesh at a boundary).
  Index rotate_ccw(Index h) const {
    Index p = prev(h);
    return twin_[p];
  }
  Index rotate_cw(Index h) const {
    Index t = twin_[h];
    return t == kInvalid ? kInvalid : next(t);
  }

  bool is_boundary_he(Index h) const { return twin_[h] == kInvalid; }
  bool is_boundary_vertex(Index v) const { return boundary_vertex_[v]; }

  /// Number of incident faces.
  int valence(Index v) const { return valence_[v]; }

  /// Outgoing halfedges in CCW order; complete fan also for boundary vertices.
  std::vector<Index> star(Index v) const;
  /// Edge-neighbor vertices in CCW order (star heads).
  std::vector<Index> neighbors(Index v) const;
  /// For a boundary vertex, its two neighbors along the boundary polyline.
  std::array<Index, 2> boundary_neighbors(Index v) const;

  Index edge_id(Index h) const { return he_edge_[h]; }
  Index he_of_edge(Index e) const { return edge_he_[e]; }
  std::array<Index, 2> edge_vertices(Index e) const {
    Index h = edge_he_[e];
    return {origin(h), head(h)};
  }
  bool is_boundary_edge(Index e) const { return twin_[edge_he_[e]] == kInvalid; }

  const std::vector<Vec3>& positions() const { return positions_; }
  const Vec3& position(Index v) const { return positions_[v]; }
  Channels position_channels() const;

  std::vector<Index> face_vertex_list(Index f) const;
  PolyMesh to_poly() const;

  /// With positions replaced (same connectivity).
  HalfEdgeMesh with_positions(std::vector<Vec3> positions) const;

  /// Structural self-checks (twin involution, face closure, fans). Test aid.
  void check_invariants() const;

private:
  int arity_ = 0;
  std::vector<Vec3> positions_;
  std::vector<Index> origin_;
  std::vector<Index> twin_;
  std::vector<Index> he_edge_;
  std::vector<Index> edge_he_;     // canonical halfedge per undirected edge
  std::vector<Index> vertex_he_;   // boundary-start outgoing halfedge
  std::vector<int> valence_;
  std::vector<bool> boundary_vertex_;
};

}  // namespace subdivqi
