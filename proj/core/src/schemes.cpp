#include "subdivqi/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

namespace subdivqi {

const char* scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::CatmullClark: return "cc";
    case SchemeKind::Loop: return "loop";
    case SchemeKind::ModifiedLoop: return "mloop";
  }
  return "?";
}

SchemeKind scheme_from_name(const std::string& name) {
  if (name == "cc" || name == "catmull-clark") return SchemeKind::CatmullClark;
  if (name == "loop") return SchemeKind::Loop;
  if (name == "mloop" || name == "modified-loop") return SchemeKind::ModifiedLoop;
  throw Error(ErrorCode::Io, "unknown scheme '" + name + "' (expected cc|loop|mloop)");
}

double loop_beta(int n) {
  double c = 3.0 / 8.0 + 0.25 * std::cos(2.0 * M_PI / n);
  return (5.0 / 8.0 - c * c) / n;
}

double loop_alpha(int n) { return 1.0 - n * loop_beta(n); }

double loop_tau(int n) { return 1.0 / (3.0 / (8.0 * loop_beta(n)) + n); }

double mloop_tau(const MLoopValenceMasks& m, int n) {
  return 1.0 / (m.gamma / m.beta + n);
}

const MLoopValenceMasks& MLoopMasks::at(int n) const {
  auto it = valences.find(n);
  if (it == valences.end())
    throw Error(ErrorCode::MaskMissing,
                "no modified-loop masks for valence " + std::to_string(n));
  return it->second;
}

void MLoopMasks::validate() const {
  const double tol = 1e-12;
  for (const auto& [n, m] : valences) {
    if (n < 3) throw Error(ErrorCode::InvalidMasks, "mask valence must be >= 3");
    if (static_cast<int>(m.gamma_j.size()) != n)
      throw Error(ErrorCode::InvalidMasks,
                  "gamma_j must have exactly n entries for valence " + std::to_string(n));
    if (m.beta == 0.0)
      throw Error(ErrorCode::InvalidMasks, "beta must be nonzero");
    if (std::abs(m.alpha + n * m.beta - 1.0) > tol)
      throw Error(ErrorCode::InvalidMasks,
                  "alpha + n*beta must equal 1 (affine vertex mask), valence " +
                      std::to_string(n));
    double s = m.gamma;
    for (double g : m.gamma_j) s += g;
    if (std::abs(s - 1.0) > tol)
      throw Error(ErrorCode::InvalidMasks,
                  "gamma + sum(gamma_j) must equal 1 (affine edge mask), valence " +
                      std::to_string(n));
  }
}

MLoopMasks MLoopMasks::loop_equivalent(int min_n, int max_n) {
  MLoopMasks table;
  for (int n = min_n; n <= max_n; ++n) {
    MLoopValenceMasks m;
    m.beta = loop_beta(n);
    m.alpha = 1.0 - n * m.beta;
    m.gamma = 3.0 / 8.0;
    m.gamma_j.assign(n, 0.0);
    m.gamma_j[0] = 3.0 / 8.0;
    m.gamma_j[1] = 1.0 / 8.0;
    m.gamma_j[n - 1] = 1.0 / 8.0;
    table.valences[n] = std::move(m);
    // subdominant eigenvalue of the plain Loop scheme at this valence
    table.lambda = 3.0 / 8.0 + 0.25 * std::cos(2.0 * M_PI / min_n);
  }
  table.validate();
  return table;
}

MLoopMasks MLoopMasks::from_json(const nlohmann::json& doc) {
  MLoopMasks table;
  try {
    table.lambda = doc.value("lambda", 0.0);
    const auto& vs = doc.at("valences");
    for (auto it = vs.begin(); it != vs.end(); ++it) {
      int n = std::stoi(it.key());
      MLoopValenceMasks m;
      m.alpha = it.value().at("alpha").get<double>();
      m.beta = it.value().at("beta").get<double>();
      m.gamma = it.value().at("gamma").get<double>();
      m.gamma_j = it.value().at("gamma_j").get<std::vector<double>>();
      table.valences[n] = std::move(m);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidMasks, std::string("malformed mask table: ") + e.what());
  }
  table.validate();
  return table;
}

MLoopMasks MLoopMasks::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  nlohmann::json doc;
  in >> doc;
  return from_json(doc);
}

nlohmann::json MLoopMasks::to_json() const {
  nlohmann::json doc;
  doc["lambda"] = lambda;
  nlohmann::json vs;
  for (const auto& [n, m] : valences) {
    nlohmann::json jm;
    jm["alpha"] = m.alpha;
    jm["beta"] = m.beta;
    jm["gamma"] = m.gamma;
    jm["gamma_j"] = m.gamma_j;
    vs[std::to_string(n)] = jm;
  }
  doc["valences"] = vs;
  return doc;
}

namespace {

using RowRef = Eigen::Block<Channels, 1, Eigen::Dynamic>;

bool is_ep(const HalfEdgeMesh& mesh, Index v, const SchemeId& scheme) {
  if (mesh.is_boundary_vertex(v)) return false;
  return mesh.valence(v) != scheme.regular_valence();
}

// Ring of an extraordinary vertex, CCW, rotated so ring[0] == start.
std::vector<Index> ring_from(const HalfEdgeMesh& mesh, Index ep, Index start) {
  std::vector<Index> ring = mesh.neighbors(ep);
  auto it = std::find(ring.begin(), ring.end(), start);
  if (it == ring.end())
    throw Error(ErrorCode::InvalidMesh, "edge endpoint missing from vertex ring");
  std::rotate(ring.begin(), it, ring.end());
  return ring;
}

// Modified edge rule around an extraordinary vertex: gamma on the center,
// gamma_j CCW around the ring starting at the far endpoint of the edge.
Eigen::RowVectorXd mloop_edge_point(const HalfEdgeMesh& mesh, const Channels& data,
                                    Index ep, Index far, const MLoopMasks& masks) {
  int n = mesh.valence(ep);
  const MLoopValenceMasks& m = masks.at(n);
  std::vector<Index> ring = ring_from(mesh, ep, far);
  Eigen::RowVectorXd out = m.gamma * data.row(ep);
  for (int j = 0; j < n; ++j) out += m.gamma_j[j] * data.row(ring[j]);
  return out;
}

Eigen::RowVectorXd loop_edge_point(const HalfEdgeMesh& mesh, const Channels& data, Index h) {
  Index t = mesh.twin(h);
  Index a = mesh.origin(h), b = mesh.head(h);
  Index c = mesh.origin(mesh.prev(h));
  Index d = mesh.origin(mesh.prev(t));
  return 0.375 * (data.row(a) + data.row(b)) + 0.125 * (data.row(c) + data.row(d));
}

Eigen::RowVectorXd boundary_vertex_update(const HalfEdgeMesh& mesh, const Channels& data,
                                          Index v) {
  auto nb = mesh.boundary_neighbors(v);
  return (data.row(nb[0]) + 6.0 * data.row(v) + data.row(nb[1])) / 8.0;
}

}  // namespace

RefineResult refine(const HalfEdgeMesh& mesh, const Channels& extra, const SchemeId& scheme) {
  if (mesh.arity() != scheme.face_arity())
    throw Error(ErrorCode::InvalidMesh, "mesh arity does not match scheme");
  if (extra.rows() != static_cast<Eigen::Index>(mesh.vertex_count()))
    throw Error(ErrorCode::InvalidMesh, "channel row count mismatch");
  if (scheme.kind == SchemeKind::ModifiedLoop && !scheme.masks)
    throw Error(ErrorCode::MaskMissing, "modified loop requires a mask table");

  const Index nv = mesh.vertex_count();
  const Index ne = mesh.edge_count();
  const Index nf = mesh.face_count();
  const int arity = mesh.arity();
  const bool quad = arity == 4;

  const int nch = 3 + static_cast<int>(extra.cols());
  Channels data(nv, nch);
  for (Index v = 0; v < nv; ++v) {
    data.row(v).head<3>() = mesh.position(v).transpose();
    if (extra.cols() > 0) data.row(v).tail(extra.cols()) = extra.row(v);
  }

  const Index out_nv = nv + ne + (quad ? nf : 0);
  Channels out(out_nv, nch);

  // face points (quads)
  if (quad) {
    for (Index f = 0; f < nf; ++f) {
      Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(nch);
      for (int c = 0; c < 4; ++c) acc += data.row(mesh.origin(mesh.he_of_face(f) + c));
      out.row(nv + ne + f) = acc / 4.0;
    }
  }

  // edge points
  for (Index e = 0; e < ne; ++e) {
    Index h = mesh.he_of_edge(e);
    Index a = mesh.origin(h), b = mesh.head(h);
    if (mesh.is_boundary_edge(e)) {
      out.row(nv + e) = 0.5 * (data.row(a) + data.row(b));
      continue;
    }
    if (quad) {
      Index f0 = mesh.face_of(h), f1 = mesh.face_of(mesh.twin(h));
      out.row(nv + e) = 0.25 * (data.row(a) + data.row(b) + out.row(nv + ne + f0) +
                                out.row(nv + ne + f1));
    } else if (scheme.kind == SchemeKind::ModifiedLoop) {
      bool ea = is_ep(mesh, a, scheme), eb = is_ep(mesh, b, scheme);
      if (ea && !eb)
        out.row(nv + e) = mloop_edge_point(mesh, data, a, b, *scheme.masks);
      else if (eb && !ea)
        out.row(nv + e) = mloop_edge_point(mesh, data, b, a, *scheme.masks);
      else
        // base rule; with two adjacent extraordinary vertices the ring rule
        // is ill-posed, so those edges keep the base rule as well
        out.row(nv + e) = loop_edge_point(mesh, data, h);
    } else {
      out.row(nv + e) = loop_edge_point(mesh, data, h);
    }
  }

  // vertex points
  for (Index v = 0; v < nv; ++v) {
    if (mesh.is_boundary_vertex(v)) {
      out.row(v) = boundary_vertex_update(mesh, data, v);
      continue;
    }
    int n = mesh.valence(v);
    if (quad) {
      Eigen::RowVectorXd esum = Eigen::RowVectorXd::Zero(nch);
      Eigen::RowVectorXd fsum = Eigen::RowVectorXd::Zero(nch);
      for (Index h : mesh.star(v)) {
        esum += data.row(mesh.head(h));
        fsum += out.row(nv + ne + mesh.face_of(h));
      }
      out.row(v) = (double(n - 2) / n) * data.row(v) + (esum + fsum) / double(n) / double(n);
    } else {
      double alpha, beta;
      if (scheme.kind == SchemeKind::ModifiedLoop && n != 6) {
        const MLoopValenceMasks& m = scheme.masks->at(n);
        alpha = m.alpha;
        beta = m.beta;
      } else {
        beta = loop_beta(n);
        alpha = 1.0 - n * beta;
      }
      Eigen::RowVectorXd esum = Eigen::RowVectorXd::Zero(nch);
      for (Index h : mesh.star(v)) esum += data.row(mesh.head(h));
      out.row(v) = alpha * data.row(v) + beta * esum;
    }
  }

  // refined connectivity: child c of face f is 4f+c, deterministically
  PolyMesh poly;
  poly.arity = arity;
  poly.positions.resize(out_nv);
  for (Index v = 0; v < out_nv; ++v) poly.positions[v] = out.row(v).head<3>().transpose();
  poly.face_vertices.reserve(std::size_t(nf) * 4 * arity);
  for (Index f = 0; f < nf; ++f) {
    Index h0 = mesh.he_of_face(f);
    if (quad) {
      Index fp = nv + ne + f;
      for (int c = 0; c < 4; ++c) {
        Index hc = h0 + c;
        Index hp = mesh.prev(hc);
        poly.add_face({mesh.origin(hc), nv + mesh.edge_id(hc), fp, nv + mesh.edge_id(hp)});
      }
    } else {
      Index e0 = nv + mesh.edge_id(h0);
      Index e1 = nv + mesh.edge_id(h0 + 1);
      Index e2 = nv + mesh.edge_id(h0 + 2);
      poly.add_face({mesh.origin(h0), e0, e2});
      poly.add_face({mesh.origin(h0 + 1), e1, e0});
      poly.add_face({mesh.origin(h0 + 2), e2, e1});
      poly.add_face({e0, e1, e2});
    }
  }

  RefineResult res;
  res.mesh = HalfEdgeMesh::build(poly);
  res.parent_vertex_count = nv;
  res.parent_edge_count = ne;
  if (extra.cols() > 0)
    res.channels = out.rightCols(extra.cols());
  else
    res.channels = Channels(out_nv, 0);
  return res;
}

namespace {

// Limit of a regular triangle-scheme vertex that has an extraordinary
// neighbor under the modified rules: one local subdivision step, then the
// regular mask on the new values.
Eigen::RowVectorXd mloop_limit_near_ep(const HalfEdgeMesh& mesh, const Channels& data,
                                       Index v, const SchemeId& scheme) {
  const MLoopMasks& masks = *scheme.masks;
  int n = mesh.valence(v);
  double beta = loop_beta(n);
  Eigen::RowVectorXd vnew = (1.0 - n * beta) * data.row(v);
  for (Index h : mesh.star(v)) vnew += beta * data.row(mesh.head(h));

  Eigen::RowVectorXd acc = 0.5 * vnew;
  for (Index h : mesh.star(v)) {
    Index w = mesh.head(h);
    Eigen::RowVectorXd ep_val;
    bool wa = is_ep(mesh, w, scheme);
    if (wa)
      ep_val = mloop_edge_point(mesh, data, w, v, masks);
    else
      ep_val = loop_edge_point(mesh, data, h);
    acc += ep_val / 12.0;
  }
  return acc;
}

}  // namespace

Channels limit_positions(const HalfEdgeMesh& mesh, const Channels& channels,
                         const SchemeId& scheme) {
  if (mesh.arity() != scheme.face_arity())
    throw Error(ErrorCode::InvalidMesh, "mesh arity does not match scheme");
  if (channels.rows() != static_cast<Eigen::Index>(mesh.vertex_count()))
    throw Error(ErrorCode::InvalidMesh, "channel row count mismatch");
  if (scheme.kind == SchemeKind::ModifiedLoop && !scheme.masks)
    throw Error(ErrorCode::MaskMissing, "modified loop requires a mask table");

  const Index nv = mesh.vertex_count();
  Channels out(nv, channels.cols());

  for (Index v = 0; v < nv; ++v) {
    if (mesh.is_boundary_vertex(v)) {
      auto nb = mesh.boundary_neighbors(v);
      out.row(v) =
          (channels.row(nb[0]) + 4.0 * channels.row(v) + channels.row(nb[1])) / 6.0;
      continue;
    }
    int n = mesh.valence(v);
    if (scheme.kind == SchemeKind::CatmullClark) {
      Eigen::RowVectorXd esum = Eigen::RowVectorXd::Zero(channels.cols());
      Eigen::RowVectorXd fsum = Eigen::RowVectorXd::Zero(channels.cols());
      for (Index h : mesh.star(v)) {
        esum += channels.row(mesh.head(h));
        fsum += channels.row(mesh.head(mesh.next(h)));  // face diagonal
      }
      out.row(v) = (double(n) * n * channels.row(v) + 4.0 * esum + fsum) /
                   (double(n) * (n + 5));
    } else if (scheme.kind == SchemeKind::Loop) {
      double tau = loop_tau(n);
      Eigen::RowVectorXd esum = Eigen::RowVectorXd::Zero(channels.cols());
      for (Index h : mesh.star(v)) esum += channels.row(mesh.head(h));
      out.row(v) = (1.0 - n * tau) * channels.row(v) + tau * esum;
    } else {
      if (n != 6) {
        const MLoopValenceMasks& m = scheme.masks->at(n);
        double tau = mloop_tau(m, n);
        Eigen::RowVectorXd esum = Eigen::RowVectorXd::Zero(channels.cols());
        for (Index h : mesh.star(v)) esum += channels.row(mesh.head(h));
        out.row(v) = (1.0 - n * tau) * channels.row(v) + tau * esum;
      } else {
        bool near_ep = false;
        for (Index h : mesh.star(v))
          if (is_ep(mesh, mesh.head(h), scheme)) near_ep = true;
        if (near_ep) {
          out.row(v) = mloop_limit_near_ep(mesh, channels, v, scheme);
        } else {
          Eigen::RowVectorXd esum = Eigen::RowVectorXd::Zero(channels.cols());
          for (Index h : mesh.star(v)) esum += channels.row(mesh.head(h));
          out.row(v) = 0.5 * channels.row(v) + esum / 12.0;
        }
      }
    }
  }
  return out;
}

}  // namespace subdivqi
