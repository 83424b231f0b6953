#include "subdivqi/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <nlohmann/json.hpp>

namespace subdivqi {

double test_function(const Vec3& p) {
  return std::exp(-6.0 * (p.x() * p.x() + p.y() * p.y()));
}

MeshFamily family_of(const SchemeId& scheme) {
  return scheme.kind == SchemeKind::CatmullClark ? MeshFamily::Quad : MeshFamily::Tri;
}

PolyMesh make_test_mesh(MeshFamily family, int ep_valence, int rings) {
  if (ep_valence < 3 || ep_valence > 8)
    throw Error(ErrorCode::UnsupportedValence,
                "test meshes cover valences 3..8 (got " + std::to_string(ep_valence) + ")");
  return fan_mesh(family == MeshFamily::Quad ? 4 : 3, ep_valence, rings);
}

PolyMesh make_quad_grid(int cells_x, int cells_y, double extent) {
  if (cells_x < 1 || cells_y < 1)
    throw Error(ErrorCode::InvalidMesh, "grid needs at least one cell");
  PolyMesh mesh;
  mesh.arity = 4;
  auto vid = [&](int i, int j) { return Index(j * (cells_x + 1) + i); };
  for (int j = 0; j <= cells_y; ++j)
    for (int i = 0; i <= cells_x; ++i)
      mesh.positions.emplace_back(extent * (2.0 * i / cells_x - 1.0),
                                  extent * (2.0 * j / cells_y - 1.0), 0.0);
  for (int j = 0; j < cells_y; ++j)
    for (int i = 0; i < cells_x; ++i)
      mesh.add_face({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
  return mesh;
}

PolyMesh make_tri_grid(int cells_x, int cells_y, double extent) {
  if (cells_x < 1 || cells_y < 1)
    throw Error(ErrorCode::InvalidMesh, "grid needs at least one cell");
  PolyMesh mesh;
  mesh.arity = 3;
  auto vid = [&](int i, int j) { return Index(j * (cells_x + 1) + i); };
  for (int j = 0; j <= cells_y; ++j)
    for (int i = 0; i <= cells_x; ++i)
      mesh.positions.emplace_back(extent * (2.0 * i / cells_x - 1.0),
                                  extent * (2.0 * j / cells_y - 1.0), 0.0);
  for (int j = 0; j < cells_y; ++j)
    for (int i = 0; i < cells_x; ++i) {
      mesh.add_face({vid(i, j), vid(i + 1, j), vid(i, j + 1)});
      mesh.add_face({vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  return mesh;
}

SampleSet dense_samples(const HalfEdgeMesh& mesh, const Eigen::VectorXd& coefficients,
                        const SchemeId& scheme, int extra_levels) {
  if (extra_levels < 0)
    throw Error(ErrorCode::InvalidMesh, "sampling depth must be >= 0");
  if (coefficients.size() != static_cast<Eigen::Index>(mesh.vertex_count()))
    throw Error(ErrorCode::InvalidMesh, "coefficient count mismatch");

  std::vector<bool> base_active = active_faces(mesh);

  HalfEdgeMesh fine = mesh;
  Channels values(mesh.vertex_count(), 1);
  values.col(0) = coefficients;
  for (int k = 0; k < extra_levels; ++k) {
    RefineResult r = refine(fine, values, scheme);
    fine = std::move(r.mesh);
    values = std::move(r.channels);
  }

  // active fine faces are the descendants of active base faces (children are
  // emitted in blocks of 4 per parent, so ancestry is index arithmetic)
  const Index shift = 2 * extra_levels;
  auto is_active = [&](Index f) { return base_active[f >> shift]; };

  Channels limit_vals = limit_positions(fine, values, scheme);
  Channels limit_pos = limit_positions(fine, fine.position_channels(), scheme);

  const int arity = fine.arity();
  Eigen::VectorXd weight = Eigen::VectorXd::Zero(fine.vertex_count());
  for (Index f = 0; f < fine.face_count(); ++f) {
    if (!is_active(f)) continue;
    std::vector<Index> fv = fine.face_vertex_list(f);
    double area = 0.0;
    // polygon area from the limit positions (planar surfaces have z = 0;
    // general surfaces use the triangulated magnitude)
    Vec3 p0 = limit_pos.row(fv[0]).head<3>().transpose();
    for (int c = 1; c + 1 < arity; ++c) {
      Vec3 p1 = limit_pos.row(fv[c]).head<3>().transpose();
      Vec3 p2 = limit_pos.row(fv[c + 1]).head<3>().transpose();
      area += 0.5 * (p1 - p0).cross(p2 - p0).norm();
    }
    for (Index v : fv) weight[v] += area / arity;
  }

  SampleSet out;
  for (Index v = 0; v < fine.vertex_count(); ++v) {
    if (weight[v] <= 0.0) continue;
    out.points.emplace_back(limit_pos(v, 0), limit_pos(v, 1), limit_pos(v, 2));
  }
  out.values.resize(out.points.size());
  out.weights.resize(out.points.size());
  Eigen::Index i = 0;
  for (Index v = 0; v < fine.vertex_count(); ++v) {
    if (weight[v] <= 0.0) continue;
    out.values[i] = limit_vals(v, 0);
    out.weights[i] = weight[v];
    ++i;
  }
  return out;
}

ErrorPair errors(const Eigen::VectorXd& qi_coefficients,
                 const std::function<double(const Vec3&)>& f, const HalfEdgeMesh& mesh,
                 const SchemeId& scheme, int extra_levels) {
  SampleSet s = dense_samples(mesh, qi_coefficients, scheme, extra_levels);
  double num2 = 0, den2 = 0, numi = 0, deni = 0;
  for (Eigen::Index i = 0; i < s.values.size(); ++i) {
    double fx = f(s.points[i]);
    double diff = s.values[i] - fx;
    num2 += s.weights[i] * diff * diff;
    den2 += s.weights[i] * fx * fx;
    numi = std::max(numi, std::abs(diff));
    deni = std::max(deni, std::abs(fx));
  }
  if (den2 <= 0.0 || deni <= 0.0)
    throw Error(ErrorCode::DegenerateFunction, "reference function has zero norm");
  return {std::sqrt(num2 / den2), numi / deni};
}

double step_order(double e_prev, double e_next) {
  if (e_prev <= 0.0 || e_next <= 0.0)
    throw Error(ErrorCode::DegenerateFunction, "orders need positive errors");
  return std::log2(e_prev / e_next);
}

double fitted_order(const std::vector<int>& levels, const std::vector<double>& errs) {
  if (levels.size() != errs.size() || levels.size() < 2)
    throw Error(ErrorCode::InvalidMesh, "order fit needs matching level/error lists");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    double x = levels[i];
    double y = std::log2(errs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return -slope;  // error halvings per level
}

ConvergenceReport convergence_study(const SchemeId& scheme, int valence,
                                    const std::vector<int>& levels, int sampling_depth,
                                    int rings) {
  if (levels.size() < 3)
    throw Error(ErrorCode::InvalidMesh, "convergence study needs at least 3 levels");
  if (sampling_depth < 1)
    throw Error(ErrorCode::InvalidMesh, "sampling depth must be >= 1");
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (levels[i] != levels[i - 1] + 1)
      throw Error(ErrorCode::InvalidMesh, "levels must be consecutive");

  PolyMesh base = make_test_mesh(family_of(scheme), valence, rings);
  base = ensure_separated_eps(base, scheme);
  HalfEdgeMesh mesh = HalfEdgeMesh::build(base);

  double h0 = 0;
  for (Index e = 0; e < mesh.edge_count(); ++e) {
    auto [a, b] = mesh.edge_vertices(e);
    h0 = std::max(h0, (mesh.position(a) - mesh.position(b)).norm());
  }

  ConvergenceReport report;
  report.scheme = scheme.kind;
  report.family = family_of(scheme);
  report.valence = valence;
  report.sampling_depth = sampling_depth;

  int current = 0;
  for (int level : levels) {
    while (current < level) {
      mesh = refine(mesh, scheme).mesh;
      ++current;
    }
    QuasiInterpolant qi = build(mesh, scheme);
    Eigen::VectorXd coeffs = qi.apply(test_function);
    ErrorPair e = errors(coeffs, test_function, mesh, scheme, sampling_depth);
    ConvergenceLevel row;
    row.level = level;
    row.h = h0 / std::pow(2.0, level);
    row.e2 = e.e2;
    row.einf = e.einf;
    if (!report.levels.empty()) {
      row.order2 = step_order(report.levels.back().e2, e.e2);
      row.order_inf = step_order(report.levels.back().einf, e.einf);
    }
    report.levels.push_back(row);
  }

  std::vector<int> lv;
  std::vector<double> e2s, einfs;
  for (const ConvergenceLevel& row : report.levels) {
    lv.push_back(row.level);
    e2s.push_back(row.e2);
    einfs.push_back(row.einf);
  }
  report.fitted_order2 = fitted_order(lv, e2s);
  report.fitted_order_inf = fitted_order(lv, einfs);
  return report;
}

void ConvergenceReport::write_csv(std::ostream& out) const {
  out << "level,h,E2,Einf,order2,orderInf\n";
  char buf[256];
  for (const ConvergenceLevel& row : levels) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g", row.level, row.h, row.e2,
                  row.einf);
    out << buf;
    if (std::isnan(row.order2))
      out << ",,";
    else {
      std::snprintf(buf, sizeof buf, ",%.17g,%.17g", row.order2, row.order_inf);
      out << buf;
    }
    out << '\n';
  }
}

nlohmann::json ConvergenceReport::to_json() const {
  nlohmann::json doc;
  doc["scheme"] = scheme_name(scheme);
  doc["family"] = family == MeshFamily::Quad ? "quad" : "tri";
  doc["valence"] = valence;
  doc["sampling_depth"] = sampling_depth;
  doc["fitted_order_l2"] = fitted_order2;
  doc["fitted_order_linf"] = fitted_order_inf;
  nlohmann::json rows = nlohmann::json::array();
  for (const ConvergenceLevel& row : levels) {
    nlohmann::json jr;
    jr["level"] = row.level;
    jr["h"] = row.h;
    jr["e2"] = row.e2;
    jr["einf"] = row.einf;
    if (!std::isnan(row.order2)) {
      jr["order2"] = row.order2;
      jr["order_inf"] = row.order_inf;
    }
    rows.push_back(std::move(jr));
  }
  doc["levels"] = std::move(rows);
  return doc;
}

}  // namespace subdivqi
