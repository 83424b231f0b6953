#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "subdivqi/projector.hpp"

namespace subdivqi {

/// Benchmark field of the convergence experiments (z is ignored).
double test_function(const Vec3& p);

enum class MeshFamily { Quad, Tri };

MeshFamily family_of(const SchemeId& scheme);

/// Planar disk mesh with exactly one interior vertex of the given valence at
/// the origin and the requested number of regular rings (>= 3 rings keeps all
/// boundary and adjacent-to-Ep cases present). Valence 4 (quad) / 6 (tri)
/// yields a fully regular mesh. Supported valences: 3..8.
PolyMesh make_test_mesh(MeshFamily family, int ep_valence, int rings = 4);

/// Regular grids for tests and demos; the triangle grid splits every cell
/// with the same diagonal, which produces the two corner configurations that
/// need the 21-point system.
PolyMesh make_quad_grid(int cells_x, int cells_y, double extent = 1.0);
PolyMesh make_tri_grid(int cells_x, int cells_y, double extent = 1.0);

/// Dense limit-surface samples over the active region: refine geometry and
/// values k extra times, push to the limit, and attach vertex quadrature
/// weights (incident active fine-face areas over the face arity).
struct SampleSet {
  std::vector<Vec3> points;
  Eigen::VectorXd values;
  Eigen::VectorXd weights;

  double total_weight() const { return weights.sum(); }
};

SampleSet dense_samples(const HalfEdgeMesh& mesh, const Eigen::VectorXd& coefficients,
                        const SchemeId& scheme, int extra_levels);

/// Relative L2 / Linf errors of the coefficient net against f, both sampled
/// at the limit positions of the k-times refined geometry (Linf over the
/// sample set, L2 with the vertex quadrature weights).
struct ErrorPair {
  double e2 = 0;
  double einf = 0;
};

ErrorPair errors(const Eigen::VectorXd& qi_coefficients,
                 const std::function<double(const Vec3&)>& f, const HalfEdgeMesh& mesh,
                 const SchemeId& scheme, int extra_levels);

struct ConvergenceLevel {
  int level = 0;
  double h = 0;
  double e2 = 0;
  double einf = 0;
  double order2 = std::numeric_limits<double>::quiet_NaN();   // vs previous level
  double order_inf = std::numeric_limits<double>::quiet_NaN();
};

struct ConvergenceReport {
  SchemeKind scheme;
  MeshFamily family;
  int valence = 0;
  int sampling_depth = 0;
  std::vector<ConvergenceLevel> levels;
  double fitted_order2 = 0;    // least-squares slope of log2 e over levels
  double fitted_order_inf = 0;

  void write_csv(std::ostream& out) const;
  nlohmann::json to_json() const;
};

/// Per-level experiment: refine the initial test mesh `level` times, build
/// the projector, apply it to the test function and measure the errors at
/// fixed extra sampling depth.
ConvergenceReport convergence_study(const SchemeId& scheme, int valence,
                                    const std::vector<int>& levels, int sampling_depth,
                                    int rings = 4);

/// Consecutive-level order estimate log2(e_prev / e_next).
double step_order(double e_prev, double e_next);

/// Least-squares slope of log2(e) against the level index.
double fitted_order(const std::vector<int>& levels, const std::vector<double>& errors);

}  // namespace subdivqi
