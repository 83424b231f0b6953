#pragma once

#include <Eigen/Dense>

#include "subdivqi/local_system.hpp"
#include "subdivqi/schemes.hpp"

namespace subdivqi {

/// Distinct functional weights and their assignment to interpolation slots.
///
/// Quad scheme (six classes):  w1 center, w2 spoke edge midpoints, w3 ring
/// vertices, w4 face centroids, w5 ring edge midpoints, w6 diagonal vertices.
/// Triangle schemes (four):    w1 center, w2 spoke edge midpoints, w3 ring
/// vertices, w4 ring edge midpoints.
struct WeightProfile {
  SchemeKind scheme;
  int valence = 0;
  std::vector<double> w;  // w[0] = w1, ...

  /// Full weight vector over the interpolation slots, in interp_entities()
  /// row order (size 6n+1 for quads, 3n+1 for triangles).
  Eigen::VectorXd expand() const;
  /// Orbit sizes matching w.
  std::vector<int> orbit_sizes() const;
};

WeightProfile weights_cc(int n);
WeightProfile weights_loop(int n);
WeightProfile weights_mloop(int n, const MLoopMasks& masks);
WeightProfile closed_form_weights(const SchemeId& scheme, int n);

/// Row k of A^{-1}: the vector w with w * A = e_k. Throws SingularSystem when
/// the reciprocal condition estimate falls below 1e-12 or the residual
/// ||w*A - e_k||_inf exceeds 1e-10.
Eigen::VectorXd solve_row(const Mat& A, int k);

/// Shared LU so many rows of one system are cheap.
class RowSolver {
public:
  explicit RowSolver(Mat A);
  Eigen::VectorXd row(int k) const;
  const Mat& matrix() const { return A_; }

private:
  Mat A_;
  Eigen::PartialPivLU<Mat> lu_of_transpose_;
};

}  // namespace subdivqi
