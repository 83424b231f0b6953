#pragma once

#include <Eigen/Dense>

#include "subdivqi/rational.hpp"
#include "subdivqi/schemes.hpp"

namespace subdivqi {

using Mat = Eigen::MatrixXd;

/// The per-valence local interpolation system in sector ordering.
///
/// Columns of S (and of A) are the control points of the two-ring window
/// around a valence-n vertex: the center first, then per sector the window
/// points as produced by control_window(). Rows of S are the once-refined
/// points tracked by the blocks; rows of L (and of A) are the interpolation
/// points as produced by interp_entities(). Every row of S, L, A sums to 1,
/// and A = L * S.
struct LocalSystem {
  SchemeKind scheme;
  int valence = 0;
  Mat S;
  Mat L;
  Mat A;

  int window_size() const { return static_cast<int>(A.cols()); }
};

LocalSystem local_system(const SchemeId& scheme, int n);
Mat local_S(const SchemeId& scheme, int n);
Mat local_L(const SchemeId& scheme, int n);
Mat local_A(const SchemeId& scheme, int n);

/// Exact rational assembly where the masks are rational: the quad scheme at
/// any valence, the triangle scheme at its regular valence 6.
FracMat local_S_exact(SchemeKind kind, int n);
FracMat local_L_exact(SchemeKind kind, int n);
FracMat local_A_exact(SchemeKind kind, int n);

/// Independent construction of A on an explicit local mesh: refine unit
/// coefficient vectors once and read limit values at the interpolation
/// entities. Agrees with local_A entrywise up to roundoff.
Mat oracle_A(const SchemeId& scheme, int n);

/// The univariate cubic analogue: 7x5 refinement matrix, 5x7 limit-position
/// matrix, and their 5x5 product.
FracMat cubic_bspline_S_exact();
FracMat cubic_bspline_L_exact();
FracMat cubic_bspline_A_exact();
Mat cubic_bspline_A();

/// 21x21 interpolation system for the triangle-mesh corner configuration
/// where no interior target exists (prefactor 1/192).
FracMat corner_system_exact();
const Mat& corner_system();

/// Internal fan generator behind make_test_mesh and oracle_A: planar disk
/// with one center vertex of the given valence and the given number of
/// regular rings; any valence >= 3.
PolyMesh fan_mesh(int face_arity, int valence, int rings);

}  // namespace subdivqi
