#include "subdivqi/weights.hpp"

namespace subdivqi {

namespace {

void check_valence(int n) {
  if (n < 3) throw Error(ErrorCode::UnsupportedValence, "valence must be >= 3");
}

}  // namespace

Eigen::VectorXd WeightProfile::expand() const {
  const int n = valence;
  if (scheme == SchemeKind::CatmullClark) {
    Eigen::VectorXd out(6 * n + 1);
    out[0] = w[0];
    for (int j = 0; j < n; ++j) {
      // slots per sector: spoke mid, ring vertex, centroid, two ring mids,
      // diagonal vertex
      out[1 + 6 * j + 0] = w[1];
      out[1 + 6 * j + 1] = w[2];
      out[1 + 6 * j + 2] = w[3];
      out[1 + 6 * j + 3] = w[4];
      out[1 + 6 * j + 4] = w[4];
      out[1 + 6 * j + 5] = w[5];
    }
    return out;
  }
  Eigen::VectorXd out(3 * n + 1);
  out[0] = w[0];
  for (int j = 0; j < n; ++j) {
    out[1 + 3 * j + 0] = w[1];
    out[1 + 3 * j + 1] = w[2];
    out[1 + 3 * j + 2] = w[3];
  }
  return out;
}

std::vector<int> WeightProfile::orbit_sizes() const {
  const int n = valence;
  if (scheme == SchemeKind::CatmullClark) return {1, n, n, n, 2 * n, n};
  return {1, n, n, n};
}

WeightProfile weights_cc(int n) {
  check_valence(n);
  double den = double(n) * (739.0 * n * n - 2717.0 * n + 1960.0);
  double w6 = 18.0 * (5.0 * n - 2.0) / den;
  double w3 = 18.0 * (91.0 * n - 4.0) / den;
  double w5 = -8.0 * w6;
  double w2 = -8.0 * w3;
  double w4 = 64.0 * w6;
  double w1 = 1.0 - n * (49.0 * w6 - 7.0 * w3);
  return {SchemeKind::CatmullClark, n, {w1, w2, w3, w4, w5, w6}};
}

namespace {

WeightProfile tri_weights(SchemeKind kind, int n, double alpha, double beta, double p1,
                          double p2, double p3) {
  double w3 = -96.0 * beta / (p1 * alpha * alpha + p2 * alpha + p3);
  double w2 = 32.0 * w3;
  double w4 = -8.0 * w3;
  double w1 = 1.0 - 25.0 * n * w3;
  return {kind, n, {w1, w2, w3, w4}};
}

}  // namespace

WeightProfile weights_loop(int n) {
  check_valence(n);
  double beta = loop_beta(n);
  double alpha = 1.0 - n * beta;
  // same polynomials as the modified scheme evaluated at gamma = 3/8; the
  // quotient reduces to -48 beta / (128 a^2 + 200 a - 67)
  WeightProfile p = tri_weights(SchemeKind::Loop, n, alpha, beta, 256.0, 400.0, -134.0);
  return p;
}

WeightProfile weights_mloop(int n, const MLoopMasks& masks) {
  check_valence(n);
  if (n == 6) {
    // valence 6 is regular: the modified rules never fire there
    WeightProfile p = weights_loop(6);
    p.scheme = SchemeKind::ModifiedLoop;
    return p;
  }
  const MLoopValenceMasks& m = masks.at(n);
  double x = m.gamma;
  double p1 = 256.0 * x + 160.0;
  double p2 = -512.0 * x * x + 1608.0 * x - 131.0;
  double p3 = 256.0 * x * x * x - 1768.0 * x * x + 347.0 * x - 29.0;
  return tri_weights(SchemeKind::ModifiedLoop, n, m.alpha, m.beta, p1, p2, p3);
}

WeightProfile closed_form_weights(const SchemeId& scheme, int n) {
  switch (scheme.kind) {
    case SchemeKind::CatmullClark: return weights_cc(n);
    case SchemeKind::Loop: return weights_loop(n);
    case SchemeKind::ModifiedLoop:
      if (n == scheme.regular_valence()) return weights_loop(n);
      if (!scheme.masks) throw Error(ErrorCode::MaskMissing, "modified loop requires masks");
      return weights_mloop(n, *scheme.masks);
  }
  throw Error(ErrorCode::InvalidMesh, "unknown scheme");
}

RowSolver::RowSolver(Mat A) : A_(std::move(A)), lu_of_transpose_(A_.transpose()) {
  if (A_.rows() != A_.cols())
    throw Error(ErrorCode::SingularSystem, "system matrix must be square");
  if (lu_of_transpose_.rcond() < 1e-12)
    throw Error(ErrorCode::SingularSystem, "system matrix numerically singular");
}

Eigen::VectorXd RowSolver::row(int k) const {
  Eigen::VectorXd ek = Eigen::VectorXd::Zero(A_.rows());
  ek[k] = 1.0;
  Eigen::VectorXd w = lu_of_transpose_.solve(ek);
  double residual = ((w.transpose() * A_).transpose() - ek).lpNorm<Eigen::Infinity>();
  if (residual > 1e-10)
    throw Error(ErrorCode::SingularSystem,
                "row solve residual " + std::to_string(residual) + " exceeds 1e-10");
  return w;
}

Eigen::VectorXd solve_row(const Mat& A, int k) { return RowSolver(A).row(k); }

}  // namespace subdivqi
