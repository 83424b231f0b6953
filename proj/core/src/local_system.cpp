#include "subdivqi/local_system.hpp"

#include <cmath>

#include "subdivqi/rings.hpp"

namespace subdivqi {

namespace {

// ---------------------------------------------------------------------------
// Block data. Sector ordering of the window columns is the one produced by
// control_window(): quad sectors (e, s, f, d1, d2, c), triangle sectors
// (e, s, m). Refined rows per sector follow the same sweep: the spoke edge
// point first, then the ring vertex update and the outward points.
// ---------------------------------------------------------------------------

template <typename T>
struct Blocks {
  int sec_ctrl, sec_ref, sec_interp;
  T s0;
  std::vector<T> s1;               // 1 x sec_ctrl
  std::vector<T> s2;               // sec_ref x 1
  std::vector<std::vector<T>> S0, S1, S2;  // sec_ref x sec_ctrl
  T l0;
  std::vector<T> l1;               // 1 x sec_ref
  std::vector<T> l2;               // sec_interp x 1
  std::vector<std::vector<T>> L0, L1, L2;  // sec_interp x sec_ref
};

template <typename T>
std::vector<std::vector<T>> scaled(const std::vector<std::vector<int>>& m, T scale) {
  std::vector<std::vector<T>> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out[i].reserve(m[i].size());
    for (int v : m[i]) out[i].push_back(T(v) * scale);
  }
  return out;
}

template <typename T>
std::vector<T> scaled_row(const std::vector<int>& m, T scale) {
  std::vector<T> out;
  out.reserve(m.size());
  for (int v : m) out.push_back(T(v) * scale);
  return out;
}

template <typename T>
std::vector<std::vector<T>> transposed(const std::vector<std::vector<T>>& m) {
  std::vector<std::vector<T>> out(m[0].size(), std::vector<T>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out[j][i] = m[i][j];
  return out;
}

const std::vector<std::vector<int>> kQuadS0 = {
    {24, 0, 4, 0, 0, 0},  {36, 6, 6, 1, 0, 0},   {24, 24, 4, 4, 0, 0},
    {16, 0, 16, 0, 0, 0}, {24, 4, 24, 4, 0, 0},  {16, 16, 16, 16, 0, 0},
    {4, 0, 24, 0, 4, 0},  {6, 1, 36, 6, 6, 1},   {4, 4, 24, 24, 4, 4},
    {0, 0, 16, 0, 16, 0}, {0, 0, 24, 4, 24, 4},  {0, 0, 16, 16, 16, 16}};
const std::vector<std::vector<int>> kQuadS1 = {
    {4, 0, 0, 0, 0, 0},  {1, 0, 0, 0, 0, 0},  {0, 0, 0, 0, 0, 0},
    {16, 0, 0, 0, 0, 0}, {4, 0, 0, 0, 0, 0},  {0, 0, 0, 0, 0, 0},
    {24, 4, 0, 0, 0, 0}, {6, 1, 0, 0, 0, 0},  {0, 0, 0, 0, 0, 0},
    {16, 16, 0, 0, 0, 0}, {4, 4, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}};
const std::vector<std::vector<int>> kQuadS2 = {
    {4, 0, 4, 0, 0, 0}, {1, 0, 6, 0, 1, 0}, {0, 0, 4, 0, 4, 0}, {0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}};
const std::vector<std::vector<int>> kQuadL0T = {
    {16, 4, 4, 1, 0, 0}, {4, 16, 1, 4, 0, 0}, {0, 4, 0, 1, 0, 0}, {4, 1, 16, 4, 4, 1},
    {1, 4, 4, 16, 1, 4}, {0, 1, 0, 4, 0, 1},  {0, 0, 4, 1, 16, 4}, {0, 0, 1, 4, 4, 16},
    {0, 0, 0, 1, 0, 4},  {0, 0, 0, 0, 4, 1},  {0, 0, 0, 0, 1, 4},  {0, 0, 0, 0, 0, 1}};
const std::vector<std::vector<int>> kQuadL1T = {
    {1, 0, 4, 0, 1, 0}, {0, 0, 1, 0, 4, 0}, {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}};
const std::vector<std::vector<int>> kQuadL2T = {
    {1, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {4, 1, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {1, 4, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}};

const std::vector<std::vector<int>> kTriS0 = {{6, 0, 0}, {10, 1, 1}, {6, 6, 2},
                                              {6, 0, 2}, {6, 2, 6},  {2, 0, 6}};
const std::vector<std::vector<int>> kTriS1 = {{2, 0, 0}, {1, 0, 0}, {0, 0, 0},
                                              {6, 0, 0}, {2, 0, 0}, {6, 2, 0}};
const std::vector<std::vector<int>> kTriS2 = {{2, 0, 0}, {1, 0, 1}, {0, 0, 2},
                                              {0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
const std::vector<std::vector<int>> kTriL0T = {{6, 1, 1}, {1, 6, 1}, {0, 1, 0},
                                               {1, 1, 6}, {0, 1, 1}, {0, 0, 1}};
const std::vector<std::vector<int>> kTriL1T = {{1, 0, 1}, {0, 0, 1}, {0, 0, 0},
                                               {0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
const std::vector<std::vector<int>> kTriL2T = {{1, 0, 0}, {0, 0, 0}, {0, 0, 0},
                                               {1, 1, 0}, {0, 0, 0}, {0, 1, 0}};

template <typename T>
Blocks<T> quad_blocks(int n) {
  Blocks<T> b;
  b.sec_ctrl = 6;
  b.sec_ref = 12;
  b.sec_interp = 6;
  b.s0 = T(4 * n - 7) / T(4 * n);
  b.s1 = scaled_row({6, 0, 1, 0, 0, 0}, T(1) / T(4 * n * n));
  b.s2 = scaled_row({24, 6, 0, 16, 4, 0, 4, 1, 0, 0, 0, 0}, T(1) / T(64));
  b.S0 = scaled(kQuadS0, T(1) / T(64));
  b.S1 = scaled(kQuadS1, T(1) / T(64));
  b.S2 = scaled(kQuadS2, T(1) / T(64));
  b.l0 = T(n) / T(n + 5);
  b.l1 = scaled_row({4, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0}, T(1) / T(n * (n + 5)));
  b.l2 = scaled_row({4, 0, 1, 0, 0, 0}, T(1) / T(36));
  b.L0 = transposed(scaled(kQuadL0T, T(1) / T(36)));
  b.L1 = transposed(scaled(kQuadL1T, T(1) / T(36)));
  b.L2 = transposed(scaled(kQuadL2T, T(1) / T(36)));
  return b;
}

// alpha/beta/tau of the center row are parameters so the same blocks serve
// the plain and the modified triangle schemes
template <typename T>
Blocks<T> tri_blocks(int /*n*/, T alpha, T beta, T tau, T n_times_tau) {
  Blocks<T> b;
  b.sec_ctrl = 3;
  b.sec_ref = 6;
  b.sec_interp = 3;
  b.s0 = alpha;
  b.s1 = {beta, T(0), T(0)};
  b.s2 = scaled_row({6, 1, 0, 2, 0, 0}, T(1) / T(16));
  b.S0 = scaled(kTriS0, T(1) / T(16));
  b.S1 = scaled(kTriS1, T(1) / T(16));
  b.S2 = scaled(kTriS2, T(1) / T(16));
  b.l0 = T(1) - n_times_tau;
  b.l1 = {tau, T(0), T(0), T(0), T(0), T(0)};
  b.l2 = scaled_row({1, 0, 0}, T(1) / T(12));
  b.L0 = transposed(scaled(kTriL0T, T(1) / T(12)));
  b.L1 = transposed(scaled(kTriL1T, T(1) / T(12)));
  b.L2 = transposed(scaled(kTriL2T, T(1) / T(12)));
  return b;
}

template <typename M, typename T>
void assemble_S(M& S, const Blocks<T>& b, int n) {
  S(0, 0) = b.s0;
  for (int j = 0; j < n; ++j)
    for (int c = 0; c < b.sec_ctrl; ++c) S(0, 1 + b.sec_ctrl * j + c) = b.s1[c];
  for (int j = 0; j < n; ++j) {
    int row0 = 1 + b.sec_ref * j;
    int cj = 1 + b.sec_ctrl * j;
    int cn = 1 + b.sec_ctrl * ((j + 1) % n);
    int cp = 1 + b.sec_ctrl * ((j + n - 1) % n);
    for (int r = 0; r < b.sec_ref; ++r) {
      S(row0 + r, 0) = b.s2[r];
      for (int c = 0; c < b.sec_ctrl; ++c) {
        S(row0 + r, cj + c) = S(row0 + r, cj + c) + b.S0[r][c];
        S(row0 + r, cn + c) = S(row0 + r, cn + c) + b.S1[r][c];
        S(row0 + r, cp + c) = S(row0 + r, cp + c) + b.S2[r][c];
      }
    }
  }
}

template <typename M, typename T>
void assemble_L(M& L, const Blocks<T>& b, int n) {
  L(0, 0) = b.l0;
  for (int j = 0; j < n; ++j)
    for (int c = 0; c < b.sec_ref; ++c) L(0, 1 + b.sec_ref * j + c) = b.l1[c];
  for (int j = 0; j < n; ++j) {
    int row0 = 1 + b.sec_interp * j;
    int cj = 1 + b.sec_ref * j;
    int cn = 1 + b.sec_ref * ((j + 1) % n);
    int cp = 1 + b.sec_ref * ((j + n - 1) % n);
    for (int r = 0; r < b.sec_interp; ++r) {
      L(row0 + r, 0) = b.l2[r];
      for (int c = 0; c < b.sec_ref; ++c) {
        L(row0 + r, cj + c) = L(row0 + r, cj + c) + b.L0[r][c];
        L(row0 + r, cn + c) = L(row0 + r, cn + c) + b.L1[r][c];
        L(row0 + r, cp + c) = L(row0 + r, cp + c) + b.L2[r][c];
      }
    }
  }
}

struct EigenAccess {
  Mat& m;
  double& operator()(int r, int c) { return m(r, c); }
};

void check_valence(int n) {
  if (n < 3) throw Error(ErrorCode::UnsupportedValence, "valence must be >= 3");
}

}  // namespace

FracMat local_S_exact(SchemeKind kind, int n) {
  check_valence(n);
  if (kind == SchemeKind::CatmullClark) {
    Blocks<Frac> b = quad_blocks<Frac>(n);
    FracMat S(1 + 12 * n, 1 + 6 * n);
    assemble_S(S, b, n);
    return S;
  }
  if (kind == SchemeKind::Loop && n == 6) {
    Blocks<Frac> b =
        tri_blocks<Frac>(6, Frac(10, 16), Frac(1, 16), Frac(1, 12), Frac(1, 2));
    FracMat S(1 + 6 * n, 1 + 3 * n);
    assemble_S(S, b, n);
    return S;
  }
  throw Error(ErrorCode::UnsupportedValence,
              "exact assembly exists only where the masks are rational");
}

FracMat local_L_exact(SchemeKind kind, int n) {
  check_valence(n);
  if (kind == SchemeKind::CatmullClark) {
    Blocks<Frac> b = quad_blocks<Frac>(n);
    FracMat L(1 + 6 * n, 1 + 12 * n);
    assemble_L(L, b, n);
    return L;
  }
  if (kind == SchemeKind::Loop && n == 6) {
    Blocks<Frac> b =
        tri_blocks<Frac>(6, Frac(10, 16), Frac(1, 16), Frac(1, 12), Frac(1, 2));
    FracMat L(1 + 3 * n, 1 + 6 * n);
    assemble_L(L, b, n);
    return L;
  }
  throw Error(ErrorCode::UnsupportedValence,
              "exact assembly exists only where the masks are rational");
}

FracMat local_A_exact(SchemeKind kind, int n) {
  return local_L_exact(kind, n) * local_S_exact(kind, n);
}

Mat local_S(const SchemeId& scheme, int n) {
  check_valence(n);
  if (scheme.kind == SchemeKind::CatmullClark) {
    Blocks<double> b = quad_blocks<double>(n);
    Mat S = Mat::Zero(1 + 12 * n, 1 + 6 * n);
    EigenAccess acc{S};
    assemble_S(acc, b, n);
    return S;
  }
  const bool modified = scheme.kind == SchemeKind::ModifiedLoop && n != 6;
  double beta = loop_beta(n), alpha = 1.0 - n * beta;
  if (modified) {
    if (!scheme.masks) throw Error(ErrorCode::MaskMissing, "modified loop requires masks");
    const MLoopValenceMasks& m = scheme.masks->at(n);
    alpha = m.alpha;
    beta = m.beta;
  }
  double tau = loop_tau(n);
  Blocks<double> b = tri_blocks<double>(n, alpha, beta, tau, n * tau);
  Mat S = Mat::Zero(1 + 6 * n, 1 + 3 * n);
  EigenAccess acc{S};
  assemble_S(acc, b, n);
  if (modified) {
    const MLoopValenceMasks& m = scheme.masks->at(n);
    for (int j = 0; j < n; ++j) {
      int row = 1 + 6 * j;  // spoke edge point of sector j
      S.row(row).setZero();
      S(row, 0) = m.gamma;
      for (int l = 0; l < n; ++l) S(row, 1 + 3 * ((j + l) % n)) = m.gamma_j[l];
    }
  }
  return S;
}

Mat local_L(const SchemeId& scheme, int n) {
  check_valence(n);
  if (scheme.kind == SchemeKind::CatmullClark) {
    Blocks<double> b = quad_blocks<double>(n);
    Mat L = Mat::Zero(1 + 6 * n, 1 + 12 * n);
    EigenAccess acc{L};
    assemble_L(acc, b, n);
    return L;
  }
  const bool modified = scheme.kind == SchemeKind::ModifiedLoop && n != 6;
  double tau = loop_tau(n);
  if (modified) {
    if (!scheme.masks) throw Error(ErrorCode::MaskMissing, "modified loop requires masks");
    tau = mloop_tau(scheme.masks->at(n), n);
  }
  Blocks<double> b =
      tri_blocks<double>(n, loop_alpha(n), loop_beta(n), tau, n * tau);
  Mat L = Mat::Zero(1 + 3 * n, 1 + 6 * n);
  EigenAccess acc{L};
  assemble_L(acc, b, n);
  if (modified) {
    const MLoopValenceMasks& m = scheme.masks->at(n);
    for (int j = 0; j < n; ++j) {
      int row = 1 + 3 * j;  // limit at the spoke edge point of sector j
      L(row, 0) = (m.gamma + 5.0 / 8.0) / 12.0;
      for (int l = 0; l < n; ++l) {
        double add = l == 0 ? 45.0 / 8.0 : (l == 1 || l == n - 1 ? 7.0 / 8.0 : 0.0);
        L(row, 1 + 6 * ((j + l) % n)) = (m.gamma_j[l] + add) / 12.0;
      }
    }
  }
  return L;
}

Mat local_A(const SchemeId& scheme, int n) { return local_L(scheme, n) * local_S(scheme, n); }

LocalSystem local_system(const SchemeId& scheme, int n) {
  LocalSystem sys;
  sys.scheme = scheme.kind;
  sys.valence = n;
  sys.S = local_S(scheme, n);
  sys.L = local_L(scheme, n);
  sys.A = sys.L * sys.S;
  return sys;
}

Mat oracle_A(const SchemeId& scheme, int n) {
  check_valence(n);
  PolyMesh fan = fan_mesh(scheme.face_arity(), n, 3);
  HalfEdgeMesh mesh = HalfEdgeMesh::build(fan);
  Window win = control_window(mesh, 0);
  std::vector<InterpEntity> ents = interp_entities(mesh, 0);

  Channels unit = Channels::Zero(mesh.vertex_count(), win.control.size());
  for (std::size_t j = 0; j < win.control.size(); ++j) unit(win.control[j], j) = 1.0;

  RefineResult r = refine(mesh, unit, scheme);
  Channels lim = limit_positions(r.mesh, r.channels, scheme);

  Mat A(ents.size(), win.control.size());
  for (std::size_t k = 0; k < ents.size(); ++k) {
    Index row;
    switch (ents[k].kind) {
      case InterpEntity::VertexPoint: row = r.vertex_point(ents[k].id); break;
      case InterpEntity::EdgePoint: row = r.edge_point(ents[k].id); break;
      default: row = r.face_point(ents[k].id); break;
    }
    A.row(k) = lim.row(row);
  }
  return A;
}

FracMat cubic_bspline_S_exact() {
  const int rows[7][5] = {{4, 4, 0, 0, 0}, {1, 6, 1, 0, 0}, {0, 4, 4, 0, 0},
                          {0, 1, 6, 1, 0}, {0, 0, 4, 4, 0}, {0, 0, 1, 6, 1},
                          {0, 0, 0, 4, 4}};
  FracMat S(7, 5);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 5; ++j) S(i, j) = Frac(rows[i][j], 8);
  return S;
}

FracMat cubic_bspline_L_exact() {
  FracMat L(5, 7);
  for (int i = 0; i < 5; ++i) {
    L(i, i) = Frac(1, 6);
    L(i, i + 1) = Frac(4, 6);
    L(i, i + 2) = Frac(1, 6);
  }
  return L;
}

FracMat cubic_bspline_A_exact() { return cubic_bspline_L_exact() * cubic_bspline_S_exact(); }

Mat cubic_bspline_A() { return cubic_bspline_A_exact().to_double(); }

FracMat corner_system_exact() {
  static const int rows[21][21] = {
      {16,16,0,16,96,16,0,0,16,16,0,0,0,0,0,0,0,0,0,0,0},
      {3,26,3,1,63,63,1,0,3,26,3,0,0,0,0,0,0,0,0,0,0},
      {0,16,16,0,16,96,16,0,0,16,16,0,0,0,0,0,0,0,0,0,0},
      {3,1,0,26,63,3,0,3,63,26,0,0,1,3,0,0,0,0,0,0,0},
      {1,3,0,3,63,26,0,0,26,63,3,0,0,3,1,0,0,0,0,0,0},
      {0,3,1,0,26,63,3,0,3,63,26,0,0,1,3,0,0,0,0,0,0},
      {0,0,0,0,0,0,0,16,16,0,0,0,96,16,0,0,16,0,0,16,16},
      {0,0,0,16,16,0,0,16,96,16,0,0,16,16,0,0,0,0,0,0,0},
      {0,0,0,3,26,3,0,1,63,63,1,0,3,26,3,0,0,0,0,0,0},
      {0,0,0,0,16,16,0,0,16,96,16,0,0,16,16,0,0,0,0,0,0},
      {0,0,0,0,3,26,3,0,1,63,63,1,0,3,26,3,0,0,0,0,0},
      {0,0,0,0,0,16,16,0,0,16,96,16,0,0,16,16,0,0,0,0,0},
      {0,0,0,1,3,0,0,3,63,26,0,0,26,63,3,0,3,1,0,0,0},
      {0,0,0,0,3,1,0,0,26,63,3,0,3,63,26,0,1,3,0,0,0},
      {0,0,0,0,1,3,0,0,3,63,26,0,0,26,63,3,0,3,1,0,0},
      {0,0,0,0,0,3,1,0,0,26,63,3,0,3,63,26,0,1,3,0,0},
      {0,0,0,0,0,0,0,0,16,16,0,0,16,96,16,0,16,16,0,0,0},
      {0,0,0,0,0,0,0,0,3,26,3,0,1,63,63,1,3,26,3,0,0},
      {0,0,0,0,0,0,0,0,0,16,16,0,0,16,96,16,0,16,16,0,0},
      {0,0,0,3,1,0,0,26,63,3,0,0,63,26,0,0,3,0,0,3,1},
      {0,0,0,0,0,0,0,3,26,3,0,0,63,63,1,0,26,3,0,1,3}};
  FracMat A(21, 21);
  for (int i = 0; i < 21; ++i)
    for (int j = 0; j < 21; ++j) A(i, j) = Frac(rows[i][j], 192);
  return A;
}

const Mat& corner_system() {
  static const Mat A = corner_system_exact().to_double();
  return A;
}

namespace {

double round_dyadic(double x) { return std::round(x * 4096.0) / 4096.0; }

Vec3 rounded(double x, double y) { return Vec3(round_dyadic(x), round_dyadic(y), 0.0); }

}  // namespace

PolyMesh fan_mesh(int face_arity, int valence, int rings) {
  check_valence(valence);
  if (rings < 1) throw Error(ErrorCode::InvalidMesh, "fan needs at least one ring");
  const int n = valence;
  const int R = rings;
  PolyMesh mesh;
  mesh.arity = face_arity;

  if (face_arity == 4) {
    const Index spoke_base = 1;
    const Index interior_base = 1 + Index(n) * R;
    auto vid = [&](int j, int a, int b) -> Index {
      j = (j % n + n) % n;
      if (a == 0 && b == 0) return 0;
      if (b == 0) return spoke_base + Index(j) * R + (a - 1);
      if (a == 0) return spoke_base + Index((j + 1) % n) * R + (b - 1);
      return interior_base + Index(j) * R * R + Index(a - 1) * R + (b - 1);
    };
    mesh.positions.assign(1 + std::size_t(n) * R + std::size_t(n) * R * R, Vec3::Zero());
    for (int j = 0; j < n; ++j) {
      double phi0 = 2.0 * M_PI * j / n;
      double phi1 = 2.0 * M_PI * (j + 1) / n;
      double phim = 0.5 * (phi0 + phi1);
      double ax = std::cos(phi0), ay = std::sin(phi0);
      double cx = std::sqrt(2.0) * std::cos(phim), cy = std::sqrt(2.0) * std::sin(phim);
      double bx = std::cos(phi1), by = std::sin(phi1);
      for (int a = 0; a <= R; ++a)
        for (int b = 0; b <= R; ++b) {
          if (a == 0 && b == 0) continue;
          double u = double(a) / R, w = double(b) / R;
          double x = u * (1 - w) * ax + u * w * cx + (1 - u) * w * bx;
          double y = u * (1 - w) * ay + u * w * cy + (1 - u) * w * by;
          mesh.positions[vid(j, a, b)] = rounded(x, y);
        }
      for (int a = 0; a < R; ++a)
        for (int b = 0; b < R; ++b)
          mesh.add_face({vid(j, a, b), vid(j, a + 1, b), vid(j, a + 1, b + 1),
                         vid(j, a, b + 1)});
    }
    return mesh;
  }

  if (face_arity != 3) throw Error(ErrorCode::MixedArity, "fan arity must be 3 or 4");
  const Index spoke_base = 1;
  const int per_sector_interior = R * (R - 1) / 2;
  const Index interior_base = 1 + Index(n) * R;
  auto interior_offset = [&](int a, int b) {
    // a >= 1, b >= 1, a + b <= R
    int off = 0;
    for (int aa = 1; aa < a; ++aa) off += R - aa;
    return off + (b - 1);
  };
  auto vid = [&](int j, int a, int b) -> Index {
    j = (j % n + n) % n;
    if (a == 0 && b == 0) return 0;
    if (b == 0) return spoke_base + Index(j) * R + (a - 1);
    if (a == 0) return spoke_base + Index((j + 1) % n) * R + (b - 1);
    return interior_base + Index(j) * per_sector_interior + interior_offset(a, b);
  };
  mesh.positions.assign(1 + std::size_t(n) * R + std::size_t(n) * per_sector_interior,
                        Vec3::Zero());
  for (int j = 0; j < n; ++j) {
    double phi0 = 2.0 * M_PI * j / n;
    double phi1 = 2.0 * M_PI * (j + 1) / n;
    double ux = std::cos(phi0), uy = std::sin(phi0);
    double wx = std::cos(phi1), wy = std::sin(phi1);
    for (int a = 0; a <= R; ++a)
      for (int b = 0; a + b <= R; ++b) {
        if (a == 0 && b == 0) continue;
        double x = (a * ux + b * wx) / R;
        double y = (a * uy + b * wy) / R;
        mesh.positions[vid(j, a, b)] = rounded(x, y);
      }
    for (int a = 0; a < R; ++a)
      for (int b = 0; a + b < R; ++b) {
        mesh.add_face({vid(j, a, b), vid(j, a + 1, b), vid(j, a, b + 1)});
        if (a + b < R - 1)
          mesh.add_face({vid(j, a + 1, b), vid(j, a + 1, b + 1), vid(j, a, b + 1)});
      }
  }
  return mesh;
}

}  // namespace subdivqi
