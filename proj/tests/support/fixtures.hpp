#pragma once

#include <random>
#include <sstream>

#include "subdivqi/analysis.hpp"

namespace subdivqi::testing {

inline PolyMesh cube() {
  PolyMesh m;
  m.arity = 4;
  m.positions = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                 {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
  m.add_face({0, 3, 2, 1});
  m.add_face({4, 5, 6, 7});
  m.add_face({0, 1, 5, 4});
  m.add_face({1, 2, 6, 5});
  m.add_face({2, 3, 7, 6});
  m.add_face({3, 0, 4, 7});
  return m;
}

inline PolyMesh octahedron() {
  PolyMesh m;
  m.arity = 3;
  m.positions = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  m.add_face({0, 2, 4});
  m.add_face({2, 1, 4});
  m.add_face({1, 3, 4});
  m.add_face({3, 0, 4});
  m.add_face({2, 0, 5});
  m.add_face({1, 2, 5});
  m.add_face({3, 1, 5});
  m.add_face({0, 3, 5});
  return m;
}

inline MLoopMasks synthetic_masks(int min_n, int max_n) {
  MLoopMasks t;
  t.lambda = 0.4;
  for (int n = min_n; n <= max_n; ++n) {
    MLoopValenceMasks m;
    m.alpha = 0.55;
    m.beta = 0.45 / n;
    m.gamma = 0.4;
    m.gamma_j.assign(n, 0.0);
    m.gamma_j[0] = 0.3;
    m.gamma_j[1] = 0.15;
    m.gamma_j[n - 1] = 0.15;
    t.valences[n] = std::move(m);
  }
  t.validate();
  return t;
}

inline Eigen::VectorXd random_net(Index count, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd c(count);
  for (Index v = 0; v < count; ++v) c[v] = dist(rng);
  return c;
}

inline double roundtrip_error(const HalfEdgeMesh& mesh, const SchemeId& scheme, int nets,
                              std::mt19937& rng) {
  QuasiInterpolant qi = build(mesh, scheme);
  double worst = 0;
  for (int t = 0; t < nets; ++t) {
    Eigen::VectorXd c = random_net(mesh.vertex_count(), rng);
    Eigen::VectorXd rec = qi.apply_to_net(c);
    for (const Functional& fn : qi.functionals)
      worst = std::max(worst, std::abs(rec[fn.owner] - c[fn.owner]));
  }
  return worst;
}

}  // namespace subdivqi::testing
