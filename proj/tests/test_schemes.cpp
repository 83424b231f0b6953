#include <doctest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "support/fixtures.hpp"

using namespace subdivqi;

TEST_CASE("triangle vertex-rule coefficients match the regular masks") {
  CHECK(loop_beta(6) == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
  CHECK(loop_alpha(6) == doctest::Approx(10.0 / 16.0).epsilon(1e-15));
  CHECK(loop_tau(6) == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
  // beta(5) and alpha(5) as used by the closed-form weights
  CHECK(loop_beta(5) == doctest::Approx(0.0840932).epsilon(1e-6));
  CHECK(loop_alpha(5) == doctest::Approx(0.579534).epsilon(1e-6));
}

TEST_CASE("refinement keeps planar grids planar") {
  HalfEdgeMesh mesh = HalfEdgeMesh::build(make_quad_grid(4, 4));
  RefineResult r = refine(mesh, SchemeId::catmull_clark());
  r.mesh.check_invariants();
  for (Index v = 0; v < r.mesh.vertex_count(); ++v)
    CHECK(std::abs(r.mesh.position(v).z()) == 0.0);
  CHECK(r.mesh.face_count() == 4 * mesh.face_count());
}

TEST_CASE("refinement and limits commute with affine maps") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::Matrix3d M;
  Vec3 t;
  for (int i = 0; i < 3; ++i) {
    t[i] = dist(rng);
    for (int j = 0; j < 3; ++j) M(i, j) = dist(rng);
  }

  auto check_scheme = [&](const SchemeId& scheme, const PolyMesh& base) {
    HalfEdgeMesh mesh = HalfEdgeMesh::build(base);
    PolyMesh mapped = base;
    for (Vec3& p : mapped.positions) p = M * p + t;
    HalfEdgeMesh mesh2 = HalfEdgeMesh::build(mapped);

    RefineResult a = refine(mesh, scheme);
    RefineResult b = refine(mesh2, scheme);
    for (Index v = 0; v < a.mesh.vertex_count(); ++v) {
      Vec3 expect = M * a.mesh.position(v) + t;
      CHECK((expect - b.mesh.position(v)).lpNorm<Eigen::Infinity>() <= 1e-12);
    }

    Channels la = limit_positions(mesh, mesh.position_channels(), scheme);
    Channels lb = limit_positions(mesh2, mesh2.position_channels(), scheme);
    for (Index v = 0; v < mesh.vertex_count(); ++v) {
      Vec3 pa = la.row(v).transpose();
      Vec3 expect = M * pa + t;
      Vec3 pb = lb.row(v).transpose();
      CHECK((expect - pb).lpNorm<Eigen::Infinity>() <= 1e-12);
    }
  };

  check_scheme(SchemeId::catmull_clark(), make_test_mesh(MeshFamily::Quad, 5, 3));
  check_scheme(SchemeId::loop(), make_test_mesh(MeshFamily::Tri, 7, 3));
  check_scheme(SchemeId::modified_loop(testing::synthetic_masks(3, 8)),
               make_test_mesh(MeshFamily::Tri, 5, 3));
}

TEST_CASE("limit of a constant field is the constant") {
  auto check = [&](const SchemeId& scheme, const PolyMesh& base) {
    HalfEdgeMesh mesh = HalfEdgeMesh::build(base);
    Channels c = Channels::Constant(mesh.vertex_count(), 1, 3.25);
    Channels lim = limit_positions(mesh, c, scheme);
    for (Index v = 0; v < mesh.vertex_count(); ++v)
      CHECK(lim(v, 0) == doctest::Approx(3.25).epsilon(1e-14));
  };
  check(SchemeId::catmull_clark(), make_test_mesh(MeshFamily::Quad, 3, 3));
  check(SchemeId::loop(), make_test_mesh(MeshFamily::Tri, 8, 3));
  check(SchemeId::modified_loop(testing::synthetic_masks(3, 8)),
        make_test_mesh(MeshFamily::Tri, 5, 3));
}

TEST_CASE("quad limit mask at a regular vertex") {
  HalfEdgeMesh mesh = HalfEdgeMesh::build(make_quad_grid(6, 6));
  Index center = kInvalid;
  for (Index v = 0; v < mesh.vertex_count(); ++v)
    if (mesh.position(v).norm() < 1e-12) center = v;
  REQUIRE(center != kInvalid);

  std::mt19937 rng(11);
  Channels c(mesh.vertex_count(), 1);
  c.col(0) = testing::random_net(mesh.vertex_count(), rng);
  Channels lim = limit_positions(mesh, c, SchemeId::catmull_clark());

  double esum = 0, fsum = 0;
  for (Index h : mesh.star(center)) {
    esum += c(mesh.head(h), 0);
    fsum += c(mesh.head(mesh.next(h)), 0);
  }
  double expect = (16.0 * c(center, 0) + 4.0 * esum + fsum) / 36.0;
  CHECK(lim(center, 0) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("refined vertex ids are deterministic") {
  HalfEdgeMesh mesh = HalfEdgeMesh::build(make_test_mesh(MeshFamily::Tri, 5, 3));
  RefineResult r = refine(mesh, SchemeId::loop());
  CHECK(r.parent_vertex_count == mesh.vertex_count());
  CHECK(r.parent_edge_count == mesh.edge_count());
  CHECK(r.mesh.vertex_count() == mesh.vertex_count() + mesh.edge_count());
  // edge points land at the refined position of their edge
  for (Index e = 0; e < std::min<Index>(mesh.edge_count(), 12); ++e) {
    Index ep = r.edge_point(e);
    CHECK(ep >= mesh.vertex_count());
    CHECK(ep < r.mesh.vertex_count());
  }
}

TEST_CASE("mask tables validate their affine identities") {
  MLoopMasks good = MLoopMasks::loop_equivalent(3, 12);
  CHECK_NOTHROW(good.validate());

  MLoopMasks bad = good;
  bad.valences[5].alpha += 0.01;
  CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("alpha + n*beta"), Error);

  MLoopMasks bad2 = good;
  bad2.valences[7].gamma_j[2] += 0.01;
  CHECK_THROWS_WITH_AS(bad2.validate(), doctest::Contains("gamma + sum(gamma_j)"), Error);

  nlohmann::json doc = good.to_json();
  MLoopMasks round = MLoopMasks::from_json(doc);
  CHECK(round.valences.size() == good.valences.size());
  CHECK(round.at(6).beta == good.at(6).beta);
}

TEST_CASE("missing mask valence raises MaskMissing") {
  MLoopMasks table = testing::synthetic_masks(3, 4);  // no valence-7 entry
  SchemeId scheme = SchemeId::modified_loop(table);
  HalfEdgeMesh mesh = HalfEdgeMesh::build(make_test_mesh(MeshFamily::Tri, 7, 3));
  bool threw = false;
  try {
    refine(mesh, scheme);
  } catch (const Error& e) {
    threw = true;
    CHECK(e.code() == ErrorCode::MaskMissing);
  }
  CHECK(threw);
}

TEST_CASE("loop-equivalent masks refine like the plain scheme") {
  HalfEdgeMesh mesh = HalfEdgeMesh::build(make_test_mesh(MeshFamily::Tri, 5, 3));
  SchemeId mloop = SchemeId::modified_loop(MLoopMasks::loop_equivalent(3, 8));
  RefineResult a = refine(mesh, SchemeId::loop());
  RefineResult b = refine(mesh, mloop);
  for (Index v = 0; v < a.mesh.vertex_count(); ++v)
    CHECK((a.mesh.position(v) - b.mesh.position(v)).lpNorm<Eigen::Infinity>() <= 1e-14);

  Channels la = limit_positions(mesh, mesh.position_channels(), SchemeId::loop());
  Channels lb = limit_positions(mesh, mesh.position_channels(), mloop);
  CHECK((la - lb).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("boundary refinement follows the cubic curve rules") {
  HalfEdgeMesh mesh = HalfEdgeMesh::build(make_quad_grid(3, 3));
  RefineResult r = refine(mesh, SchemeId::catmull_clark());
  // a boundary edge midpoint stays the midpoint of its endpoints
  for (Index e = 0; e < mesh.edge_count(); ++e) {
    if (!mesh.is_boundary_edge(e)) continue;
    auto [a, b] = mesh.edge_vertices(e);
    Vec3 expect = 0.5 * (mesh.position(a) + mesh.position(b));
    CHECK((r.mesh.position(r.edge_point(e)) - expect).norm() <= 1e-15);
  }
  // a boundary vertex moves by the (1,6,1)/8 rule along the boundary
  for (Index v = 0; v < mesh.vertex_count(); ++v) {
    if (!mesh.is_boundary_vertex(v)) continue;
    auto nb = mesh.boundary_neighbors(v);
    Vec3 expect =
        (mesh.position(nb[0]) + 6.0 * mesh.position(v) + mesh.position(nb[1])) / 8.0;
    CHECK((r.mesh.position(r.vertex_point(v)) - expect).norm() <= 1e-15);
  }
}
