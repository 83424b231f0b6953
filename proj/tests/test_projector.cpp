#include <doctest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "support/fixtures.hpp"

using namespace subdivqi;

namespace {

// Independent sample-position oracle: refine the geometry once and read the
// limit positions of the interpolation entities.
std::vector<Vec3> oracle_samples(const HalfEdgeMesh& mesh, Index v, const SchemeId& scheme) {
  std::vector<InterpEntity> ents = interp_entities(mesh, v);
  RefineResult r = refine(mesh, scheme);
  Channels lim = limit_positions(r.mesh, r.mesh.position_channels(), scheme);
  std::vector<Vec3> out;
  for (const InterpEntity& e : ents) {
    Index row = e.kind == InterpEntity::VertexPoint  ? r.vertex_point(e.id)
                : e.kind == InterpEntity::EdgePoint  ? r.edge_point(e.id)
                                                     : r.face_point(e.id);
    out.push_back(lim.row(row).head<3>().transpose());
  }
  return out;
}

}  // namespace

TEST_CASE("sample positions match the refine-then-limit oracle") {
  for (int n : {3, 4, 5, 7}) {
    {
      SchemeId scheme = SchemeId::catmull_clark();
      HalfEdgeMesh mesh = HalfEdgeMesh::build(fan_mesh(4, n, 3));
      std::vector<Vec3> fast = sample_points(mesh, 0, scheme);
      std::vector<Vec3> slow = oracle_samples(mesh, 0, scheme);
      REQUIRE(fast.size() == std::size_t(6 * n + 1));
      REQUIRE(fast.size() == slow.size());
      for (std::size_t k = 0; k < fast.size(); ++k)
        CHECK((fast[k] - slow[k]).lpNorm<Eigen::Infinity>() <= 1e-12);
    }
    {
      SchemeId scheme = SchemeId::loop();
      HalfEdgeMesh mesh = HalfEdgeMesh::build(fan_mesh(3, n, 3));
      std::vector<Vec3> fast = sample_points(mesh, 0, scheme);
      std::vector<Vec3> slow = oracle_samples(mesh, 0, scheme);
      REQUIRE(fast.size() == std::size_t(3 * n + 1));
      for (std::size_t k = 0; k < fast.size(); ++k)
        CHECK((fast[k] - slow[k]).lpNorm<Eigen::Infinity>() <= 1e-12);
    }
  }
  SchemeId mloop = SchemeId::modified_loop(testing::synthetic_masks(3, 8));
  HalfEdgeMesh mesh = HalfEdgeMesh::build(fan_mesh(3, 5, 3));
  std::vector<Vec3> fast = sample_points(mesh, 0, mloop);
  std::vector<Vec3> slow = oracle_samples(mesh, 0, mloop);
  for (std::size_t k = 0; k < fast.size(); ++k)
    CHECK((fast[k] - slow[k]).lpNorm<Eigen::Infinity>() <= 1e-12);
}

TEST_CASE("samples of a flat uniform grid are the grid entities") {
  HalfEdgeMesh mesh = HalfEdgeMesh::build(make_quad_grid(8, 8, 1.0));
  Index center = kInvalid;
  for (Index v = 0; v < mesh.vertex_count(); ++v)
    if (mesh.position(v).norm() < 1e-12) center = v;
  REQUIRE(center != kInvalid);

  std::vector<Vec3> samples = sample_points(mesh, center, SchemeId::catmull_clark());
  std::vector<InterpEntity> ents = interp_entities(mesh, center);
  REQUIRE(samples.size() == ents.size());
  for (std::size_t k = 0; k < ents.size(); ++k) {
    Vec3 expect;
    if (ents[k].kind == InterpEntity::VertexPoint) {
      expect = mesh.position(ents[k].id);
    } else if (ents[k].kind == InterpEntity::EdgePoint) {
      auto [a, b] = mesh.edge_vertices(ents[k].id);
      expect = 0.5 * (mesh.position(a) + mesh.position(b));
    } else {
      std::vector<Index> fv = mesh.face_vertex_list(ents[k].id);
      expect = Vec3::Zero();
      for (Index v : fv) expect += mesh.position(v);
      expect /= 4.0;
    }
    CHECK((samples[k] - expect).lpNorm<Eigen::Infinity>() <= 1e-12);
  }
}

TEST_CASE("target choice near an extraordinary vertex") {
  SUBCASE("quad edge neighbor continues straight") {
    HalfEdgeMesh mesh = HalfEdgeMesh::build(make_test_mesh(MeshFamily::Quad, 5, 4));
    SchemeId scheme = SchemeId::catmull_clark();
    VertexClassification cls = classify(mesh, scheme);
    for (Index v : mesh.neighbors(0)) {
      REQUIRE(cls.tag[v] == VertexClass::RegularAdjacentToEp);
      Index t = target_point(mesh, cls, v, scheme);
      // straight continuation: the neighbor of v opposite the center
      std::vector<Index> nb = mesh.neighbors(v);
      int pos = -1;
      for (std::size_t i = 0; i < nb.size(); ++i)
        if (nb[i] == 0) pos = static_cast<int>(i);
      REQUIRE(pos >= 0);
      CHECK(t == nb[(pos + 2) % 4]);
    }
  }
  SUBCASE("triangle neighbor reflects through the flanking edge") {
    HalfEdgeMesh mesh = HalfEdgeMesh::build(make_test_mesh(MeshFamily::Tri, 5, 4));
    SchemeId scheme = SchemeId::loop();
    VertexClassification cls = classify(mesh, scheme);
    for (Index v : mesh.neighbors(0)) {
      Index t = target_point(mesh, cls, v, scheme);
      CHECK(t != 0);
      CHECK(!mesh.is_boundary_vertex(t));
      CHECK(mesh.valence(t) == 6);
      for (Index w : mesh.neighbors(t)) CHECK(w != 0);
      // reflection: |t| is about sqrt(3) ring units while v sits on ring one,
      // and t is in v's one-ring
      std::vector<Index> nb = mesh.neighbors(v);
      CHECK(std::count(nb.begin(), nb.end(), t) == 1);
    }
  }
  SUBCASE("the extraordinary vertex serves when nothing else exists") {
    PolyMesh oct = ensure_separated_eps(testing::octahedron(), SchemeId::loop());
    HalfEdgeMesh mesh = HalfEdgeMesh::build(oct);
    SchemeId scheme = SchemeId::loop();
    VertexClassification cls = classify(mesh, scheme);
    int fallbacks = 0;
    for (Index v = 0; v < mesh.vertex_count(); ++v) {
      if (cls.tag[v] != VertexClass::RegularAdjacentToEp) continue;
      Index t = target_point(mesh, cls, v, scheme);
      if (is_extraordinary(mesh, t)) ++fallbacks;
    }
    CHECK(fallbacks > 0);
  }
}

TEST_CASE("functional dispatch and partition of unity") {
  std::vector<std::pair<SchemeId, PolyMesh>> cases;
  cases.emplace_back(SchemeId::catmull_clark(), make_test_mesh(MeshFamily::Quad, 5, 4));
  cases.emplace_back(SchemeId::loop(), make_test_mesh(MeshFamily::Tri, 7, 4));
  cases.emplace_back(SchemeId::modified_loop(testing::synthetic_masks(3, 8)),
                     make_test_mesh(MeshFamily::Tri, 5, 5));
  cases.emplace_back(SchemeId::catmull_clark(), make_quad_grid(8, 8));
  cases.emplace_back(SchemeId::loop(), make_tri_grid(8, 8));

  for (auto& [scheme, poly] : cases) {
    HalfEdgeMesh mesh = HalfEdgeMesh::build(poly);
    QuasiInterpolant qi = build(mesh, scheme);
    CHECK(qi.functionals.size() + qi.dropped.size() == mesh.vertex_count());
    for (const Functional& fn : qi.functionals) {
      CHECK(fn.weights.sum() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(fn.samples.size() == std::size_t(fn.weights.size()));
    }
  }
}

TEST_CASE("provenance tags follow the classification") {
  HalfEdgeMesh mesh = HalfEdgeMesh::build(make_test_mesh(MeshFamily::Quad, 5, 4));
  SchemeId scheme = SchemeId::catmull_clark();
  QuasiInterpolant qi = build(mesh, scheme);
  int eps = 0, regular = 0, targeted = 0, corner = 0;
  for (const Functional& fn : qi.functionals) {
    switch (fn.provenance) {
      case Functional::Provenance::ClosedFormEp: ++eps; break;
      case Functional::Provenance::ClosedFormRegular: ++regular; break;
      case Functional::Provenance::TargetPoint: ++targeted; break;
      case Functional::Provenance::CornerSystem: ++corner; break;
    }
  }
  CHECK(eps == 1);
  CHECK(regular > 0);
  CHECK(targeted > 0);
  CHECK(corner == 0);
  CHECK(qi.dropped.empty());
}

TEST_CASE("corner system on a uniformly split triangle grid") {
  HalfEdgeMesh mesh = HalfEdgeMesh::build(make_tri_grid(8, 8));
  SchemeId scheme = SchemeId::loop();
  VertexClassification cls = classify(mesh, scheme);
  QuasiInterpolant qi = build(mesh, scheme);

  int corner_functionals = 0;
  std::vector<Index> corner_owner;
  for (const Functional& fn : qi.functionals)
    if (fn.provenance == Functional::Provenance::CornerSystem) {
      ++corner_functionals;
      corner_owner.push_back(fn.owner);
    }
  // two corners have the single-face configuration, three covered vertices each
  CHECK(corner_functionals == 6);
  CHECK(qi.dropped.size() == 2);
  for (Index c : qi.dropped) {
    CHECK(mesh.is_boundary_vertex(c));
    CHECK(mesh.valence(c) == 1);
  }

  SUBCASE("hard-coded corner matrix agrees with the refine-then-limit oracle") {
    auto info = corner_patch(mesh, cls, corner_owner.front(), scheme);
    REQUIRE(info.has_value());
    REQUIRE(info->control.size() == 21);
    REQUIRE(info->entities.size() == 21);

    Channels unit = Channels::Zero(mesh.vertex_count(), 21);
    for (int j = 0; j < 21; ++j) unit(info->control[j], j) = 1.0;
    RefineResult r = refine(mesh, unit, scheme);
    Channels lim = limit_positions(r.mesh, r.channels, scheme);
    const Mat& A = corner_system();
    for (int k = 0; k < 21; ++k) {
      const InterpEntity& e = info->entities[k];
      Index row = e.kind == InterpEntity::VertexPoint ? r.vertex_point(e.id)
                  : e.kind == InterpEntity::EdgePoint ? r.edge_point(e.id)
                                                      : r.face_point(e.id);
      for (int j = 0; j < 21; ++j)
        CHECK(lim(row, j) == doctest::Approx(A(k, j)).epsilon(1e-12));
    }
  }
}

TEST_CASE("projector recovers random nets on every mesh family") {
  std::mt19937 rng(1234);
  auto check = [&](const SchemeId& scheme, PolyMesh poly) {
    poly = ensure_separated_eps(poly, scheme);
    HalfEdgeMesh mesh = HalfEdgeMesh::build(poly);
    CHECK(testing::roundtrip_error(mesh, scheme, 10, rng) <= 1e-9);
  };
  for (int n = 3; n <= 8; ++n) {
    check(SchemeId::catmull_clark(), make_test_mesh(MeshFamily::Quad, n, 4));
    check(SchemeId::loop(), make_test_mesh(MeshFamily::Tri, n, 4));
    check(SchemeId::modified_loop(testing::synthetic_masks(3, 8)),
          make_test_mesh(MeshFamily::Tri, n, 5));
  }
  check(SchemeId::catmull_clark(), make_quad_grid(8, 8));
  check(SchemeId::loop(), make_tri_grid(8, 8));
  check(SchemeId::catmull_clark(), testing::cube());
  check(SchemeId::loop(), testing::octahedron());
}

TEST_CASE("apply reproduces affine fields on planar meshes") {
  auto affine = [](const Vec3& p) { return 0.75 - 2.0 * p.x() + 3.5 * p.y(); };
  auto check = [&](const SchemeId& scheme, const PolyMesh& poly) {
    HalfEdgeMesh mesh = HalfEdgeMesh::build(poly);
    QuasiInterpolant qi = build(mesh, scheme);
    Eigen::VectorXd c = qi.apply(affine);
    for (const Functional& fn : qi.functionals) {
      double expect = affine(mesh.position(fn.owner));
      CHECK(c[fn.owner] == doctest::Approx(expect).epsilon(1e-11));
    }
    Eigen::VectorXd ones = qi.apply([](const Vec3&) { return 1.0; });
    for (const Functional& fn : qi.functionals)
      CHECK(ones[fn.owner] == doctest::Approx(1.0).epsilon(1e-12));
  };
  check(SchemeId::catmull_clark(), make_test_mesh(MeshFamily::Quad, 3, 4));
  check(SchemeId::loop(), make_test_mesh(MeshFamily::Tri, 8, 4));
  check(SchemeId::loop(), make_tri_grid(6, 6));
}

TEST_CASE("functional serialization") {
  HalfEdgeMesh mesh = HalfEdgeMesh::build(make_test_mesh(MeshFamily::Quad, 4, 4));
  QuasiInterpolant qi = build(mesh, SchemeId::catmull_clark());
  nlohmann::json doc = qi.to_json();
  CHECK(doc["scheme"] == "cc");
  CHECK(doc["functionals"].size() == qi.functionals.size());
  const auto& f0 = doc["functionals"][0];
  CHECK(f0.contains("owner"));
  CHECK(f0["samples"].size() == f0["weights"].size());
}
