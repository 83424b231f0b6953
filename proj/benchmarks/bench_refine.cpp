#include <benchmark/benchmark.h>

#include "subdivqi/analysis.hpp"

using namespace subdivqi;

static void BM_RefineQuad(benchmark::State& state) {
  HalfEdgeMesh mesh = HalfEdgeMesh::build(make_test_mesh(MeshFamily::Quad, 5, 4));
  for (int i = 0; i < state.range(0); ++i) mesh = refine(mesh, SchemeId::catmull_clark()).mesh;
  for (auto _ : state) {
    RefineResult r = refine(mesh, SchemeId::catmull_clark());
    benchmark::DoNotOptimize(r.mesh.vertex_count());
  }
  state.SetItemsProcessed(state.iterations() * mesh.face_count());
}
BENCHMARK(BM_RefineQuad)->Arg(2)->Arg(4);

static void BM_RefineTri(benchmark::State& state) {
  HalfEdgeMesh mesh = HalfEdgeMesh::build(make_test_mesh(MeshFamily::Tri, 7, 4));
  for (int i = 0; i < state.range(0); ++i) mesh = refine(mesh, SchemeId::loop()).mesh;
  for (auto _ : state) {
    RefineResult r = refine(mesh, SchemeId::loop());
    benchmark::DoNotOptimize(r.mesh.vertex_count());
  }
  state.SetItemsProcessed(state.iterations() * mesh.face_count());
}
BENCHMARK(BM_RefineTri)->Arg(2)->Arg(4);

static void BM_LimitPositions(benchmark::State& state) {
  HalfEdgeMesh mesh = HalfEdgeMesh::build(make_test_mesh(MeshFamily::Tri, 7, 4));
  for (int i = 0; i < state.range(0); ++i) mesh = refine(mesh, SchemeId::loop()).mesh;
  Channels pos = mesh.position_channels();
  for (auto _ : state) {
    Channels lim = limit_positions(mesh, pos, SchemeId::loop());
    benchmark::DoNotOptimize(lim.data());
  }
  state.SetItemsProcessed(state.iterations() * mesh.vertex_count());
}
BENCHMARK(BM_LimitPositions)->Arg(3);
