#include <benchmark/benchmark.h>

#include "subdivqi/analysis.hpp"

using namespace subdivqi;

static void BM_BuildProjector(benchmark::State& state) {
  HalfEdgeMesh mesh = HalfEdgeMesh::build(make_test_mesh(MeshFamily::Quad, 5, 4));
  for (int i = 0; i < state.range(0); ++i) mesh = refine(mesh, SchemeId::catmull_clark()).mesh;
  for (auto _ : state) {
    QuasiInterpolant qi = build(mesh, SchemeId::catmull_clark());
    benchmark::DoNotOptimize(qi.functionals.size());
  }
  state.SetItemsProcessed(state.iterations() * mesh.vertex_count());
}
BENCHMARK(BM_BuildProjector)->Arg(1)->Arg(3);

static void BM_ApplyField(benchmark::State& state) {
  HalfEdgeMesh mesh = HalfEdgeMesh::build(make_test_mesh(MeshFamily::Tri, 5, 4));
  for (int i = 0; i < state.range(0); ++i) mesh = refine(mesh, SchemeId::loop()).mesh;
  QuasiInterpolant qi = build(mesh, SchemeId::loop());
  for (auto _ : state) {
    Eigen::VectorXd c = qi.apply(test_function);
    benchmark::DoNotOptimize(c.data());
  }
  state.SetItemsProcessed(state.iterations() * mesh.vertex_count());
}
BENCHMARK(BM_ApplyField)->Arg(2);

static void BM_DenseSamples(benchmark::State& state) {
  SchemeId scheme = SchemeId::catmull_clark();
  HalfEdgeMesh mesh = HalfEdgeMesh::build(make_test_mesh(MeshFamily::Quad, 4, 4));
  QuasiInterpolant qi = build(mesh, scheme);
  Eigen::VectorXd c = qi.apply(test_function);
  for (auto _ : state) {
    SampleSet s = dense_samples(mesh, c, scheme, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(s.points.size());
  }
}
BENCHMARK(BM_DenseSamples)->Arg(3)->Arg(4);
