#include <numbers>

#include <benchmark/benchmark.h>

#include "dupin/apps.hpp"
#include "dupin/export/mesh.hpp"

using namespace dupin;

namespace {

const PointSphereComplex P = PointSphereComplex::standard();

void BM_LieInversion(benchmark::State& state)
{
    const LinearSphereComplex a(Vec6(0.3, -0.2, 0.5, 0.1, 0.9, 0.4));
    Vec6 x = lift(EuclidSphere::sphere({0.2, 0.1, -0.3}, 0.7)).rep();
    for (auto _ : state) {
        x = lie_inversion(a, x);
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_LieInversion);

void BM_EvolveTorusGrid(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const DupinCyclide d = cyclide_from_torus(2, 1);
    const EvolutionMap e(curvature_family(d, 1), 0.0, P);
    const Circle c = curvature_circle(d, 1, 0.0, P);
    for (auto _ : state)
        benchmark::DoNotOptimize(evolve_circle(e, c, n, uniform_parameters(n)));
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_EvolveTorusGrid)->Arg(16)->Arg(64)->Arg(256);

void BM_LameMembers(benchmark::State& state)
{
    const DupinCyclide d = cyclide_from_torus(2, 1);
    const LinearSphereComplex a(lift(EuclidSphere::sphere({0.5, 0.3, 0.2}, 0.7)).rep() - 0.7 * P.rep());
    std::vector<double> params;
    for (int k = 0; k < 9; ++k)
        params.push_back(0.1 + 0.3 * k);
    for (auto _ : state)
        benchmark::DoNotOptimize(lame_family(d, a, P, params));
}
BENCHMARK(BM_LameMembers);

void BM_RibaucourCyclide(benchmark::State& state)
{
    const RibaucourPair pair = ribaucour_transform(
        cyclide_from_torus(2, 1), LinearSphereComplex(Vec6(0.3, 0.1, 0.4, 0.2, 1.1, 0.5)));
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ribaucour_cyclide(pair, 1, 0.4, t));
        t += 0.01;
    }
}
BENCHMARK(BM_RibaucourCyclide);

void BM_SubdivideDepth(benchmark::State& state)
{
    const DupinCyclide d = cyclide_from_torus(2, 1);
    const CurvatureSphereFamily fam = curvature_family(d, 1);
    const OrientedSphere s1 = curvature_sphere(fam, 0.0), s2 = curvature_sphere(fam, std::numbers::pi);
    for (auto _ : state)
        benchmark::DoNotOptimize(subdivide(d, s1, s2, static_cast<int>(state.range(0)), P));
}
BENCHMARK(BM_SubdivideDepth)->Arg(3)->Arg(6);

void BM_CyclidicCube(benchmark::State& state)
{
    const LameFamily fam(cyclide_from_torus(2, 1), LinearSphereComplex(basis_vector(5) - basis_vector(4) + 0.7 * P.rep()), P);
    for (auto _ : state)
        benchmark::DoNotOptimize(cyclidic_cube(fam, {{0.3, 1.2}, {0.5, 1.4}, {-6.0, -3.0}}, P));
}
BENCHMARK(BM_CyclidicCube);

void BM_ObjExport(benchmark::State& state)
{
    const DupinCyclide d = cyclide_from_torus(2, 1);
    const EvolutionMap e(curvature_family(d, 1), 0.0, P);
    const SphereGrid g = evolve_circle(e, curvature_circle(d, 1, 0.0, P), 128, uniform_parameters(128));
    const io::QuadMesh m = io::mesh_from_grid(g, true, true);
    for (auto _ : state)
        benchmark::DoNotOptimize(io::to_obj(m));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(m.vertices.size()));
}
BENCHMARK(BM_ObjExport);

} // namespace
BENCHMARK_MAIN();
