#include <benchmark/benchmark.h>

#include "torsionlab/character.hpp"
#include "torsionlab/kernels.hpp"

using namespace torsionlab;
using kernels::Exec;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(0) ? Exec::Parallel : Exec::Serial; }

void label(benchmark::State& s) { s.SetLabel(s.range(0) ? "parallel" : "serial"); }

void BM_PsiGrid(benchmark::State& s)
{
    std::vector<double> taus;
    for (int i = 0; i < 256; ++i) taus.push_back((i + 0.5) / 256.0);
    for (auto _ : s) benchmark::DoNotOptimize(kernels::psi_grid(cplx(0.6, 0.8), 0.3, taus, exec_of(s)));
    label(s);
}

void BM_ClassStructureConstants(benchmark::State& s)
{
    const GroupPtr g = FiniteGroup::symmetric(5);
    for (auto _ : s) benchmark::DoNotOptimize(kernels::class_structure_constants(*g, exec_of(s)));
    label(s);
}

void BM_IsotypicProjector(benchmark::State& s)
{
    const GroupPtr g = FiniteGroup::symmetric(5);
    const UnitaryRep v = UnitaryRep::regular(g);
    const Irreducible pi = character_table(g).back();
    for (auto _ : s) benchmark::DoNotOptimize(kernels::isotypic_projector(v, pi, exec_of(s)));
    label(s);
}

void BM_HomomorphismDefect(benchmark::State& s)
{
    const UnitaryRep v = UnitaryRep::regular(FiniteGroup::dihedral(12));
    for (auto _ : s) benchmark::DoNotOptimize(kernels::homomorphism_defect(v, exec_of(s)));
    label(s);
}

}  // namespace

BENCHMARK(BM_PsiGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassStructureConstants)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IsotypicProjector)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HomomorphismDefect)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
