#include <benchmark/benchmark.h>

#include "fracprec/amg.hpp"
#include "fracprec/auxprec.hpp"
#include "fracprec/krylov.hpp"
#include "fracprec/spectral.hpp"

namespace
{

using namespace fracprec;

void BM_Assemble(benchmark::State &state)
{
  const MeshLevel mesh = BuildUniformMesh(static_cast<int>(state.range(0)));
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(Assemble(mesh, 0));
  }
  state.SetComplexityN(mesh.NumEdges());
}
BENCHMARK(BM_Assemble)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_LambdaSpectrum(benchmark::State &state)
{
  const AssembledLevel level = Assemble(BuildUniformMesh(static_cast<int>(state.range(0))), 0);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(LambdaSpectrum(level));
  }
  state.counters["dim"] = level.NumV();
}
BENCHMARK(BM_LambdaSpectrum)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_MultigridSetup(benchmark::State &state)
{
  const Discretization disc(static_cast<int>(state.range(0)), 4);
  for (auto _ : state)
  {
    const MultigridData data(disc);
    benchmark::DoNotOptimize(AdditiveMultigrid(data, 0.5).Size());
  }
}
BENCHMARK(BM_MultigridSetup)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_MultigridApply(benchmark::State &state)
{
  const Discretization disc(static_cast<int>(state.range(0)), 4);
  const MultigridData data(disc);
  const AdditiveMultigrid mg(data, 0.5);
  const Eigen::VectorXd d = Eigen::VectorXd::Ones(mg.Size());
  Eigen::VectorXd out;
  for (auto _ : state)
  {
    mg.ApplyRaw(d, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.counters["dim"] = static_cast<double>(mg.Size());
}
BENCHMARK(BM_MultigridApply)->Arg(1)->Arg(2)->Arg(4);

void BM_PcgFractionalHdiv(benchmark::State &state)
{
  const Discretization disc(static_cast<int>(state.range(0)), 4);
  const MultigridData data(disc);
  const SpectralPair lambda = LambdaSpectrum(disc.Finest());
  const AdditiveMultigrid mg(data, 0.5);
  const LinearMap op = FracDualFormMap(lambda, 0.5);
  const VectorTag dual = disc.Finest().Tag(Space::V, Rep::Dual);
  const VectorTag coef = disc.Finest().Tag(Space::V, Rep::Coefficient);
  const TaggedVector x0(coef, Eigen::VectorXd::Ones(mg.Size()));
  int iterations = 0;
  for (auto _ : state)
  {
    const PcgResult r = Pcg(op, mg.AsMap(), TaggedVector::Zero(dual, mg.Size()), x0, 1e-18, 500);
    iterations = r.report.iterations;
  }
  state.counters["iterations"] = iterations;
}
BENCHMARK(BM_PcgFractionalHdiv)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_ExactAuxCondition(benchmark::State &state)
{
  const AssembledLevel level = Assemble(BuildUniformMesh(static_cast<int>(state.range(0))), 0);
  const SpectralPair lambda = LambdaSpectrum(level);
  const SpectralPair laplace = LaplaceSpectrum(level);
  const ExactAuxSpectrum spectrum(level, lambda, laplace);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(spectrum.Condition(-0.5));
  }
}
BENCHMARK(BM_ExactAuxCondition)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
