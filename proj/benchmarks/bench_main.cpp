#include <benchmark/benchmark.h>

#include "bmetro/bounds.hpp"
#include "bmetro/fisher.hpp"
#include "bmetro/master_equation.hpp"
#include "bmetro/states.hpp"
#include "bmetro/thermal_channel.hpp"

namespace {

using namespace bmetro;

void BM_LindbladRhs(benchmark::State& state) {
  const FockSpace space(static_cast<int>(state.range(0)));
  const LindbladModel model(SqueezingDrive{0.2}, 1.0, 0.1, Parameter::squeezing);
  const LindbladGenerator gen(model, space);
  const Operator rho = density(coherent_vector(space, Complex(1.5, 0.5)));
  for (auto _ : state) benchmark::DoNotOptimize(gen.apply(rho));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LindbladRhs)->RangeMultiplier(2)->Range(48, 192)->Complexity();

void BM_IntegrateWithSensitivity(benchmark::State& state) {
  const FockSpace space(static_cast<int>(state.range(0)));
  const auto model = LindbladModel::for_target(Parameter::frequency, 1.0, 0.1);
  const Operator rho0 = density(coherent_vector(space, Complex(0.0, 2.0)));
  const Operator zero = Operator::Zero(space.dim(), space.dim());
  for (auto _ : state) benchmark::DoNotOptimize(integrate_with_sensitivity(rho0, zero, model, 1.0, space));
}
BENCHMARK(BM_IntegrateWithSensitivity)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_ThermalMixDistribution(benchmark::State& state) {
  ChannelSpec spec;
  spec.kappa = 0.5;
  spec.n_env = 0.3;
  const int n_in = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(thermal_mix_distribution(n_in, spec));
}
BENCHMARK(BM_ThermalMixDistribution)->Arg(5)->Arg(20)->Arg(50);

void BM_SldQfi(benchmark::State& state) {
  const FockSpace space(static_cast<int>(state.range(0)));
  const double n = 0.5, h = 1e-5;
  const Operator rho = thermal_density(space, n);
  const Operator drho = (thermal_density(space, n + h) - thermal_density(space, n - h)) / (2 * h);
  for (auto _ : state) benchmark::DoNotOptimize(sld_qfi(rho, drho));
}
BENCHMARK(BM_SldQfi)->Arg(40)->Arg(80)->Arg(120)->Unit(benchmark::kMillisecond);

void BM_NumericH(benchmark::State& state) {
  const FockSpace space(static_cast<int>(state.range(0)));
  const auto model = LindbladModel::for_target(Parameter::squeezing, 1.0, 0.2);
  const Operator rho = poisson_density(space, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(numeric_h_optimization(model, rho, space));
}
BENCHMARK(BM_NumericH)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
