#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "mfse/estimators.hpp"
#include "mfse/filterbank.hpp"
#include "mfse/hermitian.hpp"
#include "mfse/mf_filters.hpp"
#include "mfse/mf_model.hpp"
#include "mfse/pipeline.hpp"
#include "mfse/synth.hpp"

using namespace mfse;

namespace {

HermitianMatrix make_hpd(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  FactorMatrix h(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) h.at(i, j) = cdouble{g(rng), g(rng)};
  }
  HermitianMatrix a = hermitian_compose(h);
  return diag_load(a, 0.05 * a.trace() / n);
}

IfcVector make_ifc(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  IfcVector ifc;
  ifc.order = n;
  for (int i = 0; i < n; ++i) ifc.v[i] = cdouble{g(rng), g(rng)};
  ifc.v[0] = cdouble{1.0, 0.0};
  return ifc;
}

void bm_cholesky(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const HermitianMatrix a = make_hpd(n, 42);
  for (auto _ : state) {
    auto f = HpdFactorization::decompose(a);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(bm_cholesky)->Arg(2)->Arg(5)->Arg(8)->Arg(16);

void bm_solve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const HermitianMatrix a = make_hpd(n, 43);
  const auto f = HpdFactorization::decompose(a);
  const IfcVector ifc = make_ifc(n, 44);
  std::vector<cdouble> rhs(ifc.get().begin(), ifc.get().end());
  for (auto _ : state) {
    auto x = f.solve(rhs);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(bm_solve)->Arg(2)->Arg(5)->Arg(8)->Arg(16);

void bm_accumulate_outer(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  HermitianMatrix acc(n);
  std::vector<cdouble> frame(n, cdouble{0.3, -0.4});
  for (auto _ : state) {
    acc = accumulate_outer(acc, frame, 0.96, 0.04);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(bm_accumulate_outer)->Arg(5);

void bm_mvdr_resolve(benchmark::State& state) {
  const auto kind = static_cast<CovKind>(state.range(0));
  const int n = 5;
  const HermitianMatrix a = make_hpd(n, 45);
  const IfcVector ifc = make_ifc(n, 46);
  CovParameterization payload = CovParameterization::direct(a);
  if (kind != CovKind::Direct) {
    const auto f = HpdFactorization::decompose(a);
    switch (kind) {
      case CovKind::Inverse:
        payload = CovParameterization::inverse(f.inverse());
        break;
      case CovKind::Hermitian:
        payload = CovParameterization::hermitian(psd_factor(a));
        break;
      default:
        payload = CovParameterization::hermitian_of_inverse(
            f.inverse_factor());
        break;
    }
  }
  for (auto _ : state) {
    auto w = mvdr_weights(resolve_cov(payload), ifc);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(bm_mvdr_resolve)->Arg(0)->Arg(1)->Arg(2)->Arg(3);

void bm_analyze(benchmark::State& state) {
  FilterbankConfig cfg;
  const auto x = white_noise(47, cfg.sample_rate);
  for (auto _ : state) {
    auto spec = analyze(x, cfg);
    benchmark::DoNotOptimize(spec);
  }
  state.SetItemsProcessed(state.iterations() * x.size());
}
BENCHMARK(bm_analyze);

void bm_synthesize(benchmark::State& state) {
  FilterbankConfig cfg;
  const auto spec = analyze(white_noise(48, cfg.sample_rate), cfg);
  for (auto _ : state) {
    auto y = synthesize(spec, cfg);
    benchmark::DoNotOptimize(y);
  }
  state.SetItemsProcessed(state.iterations() * cfg.sample_rate);
}
BENCHMARK(bm_synthesize);

void bm_pipeline_second(benchmark::State& state) {
  const auto clip = synthetic_corpus(49, 1, 1.0, 24000).front();
  PipelineConfig cfg;
  cfg.filter = FilterKind::MvdrNoise;
  cfg.high_band = HighBandMode::OracleGain;
  const std::span<const double> clean(clip.clean);
  const std::span<const double> noise(clip.noise);
  for (auto _ : state) {
    auto result = enhance_stream(clip.noisy, clean, noise, cfg);
    benchmark::DoNotOptimize(result);
  }
  state.SetItemsProcessed(state.iterations() * clip.noisy.size());
}
BENCHMARK(bm_pipeline_second);

}  // namespace

BENCHMARK_MAIN();
