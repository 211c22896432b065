// Serial reference against the OpenMP kernels on the same batches.

#include "gmdist/batch.hpp"
#include "support.hpp"

#include <benchmark/benchmark.h>

using namespace gmdist;

namespace {

std::vector<HorizontalSurface> surfaces(std::size_t count) {
  testing::Rng rng(7);
  std::vector<HorizontalSurface> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(i % 2 ? testing::random_balanced_surface(rng, {8, 12, 9, true})
                        : testing::random_surface(rng, {8, 12, 9, true}));
  }
  return out;
}

std::vector<batch::SequenceJob> sequences(std::size_t count) {
  testing::Rng rng(8);
  std::vector<batch::SequenceJob> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back({testing::random_slope_cycle(rng, 5, 9), Integer(1), 12});
  return out;
}

std::vector<batch::EnvelopeJob> envelopes(std::size_t count) {
  testing::Rng rng(9);
  std::vector<batch::EnvelopeJob> out;
  for (std::size_t i = 0; i < count; ++i) {
    batch::EnvelopeJob job;
    job.surface = testing::random_balanced_surface(rng, {6, 10, 9, true});
    job.path = testing::random_walk(rng, GainGraph(job.surface), 50);
    job.legs.assign(job.path.crossings.size(), Rational(1));
    job.L = 2;
    out.push_back(std::move(job));
  }
  return out;
}

template <auto Kernel>
void classify(benchmark::State& state) {
  const auto in = surfaces(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(in));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void sequence(benchmark::State& state) {
  const auto in = sequences(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(in, Rational(1), Rational(1)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void envelope(benchmark::State& state) {
  const auto in = envelopes(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(in));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(classify<batch::classify_serial>)->Name("classify/serial")->Arg(256)->Arg(2048);
BENCHMARK(classify<batch::classify>)->Name("classify/omp")->Arg(256)->Arg(2048);
BENCHMARK(sequence<batch::certify_sequences_serial>)->Name("sequence/serial")->Arg(256)->Arg(2048);
BENCHMARK(sequence<batch::certify_sequences>)->Name("sequence/omp")->Arg(256)->Arg(2048);
BENCHMARK(envelope<batch::certify_envelopes_serial>)->Name("envelope/serial")->Arg(64)->Arg(512);
BENCHMARK(envelope<batch::certify_envelopes>)->Name("envelope/omp")->Arg(64)->Arg(512);

BENCHMARK_MAIN();
