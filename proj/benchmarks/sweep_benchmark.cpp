#include "tssb/generative.hpp"
#include "tssb/updates.hpp"

#include <benchmark/benchmark.h>

using namespace tssb;

namespace {

vb::Problem make_problem(int k, int d, int p, std::size_t n, unsigned threads) {
  const TreeShape shape(k, d);
  const Hyperparams hyper = Hyperparams::uniform(shape, p, 3.0, 1.0, 0.5,
                                                 p + 4.0, 0.05, p + 2.0, 0.1);
  const ModelParams params = sample_parameters(shape, hyper, 7);
  return vb::Problem(shape, hyper, sample_dataset(params, n, 8).points,
                     Executor(threads));
}

// One coordinate-ascent sweep; args are n and the thread count.
void BM_Sweep(benchmark::State &bs) {
  const vb::Problem problem =
      make_problem(4, 3, 16, static_cast<std::size_t>(bs.range(0)),
                   static_cast<unsigned>(bs.range(1)));
  vb::VariationalState state = vb::init_state(problem, 1);
  vb::SweepCache cache = vb::make_cache(problem, state);
  for (auto _ : bs)
    vb::sweep(problem, state, cache);
  bs.SetItemsProcessed(bs.iterations() * bs.range(0));
}
BENCHMARK(BM_Sweep)
    ->ArgsProduct({{1000, 2000, 4000, 8000}, {1, 4}})
    ->Unit(benchmark::kMillisecond);

void BM_TreeRecursion(benchmark::State &bs) {
  const vb::Problem problem =
      make_problem(2, static_cast<int>(bs.range(0)), 2, 500, 1);
  vb::VariationalState state = vb::init_state(problem, 1);
  vb::SweepCache cache = vb::make_cache(problem, state);
  vb::compute_phi_zeta(problem, cache);
  for (auto _ : bs)
    vb::update_q_T(problem, state, cache);
}
BENCHMARK(BM_TreeRecursion)->DenseRange(2, 8, 2)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
