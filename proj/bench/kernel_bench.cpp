// Serial reference vs OpenMP for each kernel. Run with
//   OMP_NUM_THREADS=<k> ./build/bench/kernel_bench

#include <benchmark/benchmark.h>

#include "jointensor/dense.hpp"
#include "jointensor/kernels.hpp"
#include "jointensor/rank.hpp"

using namespace jointensor;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(0) == 0 ? Exec::serial : Exec::parallel; }

void label(benchmark::State& st) { st.SetLabel(st.range(0) == 0 ? "serial" : "omp"); }

void BM_entries(benchmark::State& st) {
  const auto S = range_subset(Lattice::divisor(), static_cast<std::size_t>(st.range(1)));
  const auto f = Valuation::identity();
  const auto d = static_cast<std::size_t>(st.range(2));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::join_tensor_entries<double>(S, f, d, exec_of(st)));
  label(st);
}
BENCHMARK(BM_entries)->ArgsProduct({{0, 1}, {8, 12}, {6}})->Unit(benchmark::kMillisecond);

void BM_contract(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(1));
  const std::size_t d = 6;
  const auto A = materialize_dense<double>(range_subset(Lattice::divisor(), n), Valuation::identity(), d);
  const std::vector<double> x(n, 0.5);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::contract_all_but_first<double>(A.data(), n, d, x, exec_of(st)));
  label(st);
}
BENCHMARK(BM_contract)->ArgsProduct({{0, 1}, {8, 12}})->Unit(benchmark::kMillisecond);

void BM_rank(benchmark::State& st) {
  // the k = 3 unfolding of the LCM tensor; entries are integers
  const auto n = static_cast<std::size_t>(st.range(1));
  const auto A = materialize_dense<mpq_class>(range_subset(Lattice::divisor(), n), Valuation::identity(), 6);
  const auto M = unfolding(A, 3);
  std::vector<mpz_class> z(M.data.size());
  for (std::size_t t = 0; t < z.size(); ++t) z[t] = M.data[t].get_num();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::fraction_free_rank(z, M.rows, M.cols, exec_of(st)));
  label(st);
}
BENCHMARK(BM_rank)->ArgsProduct({{0, 1}, {5, 6}})->Unit(benchmark::kMillisecond);

void BM_middle_nnz(benchmark::State& st) {
  const auto S = range_subset(Lattice::divisor(), static_cast<std::size_t>(st.range(1)));
  const auto f = Valuation::identity();
  const std::size_t d = 10, left = d / 2, right = d - left - 1;
  const JoinClosure closure(S, left + 1);
  for (auto _ : st)
    benchmark::DoNotOptimize(kernels::middle_core_nnz<double>(closure, f, left, right, exec_of(st)));
  label(st);
}
BENCHMARK(BM_middle_nnz)->ArgsProduct({{0, 1}, {10, 16}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
