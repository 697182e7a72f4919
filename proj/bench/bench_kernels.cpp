#include <benchmark/benchmark.h>

#include "relcell/annular.hpp"
#include "relcell/usl2.hpp"

using namespace relcell;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_usl2_table(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(build_usl2(5, exec_of(state)));
}
BENCHMARK(BM_usl2_table)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_annular_table(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(build_annular(2, FieldSpec::rationals(), exec_of(state)));
}
BENCHMARK(BM_annular_table)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_verify_annular(benchmark::State& state) {
    auto A = build_annular(2);
    VerifyOptions opt;
    opt.exec = exec_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(verify_cell_datum(A.datum, opt));
}
BENCHMARK(BM_verify_annular)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_frobenius_gram(benchmark::State& state) {
    auto A = build_annular(2);
    for (auto _ : state) benchmark::DoNotOptimize(frobenius_gram(A, exec_of(state)));
}
BENCHMARK(BM_frobenius_gram)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_surgery_k3(benchmark::State& state) {
    auto A = build_annular(3);
    std::size_t i = 0;
    for (auto _ : state) {
        std::size_t a = (i * 7919) % A.dim(), b = (i * 104729) % A.dim();
        benchmark::DoNotOptimize(surgery_product(A.basis[a], A.basis[b]));
        ++i;
    }
}
BENCHMARK(BM_surgery_k3);

}  // namespace

BENCHMARK_MAIN();
