// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include "ptower/enumerate.hpp"
#include "ptower/kernels.hpp"
#include "ptower/target.hpp"

using namespace ptower;

namespace
{

const std::vector<Expr> &workload()
{
    static const std::vector<Expr> xs = [] {
        std::vector<Expr> out;
        for (unsigned long w = 2; w <= 13; ++w) {
            const auto cls = generate_weight_class(w);
            out.insert(out.end(), cls.begin(), cls.end());
        }
        return out;
    }();
    return xs;
}

void BM_evaluate_serial(benchmark::State &state)
{
    const auto prec = static_cast<mpfr_prec_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_all_serial(workload(), prec, {}));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(workload().size()));
}

void BM_evaluate_omp(benchmark::State &state)
{
    const auto prec = static_cast<mpfr_prec_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_all(workload(), prec, {}));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(workload().size()));
}

void BM_certify_serial(benchmark::State &state)
{
    const Target e = Target::builtin(TargetId::e);
    for (auto _ : state) {
        benchmark::DoNotOptimize(certify_errors_serial(workload(), e, pow10_float(-256), {}));
    }
}

void BM_certify_omp(benchmark::State &state)
{
    const Target e = Target::builtin(TargetId::e);
    for (auto _ : state) {
        benchmark::DoNotOptimize(certify_errors(workload(), e, pow10_float(-256), {}));
    }
}

// The diagonal's workload: digit k of the k-th new value.
struct DigitJob {
    std::vector<Expr> exprs;
    std::vector<std::size_t> ks;
    EvalOptions opts;
};

const DigitJob &digit_job()
{
    static const DigitJob job = [] {
        DigitJob j;
        j.opts.precision_cap = 1 << 14;
        Enumeration en;
        en.extend_to(12);
        for (std::size_t i : en.new_value_indices()) {
            j.exprs.push_back(en.expr_at(i).expr);
            j.ks.push_back(j.exprs.size());
        }
        return j;
    }();
    return job;
}

void BM_digits_serial(benchmark::State &state)
{
    const DigitJob &j = digit_job();
    for (auto _ : state) {
        benchmark::DoNotOptimize(extract_digits_all_serial(j.exprs, j.ks, j.opts));
    }
}

void BM_digits_omp(benchmark::State &state)
{
    const DigitJob &j = digit_job();
    for (auto _ : state) {
        benchmark::DoNotOptimize(extract_digits_all(j.exprs, j.ks, j.opts));
    }
}

} // namespace

BENCHMARK(BM_evaluate_serial)->Arg(128)->Arg(4096)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_evaluate_omp)->Arg(128)->Arg(4096)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_certify_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_certify_omp)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_digits_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_digits_omp)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
