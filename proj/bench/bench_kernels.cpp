// Parallel kernels against their serial references. Multiply-back checks on
// divisions are switched off here only.

#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "contexts.hpp"
#include "demazure/dualalgebra.hpp"

using namespace demazure;
using testctx::Law;

namespace {

std::shared_ptr<const DemazureAlgebra> algebra(const char* type, Law law, int prec) {
    auto ctx = testctx::make(type, "sc", law, prec);
    return std::make_shared<const DemazureAlgebra>(std::make_shared<const TwistedAlgebra>(ctx));
}

struct OperatorFixture {
    ContextPtr ctx;
    TruncSeries f;
    explicit OperatorFixture(int prec) : ctx(testctx::make("G2", "sc", Law::Multiplicative, prec)) {
        std::mt19937_64 rng(1);
        f = sample_series(*ctx, rng, 40, prec);
    }
};

void BM_DemazureApply(benchmark::State& st) {
    OperatorFixture fx(static_cast<int>(st.range(0)));
    const MonomialOperator& op = fx.ctx->demazure_operator(fx.ctx->datum().simple_root(0));
    for (auto _ : st) benchmark::DoNotOptimize(op.apply(fx.f));
}

void BM_DemazureApplySerial(benchmark::State& st) {
    OperatorFixture fx(static_cast<int>(st.range(0)));
    const MonomialOperator& op = fx.ctx->demazure_operator(fx.ctx->datum().simple_root(0));
    for (auto _ : st) benchmark::DoNotOptimize(op.apply_serial(fx.f));
}

void BM_DemazureByDivision(benchmark::State& st) {
    OperatorFixture fx(static_cast<int>(st.range(0)));
    set_division_verification(false);
    const int root = fx.ctx->datum().simple_root(0);
    for (auto _ : st) benchmark::DoNotOptimize(fx.ctx->demazure_by_division(root, fx.f));
    set_division_verification(true);
}

struct DualFixture {
    std::unique_ptr<DualAlgebra> dual;
    DualElem a;
    DualElem b;
    explicit DualFixture(const char* type) {
        dual = std::make_unique<DualAlgebra>(algebra(type, Law::Multiplicative, 10));
        std::mt19937_64 rng(2);
        a = dual->ev(sample_series(dual->ctx(), rng, 8, 4));
        b = dual->ev(sample_series(dual->ctx(), rng, 8, 4));
    }
};

void BM_DualMul(benchmark::State& st) {
    static DualFixture fx("G2");
    for (auto _ : st) benchmark::DoNotOptimize(fx.dual->mul(fx.a, fx.b));
}

void BM_DualMulSerial(benchmark::State& st) {
    static DualFixture fx("G2");
    for (auto _ : st) benchmark::DoNotOptimize(fx.dual->mul_serial(fx.a, fx.b));
}

void BM_CoproductTable(benchmark::State& st) {
    for (auto _ : st) {
        auto d = algebra("B2", Law::Multiplicative, static_cast<int>(st.range(0)));
        benchmark::DoNotOptimize(d->coproduct_table());
    }
}

}  // namespace

BENCHMARK(BM_DemazureApply)->Arg(12)->Arg(20)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_DemazureApplySerial)->Arg(12)->Arg(20)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_DemazureByDivision)->Arg(12)->Arg(20)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_DualMul)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DualMulSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoproductTable)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
