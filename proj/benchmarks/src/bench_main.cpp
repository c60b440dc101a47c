// Microbenchmarks for the exact pipeline: Cramer polynomial extraction,
// difference polynomials, root isolation, the end-to-end landscape, and the
// exact-vs-float solver gap (including the extreme-precision discount factors
// the closed-form reduction uses).

#include "bwmdp/blackwell.hpp"
#include "bwmdp/exact_linear.hpp"
#include "bwmdp/generators.hpp"
#include "bwmdp/robust.hpp"
#include "bwmdp/roots.hpp"
#include "bwmdp/solvers.hpp"

#include <benchmark/benchmark.h>

using namespace bwmdp;

namespace {

MDPInstance sized_instance(int n_states) {
    RandomSpec spec;
    spec.n_states = n_states;
    spec.n_actions = 2;
    spec.denominator = 4;
    spec.reward_denominator = 4;
    spec.reward_range = 8;
    spec.seed = 7;
    return random_instance(spec);
}

void BM_value_polys(benchmark::State& state) {
    MDPInstance M = sized_instance(static_cast<int>(state.range(0)));
    Policy pi(static_cast<std::size_t>(M.n_states), 0);
    for (auto _ : state) {
        ValuePolys vp = value_polys(M, pi);
        benchmark::DoNotOptimize(vp);
    }
}
BENCHMARK(BM_value_polys)->Arg(3)->Arg(5)->Arg(8);

void BM_difference_poly(benchmark::State& state) {
    MDPInstance M = sized_instance(static_cast<int>(state.range(0)));
    Policy a(static_cast<std::size_t>(M.n_states), 0);
    Policy b(static_cast<std::size_t>(M.n_states), 1);
    ValuePolys va = value_polys(M, a), vb = value_polys(M, b);
    for (auto _ : state) {
        Poly p = difference_poly_cached(va, vb, 0);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_difference_poly)->Arg(3)->Arg(5)->Arg(8);

void BM_isolate_roots(benchmark::State& state) {
    MDPInstance M = sized_instance(static_cast<int>(state.range(0)));
    Policy a(static_cast<std::size_t>(M.n_states), 0);
    Policy b(static_cast<std::size_t>(M.n_states), 1);
    IntPoly q = scaled_integer_poly(M, difference_poly(M, a, b, 0));
    for (auto _ : state) {
        UnitRoots r = isolate_unit_roots(q);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_isolate_roots)->Arg(3)->Arg(5)->Arg(8);

void BM_exact_policy_iteration(benchmark::State& state) {
    MDPInstance M = sized_instance(static_cast<int>(state.range(0)));
    Rational gamma(9, 10);
    for (auto _ : state) {
        ExactSolveResult r = exact_policy_iteration(M, gamma);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_exact_policy_iteration)->Arg(3)->Arg(5)->Arg(8);

void BM_float_value_iteration(benchmark::State& state) {
    MDPInstance M = sized_instance(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        FloatSolveResult r = float_value_iteration(M, 0.9, 1e-12);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_float_value_iteration)->Arg(3)->Arg(5)->Arg(8);

// exact policy iteration at the reduction's discount factor 1 - eta, whose
// denominator has hundreds of digits: the price of the closed-form route
void BM_reduction_solve(benchmark::State& state) {
    MDPInstance M = sized_instance(static_cast<int>(state.range(0)));
    Rational gamma = eta_bound(M).threshold;
    for (auto _ : state) {
        ExactSolveResult r = exact_policy_iteration(M, gamma);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_reduction_solve)->Arg(2)->Arg(3);

void BM_blackwell_landscape(benchmark::State& state) {
    MDPInstance M = example_one();
    for (auto _ : state) {
        BlackwellAnalysis A = exact_blackwell_analysis(M);
        benchmark::DoNotOptimize(A);
    }
}
BENCHMARK(BM_blackwell_landscape);

void BM_inner_min(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    RationalVector nominal(static_cast<std::size_t>(n), Rational(1, n));
    RationalVector v;
    for (int i = 0; i < n; ++i) v.emplace_back((i * 7) % 5 - 2);
    Rational alpha(1, 8);
    const bool l1 = state.range(1) == 1;
    for (auto _ : state) {
        InnerMinResult r = l1 ? inner_min_l1(nominal, alpha, v) : inner_min_linf(nominal, alpha, v);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_inner_min)->Args({4, 0})->Args({4, 1})->Args({16, 0})->Args({16, 1});

void BM_robust_landscape(benchmark::State& state) {
    RandomSpec spec;
    spec.n_states = 2;
    spec.n_actions = 2;
    spec.denominator = 4;
    spec.reward_denominator = 4;
    spec.reward_range = 8;
    spec.seed = 11;
    MDPInstance M = random_instance(spec);
    M.uncertainty = random_uncertainty(M, BallNorm::Linf, 1, 12);
    validate(M);
    for (auto _ : state) {
        RobustBlackwellAnalysis A = robust_blackwell_analysis(M);
        benchmark::DoNotOptimize(A);
    }
}
BENCHMARK(BM_robust_landscape);

} // namespace

BENCHMARK_MAIN();
