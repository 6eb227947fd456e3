#include "symcensus/abelian.hpp"
#include "symcensus/census.hpp"
#include "symcensus/cm.hpp"
#include "symcensus/local_field.hpp"
#include "symcensus/modforms.hpp"
#include "symcensus/weil_deligne.hpp"

#include <benchmark/benchmark.h>

#include <numeric>

namespace {

// Unit group of Z/n via the generic structure builder.
static void BM_unit_group_structure(benchmark::State& state) {
    const symcensus::Int n = state.range(0);
    std::vector<symcensus::ElemKey> elems;
    for (symcensus::Int a = 1; a < n; ++a)
        if (std::gcd(a, n) == 1) elems.push_back(static_cast<symcensus::ElemKey>(a));
    auto mul = [n](symcensus::ElemKey a, symcensus::ElemKey b) {
        return static_cast<symcensus::ElemKey>((a * b) % n);
    };
    for (auto _ : state) {
        auto g = symcensus::group_from_multiplication(elems, mul);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(BM_unit_group_structure)->Arg(257)->Arg(4096);

// Curve data at prime level, bypassing the dimension memo.
static void BM_curve_geometry(benchmark::State& state) {
    const symcensus::Int level = state.range(0);
    for (auto _ : state) {
        auto geo = symcensus::curve_geometry(level);
        benchmark::DoNotOptimize(geo);
    }
}
BENCHMARK(BM_curve_geometry)->Arg(97)->Arg(1009)->Arg(720720);

// Full symmetric power decomposition of a ramified supercuspidal parameter.
static void BM_sym_power(benchmark::State& state) {
    const auto field = symcensus::ramified_quadratic(7, false);
    const auto& quot = symcensus::unit_quotient(field, 2);
    std::vector<symcensus::QmodZ> images;
    for (symcensus::Int d : quot.group()->invariant_factors()) images.emplace_back(1, d);
    const symcensus::LocalCharacter eta(field, 2, images, symcensus::QmodZ::zero());
    const auto pi = symcensus::Gl2Parameter::induced(eta);
    for (auto _ : state) {
        auto data = symcensus::sym_power_certified(pi, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(data);
    }
}
BENCHMARK(BM_sym_power)->Arg(2)->Arg(8);

// Form class group, including the composition-table cross-check.
static void BM_class_group(benchmark::State& state) {
    const symcensus::Int d = -state.range(0);
    for (auto _ : state) {
        auto field = symcensus::class_group(d);
        benchmark::DoNotOptimize(field);
    }
}
BENCHMARK(BM_class_group)->Arg(23)->Arg(9923);

// Residue units modulo a split prime power, the ray character substrate.
static void BM_ray_unit_group(benchmark::State& state) {
    const auto field = symcensus::class_group(-4);
    const auto modulus = symcensus::ideals_of_norm(field, 5 * 5 * 5)[0];
    for (auto _ : state) {
        auto g = symcensus::ray_unit_group(field, modulus);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(BM_ray_unit_group);

// One census row end to end (newform sums plus the induced-form count).
static void BM_census_row(benchmark::State& state) {
    for (auto _ : state) {
        auto rows = symcensus::census(12, 2, static_cast<symcensus::Int>(state.range(0)), 1);
        benchmark::DoNotOptimize(rows);
    }
}
BENCHMARK(BM_census_row)->Arg(13)->Arg(97);

}  // namespace

BENCHMARK_MAIN();
