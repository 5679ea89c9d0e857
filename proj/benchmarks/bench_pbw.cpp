#include "wsuper/modular.hpp"
#include "wsuper/walgebra.hpp"

#include <benchmark/benchmark.h>

using namespace wsuper;

namespace {

NilpotentFrame<Rat> gl21_frame() {
    auto g = build_gl<Rat>(2, 1);
    int e12 = -1;
    for (int i = 0; i < g.dim(); ++i)
        if (g.names[i] == "E1_2") e12 = i;
    return build_frame(g, g.basis_vec(e12));
}

void bm_normal_form(benchmark::State& state) {
    auto fr = gl21_frame();
    auto ctx = PBWContext<Rat>::build(fr);
    int n = ctx.letter_count();
    unsigned long seed = 99;
    auto rnd = [&](int k) {
        seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<int>((seed >> 33) % k);
    };
    std::vector<std::vector<int>> words;
    for (int i = 0; i < 64; ++i) {
        std::vector<int> w;
        for (int j = 0; j < static_cast<int>(state.range(0)); ++j) w.push_back(rnd(n));
        words.push_back(std::move(w));
    }
    size_t i = 0;
    for (auto _ : state) {
        auto p = ctx.normal_form_word(words[i++ % words.size()]);
        benchmark::DoNotOptimize(p);
    }
}

void bm_invariant_solve(benchmark::State& state) {
    auto fr = gl21_frame();
    for (auto _ : state) {
        // fresh context: the straightening cache dominates repeated solves
        auto ctx = PBWContext<Rat>::build(fr);
        auto inv = invariants_up_to(ctx, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(inv);
    }
}

void bm_generators_and_relations(benchmark::State& state) {
    auto fr = gl21_frame();
    for (auto _ : state) {
        auto ctx = PBWContext<Rat>::build(fr);
        WAlgebra<Rat> w(ctx, 8);
        w.compute_generators();
        auto table = commutator_table(w);
        benchmark::DoNotOptimize(table);
    }
}

void bm_baby_verma(benchmark::State& state) {
    auto g = build_osp12n<Rat>(1);
    Vec<Rat> e = g.basis_vec(0);
    auto fr = build_frame(g, e);
    auto ma = reduce_mod_p(g, static_cast<long>(state.range(0)));
    auto mfr = reduce_frame(fr, static_cast<long>(state.range(0)));
    for (auto _ : state) {
        BabyVerma z(ma, mfr, Fp(0, state.range(0)));
        std::vector<Matrix<Fp>> acts;
        for (int i = 0; i < ma.g.dim(); ++i) acts.push_back(z.action(ma.g.basis_vec(i)));
        benchmark::DoNotOptimize(acts);
    }
}

} // namespace

BENCHMARK(bm_normal_form)->Arg(4)->Arg(6)->Arg(8);
BENCHMARK(bm_invariant_solve)->Arg(4)->Arg(6)->Arg(8);
BENCHMARK(bm_generators_and_relations);
BENCHMARK(bm_baby_verma)->Arg(5)->Arg(7);

BENCHMARK_MAIN();
