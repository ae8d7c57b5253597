#include <benchmark/benchmark.h>

#include "hshift/language.hpp"
#include "hshift/realize.hpp"
#include "hshift/zexact.hpp"

using namespace hshift;

namespace {

  Subshift golden() {
    auto g = Group::z_lattice(1);
    return Subshift(Alphabet::explicit_symbols({"0", "1"}), Subgroup::whole(g),
                    {Pattern(g, {{GroupElement{0}, 1}, {GroupElement{1}, 1}})});
  }

  std::vector<GroupElement> interval(std::int64_t n) {
    std::vector<GroupElement> w;
    for (std::int64_t i = 0; i < n; ++i) {
      w.push_back(GroupElement{i});
    }
    return w;
  }

  // Z^2 with no two horizontally or vertically adjacent equal symbols.
  Subshift checkerboard() {
    auto                 g = Group::z_lattice(2);
    std::vector<Pattern> f;
    for (Symbol a : {0u, 1u}) {
      f.emplace_back(g, std::vector<Cell>{{GroupElement{0, 0}, a}, {GroupElement{1, 0}, a}});
      f.emplace_back(g, std::vector<Cell>{{GroupElement{0, 0}, a}, {GroupElement{0, 1}, a}});
    }
    return Subshift(Alphabet::explicit_symbols({"0", "1"}), Subgroup::whole(g), f);
  }

}  // namespace

static void BM_GoldenWindowZExact(benchmark::State& state) {
  auto x = golden();
  auto w = interval(state.range(0));
  LanguageOptions o;
  o.method = Method::z_exact;
  for (auto _ : state) {
    benchmark::DoNotOptimize(window_language(x, w, o).count(Verdict::State::certified_allowed));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GoldenWindowZExact)->DenseRange(4, 12, 4);

static void BM_GoldenWindowInflation(benchmark::State& state) {
  auto x = golden();
  auto w = interval(8);
  LanguageOptions o;
  o.radius = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(window_language(x, w, o).count(Verdict::State::unknown));
  }
}
BENCHMARK(BM_GoldenWindowInflation)->Arg(1)->Arg(4)->Arg(8);

static void BM_DeBruijnOracle(benchmark::State& state) {
  auto                 g = Group::z_lattice(1);
  std::vector<Pattern> f{Pattern(g, {{GroupElement{0}, 1}, {GroupElement{2}, 1}}),
                         Pattern(g, {{GroupElement{0}, 0}, {GroupElement{1}, 0}, {GroupElement{3}, 0}})};
  auto x = Subshift(Alphabet::explicit_symbols({"0", "1"}),
                    Subgroup::lattice(g, {{state.range(0)}}), f);
  for (auto _ : state) {
    ZExactOracle z(x);
    benchmark::DoNotOptimize(z.graph().block());
  }
}
BENCHMARK(BM_DeBruijnOracle)->Arg(1)->Arg(2)->Arg(3);

static void BM_CheckerboardExtend(benchmark::State& state) {
  auto x = checkerboard();
  auto p = Pattern(x.group_ptr(), {{GroupElement{0, 0}, 0}});
  auto t = x.group().ball(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(extend_pattern(x, p, t).trace.nodes);
  }
}
BENCHMARK(BM_CheckerboardExtend)->Arg(2)->Arg(4)->Arg(6);

static void BM_BruteForceCyclic(benchmark::State& state) {
  auto g = Group::cyclic(static_cast<std::uint32_t>(state.range(0)));
  auto x = Subshift(Alphabet::explicit_symbols({"0", "1"}), Subgroup::whole(g),
                    {Pattern(g, {{GroupElement{0}, 1}, {GroupElement{1}, 1}})});
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_subshift(x).tables.size());
  }
}
BENCHMARK(BM_BruteForceCyclic)->DenseRange(4, 16, 4);

static void BM_DeterminantCompactness(benchmark::State& state) {
  auto                      gl = make_gl2(3);
  std::vector<GroupElement> sl;
  std::vector<Pattern>      f;
  for (auto const& g : gl.group->elements()) {
    auto d = gl.determinant(g);
    if (d == 1) {
      sl.push_back(g);
    }
    f.emplace_back(gl.group, std::vector<Cell>{{g, d == 1 ? Symbol{1} : Symbol{0}}});
  }
  auto x = Subshift(Alphabet::explicit_symbols({"1", "2"}), Subgroup::elements(gl.group, sl), f);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compactness_check(x, 2, 48).summary);
  }
}
BENCHMARK(BM_DeterminantCompactness);
BENCHMARK_MAIN();
