#include <benchmark/benchmark.h>

#include "padictree/datum.hpp"
#include "padictree/enumerate.hpp"
#include "padictree/gamma.hpp"
#include "padictree/padic.hpp"
#include "padictree/poincare.hpp"
#include "padictree/realize.hpp"
#include "padictree/trees.hpp"

using namespace padictree;

namespace {

PolySystem cusp_system(long p) {
  PolySystem s;
  s.p = p;
  s.n = 2;
  s.polys = {Polynomial(2, {{Int(1), {3, 0}}, {Int(-1), {0, 2}}})};
  s.witnesses = {{Rat(0), Rat(0)}};
  return s;
}

void BM_LiftedCusp(benchmark::State& st) {
  const PolySystem s = cusp_system(5);
  for (auto _ : st) benchmark::DoNotOptimize(lifted_tree(s, static_cast<int>(st.range(0)), 6).tree.node_count());
}
BENCHMARK(BM_LiftedCusp)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

void BM_NaiveCusp(benchmark::State& st) {
  const PolySystem s = cusp_system(5);
  for (auto _ : st) benchmark::DoNotOptimize(naive_tree(s, static_cast<int>(st.range(0))).node_count());
}
BENCHMARK(BM_NaiveCusp)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

void BM_CanonicalFullTree(benchmark::State& st) {
  const TruncTree t = full_tree(2, Int(3), static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(canonical_code(t, false));
  st.SetItemsProcessed(static_cast<long>(st.iterations() * t.node_count()));
}
BENCHMARK(BM_CanonicalFullTree)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_CanonicalCusp(benchmark::State& st) {
  const TruncTree t = expand(builtin("cusp", Int(5)), {}, Int(5), static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(canonical_code(t, true));
}
BENCHMARK(BM_CanonicalCusp)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_CellGF(benchmark::State& st) {
  GammaCell c = GammaCell::orthant(2);
  c.coords[1].lo = LinearFn::coordinate(2, 0).scaled(Rat(1, 2));
  c.coords[1].hi = LinearFn::coordinate(2, 0).scaled(Rat(3)) + LinearFn::constant(2, 2);
  c.coords[1].rho = st.range(0);
  for (auto _ : st) benchmark::DoNotOptimize(cell_gf(c));
}
BENCHMARK(BM_CellGF)->DenseRange(1, 4);

void BM_DatumPoincareCusp(benchmark::State& st) {
  const TreeDatum d = builtin("cusp", Int(5));
  for (auto _ : st) benchmark::DoNotOptimize(datum_poincare(d, Int(5)));
}
BENCHMARK(BM_DatumPoincareCusp)->Unit(benchmark::kMillisecond);

void BM_EthRoot(benchmark::State& st) {
  const Int p(3);
  const long prec = st.range(0);
  Int z = 1 + 3 * Int(123456789), y;
  const Int m = pow_int(p, prec);
  mpz_powm_ui(y.get_mpz_t(), z.get_mpz_t(), 6, m.get_mpz_t());
  const PadicApprox Y(p, prec, y);
  for (auto _ : st) benchmark::DoNotOptimize(eth_root_lift(Y, 6, 2));
}
BENCHMARK(BM_EthRoot)->RangeMultiplier(4)->Range(16, 1024);

void BM_PadicMul(benchmark::State& st) {
  const PadicApprox a(Int(5), st.range(0), Int(123456789)), b(Int(5), st.range(0), Int(987654321));
  for (auto _ : st) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_PadicMul)->RangeMultiplier(4)->Range(16, 1024);

void BM_RealizeCusp(benchmark::State& st) {
  const TreeDatum d = builtin("cusp", Int(5));
  for (auto _ : st) benchmark::DoNotOptimize(realize(d, Int(5), static_cast<int>(st.range(0))).points.size());
}
BENCHMARK(BM_RealizeCusp)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
