#include <benchmark/benchmark.h>

#include "obstructor/brauer.hpp"
#include "obstructor/extensions.hpp"
#include "obstructor/hilbert.hpp"
#include "obstructor/scenario.hpp"
#include "obstructor/search.hpp"

using namespace obstructor;

namespace {

VarietyModel quartic_dp2() {
  return VarietyModel::projective({"x", "y", "z", "w"}, {"w^2 = -6*x^4 - 3*y^4 + 2*z^4"}, {1, 1, 1, 2});
}

}  // namespace

static void BM_PadicMulInverse(benchmark::State& state) {
  const Prime p(2);
  PadicNumber x = PadicNumber::from_rational(Rational(12345, 7), p, static_cast<int>(state.range(0)));
  PadicNumber y = PadicNumber::from_integer(987654321, p, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize((x * y).inverse());
}
BENCHMARK(BM_PadicMulInverse)->Arg(20)->Arg(60)->Arg(200);

static void BM_RamifiedFieldMul(benchmark::State& state) {
  const LocalField S = LocalField::totally_ramified(Prime(2), {-2, 0, 0, 1});
  const LocalFieldElement a = S.from_integer(3) + S.uniformizer() * S.from_integer(7);
  const LocalFieldElement b = S.from_integer(5) - S.uniformizer().pow(2);
  for (auto _ : state) benchmark::DoNotOptimize(a * b / (a + b));
}
BENCHMARK(BM_RamifiedFieldMul);

static void BM_HilbertQp(benchmark::State& state) {
  long a = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hilbert_qp(Rational((a % 2 ? -1 : 1) * (2 * (a % 500) + 1)), Rational(a % 991 + 1), Prime(2)));
    ++a;
  }
}
BENCHMARK(BM_HilbertQp);

static void BM_ConicSymbol(benchmark::State& state) {
  const LocalField S = LocalField::totally_ramified(Prime(2), {-2, 0, 0, 1});
  ConicOptions o;
  o.force_conic = true;
  const LocalFieldElement x = S.from_integer(3) + S.uniformizer();
  for (auto _ : state) benchmark::DoNotOptimize(hilbert_ext(Rational(-1), x, o));
}
BENCHMARK(BM_ConicSymbol);

static void BM_ExtensionCensus(benchmark::State& state) {
  // Memoized after the first call; time the cold enumeration via a fresh precision.
  int prec = 40;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_extensions(Prime(3), static_cast<int>(state.range(0)), prec++));
}
BENCHMARK(BM_ExtensionCensus)->Arg(2)->Arg(3)->Iterations(5);

static void BM_SamplePoints(benchmark::State& state) {
  const VarietyModel X = quartic_dp2();
  const LocalField Q2 = LocalField::qp(Prime(2));
  for (auto _ : state) benchmark::DoNotOptimize(sample_points(X, Q2, static_cast<std::size_t>(state.range(0)), 1));
}
BENCHMARK(BM_SamplePoints)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_LocalSolvability(benchmark::State& state) {
  const Scenario s = load_scenario("k3-225-coraym");
  const LocalField Q2 = LocalField::qp(Prime(2));
  for (auto _ : state) benchmark::DoNotOptimize(has_local_point(s.variety, Q2));
}
BENCHMARK(BM_LocalSolvability)->Unit(benchmark::kMillisecond);

static void BM_ScanPlace(benchmark::State& state) {
  const Scenario s = load_scenario("kres-tch-dp2");
  ScanOptions o;
  o.degree_bound = static_cast<int>(state.range(0));
  o.samples = 20;
  for (auto _ : state) benchmark::DoNotOptimize(scan_place(s.variety, s.classes[0], Place::finite(Prime(3)), o));
}
BENCHMARK(BM_ScanPlace)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
