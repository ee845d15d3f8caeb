#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>

#include "hjcs/certificate.hpp"
#include "hjcs/hales_jewett.hpp"

using namespace hjcs;

namespace {

// Every line is monochromatic but its color is excluded, so the search visits
// all (p+1)^n - p^n candidates.
CubeColoring full_scan_cube(std::size_t n) {
  std::uint64_t cells = 1;
  for (std::size_t i = 0; i < n; ++i) cells *= 3;
  return CubeColoring({0, 1, 2}, n, std::vector<int>(cells, 1));
}

LineSearchOptions excluding_one() {
  LineSearchOptions o;
  o.excluded_color = 1;
  return o;
}

Certificate constant_certificate(CertificateKind kind, std::size_t depth) {
  Certificate cert;
  cert.kind = kind;
  cert.depth = depth;
  cert.words.assign(depth + 1, VariableWord::x());
  return cert;
}

template <bool Parallel>
void BM_LineSearch(benchmark::State& state) {
  const auto cube = full_scan_cube(static_cast<std::size_t>(state.range(0)));
  const auto opts = excluding_one();
  for (auto _ : state) {
    auto r = Parallel ? find_monochromatic_line(cube, opts) : serial::find_monochromatic_line(cube, opts);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(hj_candidate_count(3, cube.dimension())));
}

template <bool Parallel>
void BM_HJNumber(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const auto q = static_cast<std::size_t>(state.range(1));
  const auto n = static_cast<std::size_t>(state.range(2));
  for (auto _ : state) {
    auto r = Parallel ? hj_number(p, q, n) : serial::hj_number(p, q, n);
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void BM_VerifyCarlson(benchmark::State& state) {
  const auto cert = constant_certificate(CertificateKind::kCarlson, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto r = Parallel ? verify_carlson(cert, UINT64_MAX) : serial::verify_carlson(cert, UINT64_MAX);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(verification_work(cert)));
}

template <bool Parallel>
void BM_VerifyCS(benchmark::State& state) {
  const auto cert = constant_certificate(CertificateKind::kCS, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto r = Parallel ? verify_cs(cert, UINT64_MAX) : serial::verify_cs(cert, UINT64_MAX);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(verification_work(cert)));
}

}  // namespace

BENCHMARK(BM_LineSearch<false>)->Name("line_search/serial")->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LineSearch<true>)->Name("line_search/parallel")->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HJNumber<false>)->Name("hj_number/serial")->Args({2, 2, 4})->Args({2, 3, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HJNumber<true>)->Name("hj_number/parallel")->Args({2, 2, 4})->Args({2, 3, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyCarlson<false>)->Name("verify_carlson/serial")->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyCarlson<true>)->Name("verify_carlson/parallel")->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyCS<false>)->Name("verify_cs/serial")->Arg(16)->Arg(19)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyCS<true>)->Name("verify_cs/parallel")->Arg(16)->Arg(19)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::AddCustomContext("omp_max_threads", std::to_string(omp_get_max_threads()));
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
