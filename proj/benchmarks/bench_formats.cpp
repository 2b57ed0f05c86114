#include <benchmark/benchmark.h>

#include "gdr/catalog.hpp"
#include "gdr/checksum.hpp"
#include "gdr/format_spec.hpp"

using namespace gdr;

static void BM_GenerateLuhn(benchmark::State& state) {
  const auto& spec = format::builtin_catalog().at("cc_visa").spec;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(format::generate(spec, seed++));
  }
}
BENCHMARK(BM_GenerateLuhn);

static void BM_GenerateMod97(benchmark::State& state) {
  const auto& spec = format::builtin_catalog().at("iban_gb").spec;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(format::generate(spec, seed++));
  }
}
BENCHMARK(BM_GenerateMod97);

static void BM_ValidateLuhn(benchmark::State& state) {
  const auto& spec = format::builtin_catalog().at("cc_visa").spec;
  auto value = format::generate(spec, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(format::validate(spec, value.raw));
  }
}
BENCHMARK(BM_ValidateLuhn);

static void BM_LuhnCheck(benchmark::State& state) {
  std::string digits = "4992739871649927398716";
  for (auto _ : state) {
    benchmark::DoNotOptimize(checksum::luhn_check(digits));
  }
}
BENCHMARK(BM_LuhnCheck);

static void BM_ParseSpec(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        format::parse_format_spec("iban := 'GB' d2 a4 d14 mod97"));
  }
}
BENCHMARK(BM_ParseSpec);

BENCHMARK_MAIN();
