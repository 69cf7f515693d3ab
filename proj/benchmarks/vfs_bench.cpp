#include <benchmark/benchmark.h>

#include <string>

#include "weirdfind/vfs.hpp"

using namespace weirdfind;

namespace {

void BM_DeepMkdir(benchmark::State& state) {
  std::string path = "x";
  for (std::int64_t i = 1; i < state.range(0); ++i) path += "/x";
  for (auto _ : state) {
    vfs::Filesystem fs;
    benchmark::DoNotOptimize(fs.mkdir(fs.root(), path, true));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DeepMkdir)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_LookupDeep(benchmark::State& state) {
  vfs::Filesystem fs;
  std::string path = "x";
  for (std::int64_t i = 1; i < state.range(0); ++i) path += "/x";
  fs.mkdir(fs.root(), path, true);
  for (auto _ : state) benchmark::DoNotOptimize(fs.lookup(fs.root(), path).ok());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LookupDeep)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_AppendCounter(benchmark::State& state) {
  vfs::Filesystem fs;
  const std::string unit(".\0", 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fs.write(fs.root(), "s", unit, vfs::WriteMode::Append));
  }
}
BENCHMARK(BM_AppendCounter);

void BM_IterateChildren(benchmark::State& state) {
  vfs::Filesystem fs;
  for (std::int64_t i = 0; i < state.range(0); ++i) fs.mkdir(fs.root(), "d" + std::to_string(i), false);
  for (auto _ : state) {
    std::size_t n = 0;
    std::uint64_t cursor = 0;
    while (auto child = fs.next_child(fs.root(), cursor)) {
      cursor = child->seq;
      ++n;
    }
    benchmark::DoNotOptimize(n);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IterateChildren)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

}  // namespace
