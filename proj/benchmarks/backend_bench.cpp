#include <benchmark/benchmark.h>

#include "weirdfind/compiler.hpp"
#include "weirdfind/emulator.hpp"

using namespace weirdfind;

namespace {

const machines::TagSystem kToy{
    {"a", "b", "c", "H"}, "H", {{"a", {"c", "c", "b", "a", "H"}}, {"b", {"c", "c", "a"}}, {"c", {"c", "c"}}}};
const machines::Word kInitial{"b", "a", "a"};

void run_script(benchmark::State& state, const Script& script, std::uint64_t fuel) {
  std::uint64_t used = 0;
  for (auto _ : state) {
    vfs::Filesystem fs;
    emu::Options opts;
    opts.fuel = fuel;
    opts.binaries = script.binaries;
    const auto res = emu::Emulator(fs, std::move(opts)).run_script(script.commands);
    if (!res.halted()) state.SkipWithError("script did not halt");
    used = res.fuel_used;
  }
  state.counters["fuel"] = static_cast<double>(used);
}

void BM_ToyBackref(benchmark::State& state) {
  run_script(state, compiler::compile_tag_backref(kToy, kInitial), 1'000'000);
}
BENCHMARK(BM_ToyBackref);

void BM_ToyNoBackref(benchmark::State& state) {
  run_script(state, compiler::compile_tag_nobackref(kToy, kInitial), 50'000'000);
}
BENCHMARK(BM_ToyNoBackref);

// ADD on (n, n).
void BM_CounterAdd(benchmark::State& state) {
  const machines::CounterProgram add{
      {machines::jz(1, 4), machines::dec(1), machines::inc(0), machines::jmp(0)}};
  const auto n = static_cast<std::uint64_t>(state.range(0));
  run_script(state, compiler::compile_counter(add, n, n), 500'000'000);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CounterAdd)->RangeMultiplier(2)->Range(1, 16)->Complexity();

}  // namespace
