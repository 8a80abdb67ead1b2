// Microbenchmarks for the hot paths: enclosing-circle computation, vertex
// ranking, Gray-list construction, multiset congruence, one per-robot
// decision, and a complete end-to-end run.

#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "dancing/chorfile.hpp"
#include "dancing/counter.hpp"
#include "dancing/dancer.hpp"
#include "dancing/geometry.hpp"
#include "dancing/palette.hpp"
#include "dancing/ranking.hpp"
#include "dancing/simulator.hpp"

namespace {

using dancing::Multivertex;
using dancing::Pattern;
using dancing::Point;

std::vector<Point> random_points(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::vector<Point> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) pts.push_back({coord(rng), coord(rng)});
  return pts;
}

Pattern random_pattern(std::size_t vertices, std::uint64_t seed) {
  std::vector<Multivertex> vs;
  for (const Point& p : random_points(vertices, seed)) vs.push_back({p, 1});
  return Pattern(std::move(vs));
}

void BM_SmallestEnclosingCircle(benchmark::State& state) {
  const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dancing::sec(pts));
  }
}
BENCHMARK(BM_SmallestEnclosingCircle)->Arg(8)->Arg(32)->Arg(128);

void BM_Ranking(benchmark::State& state) {
  const Pattern p = random_pattern(static_cast<std::size_t>(state.range(0)), 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dancing::rank(p));
  }
}
BENCHMARK(BM_Ranking)->Arg(8)->Arg(32)->Arg(128);

void BM_GrayList(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int colors = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dancing::gray_list(m, colors));
  }
}
BENCHMARK(BM_GrayList)->Args({10, 3})->Args({10, 5})->Args({20, 4});

void BM_MultisetCongruence(benchmark::State& state) {
  const Pattern a = random_pattern(static_cast<std::size_t>(state.range(0)), 3);
  const dancing::Similarity move{1.3, 0.7, false, {0.2, -0.4}};
  const Pattern b = dancing::apply(move, a);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dancing::similar(a, b));
  }
}
BENCHMARK(BM_MultisetCongruence)->Arg(8)->Arg(32);

dancing::ChoreographyFile bench_choreography() {
  dancing::ChoreographyFile file;
  file.n = 8;
  file.k = 5;
  file.choreography.periodic = false;
  file.choreography.patterns = {
      Pattern({{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1},
               {{0.5, 1.7}, 1}, {{-0.6, 0.4}, 1}, {{1.6, 0.4}, 1},
               {{0.5, -0.7}, 1}}),
      Pattern({{{0, 0}, 5}, {{1, 0}, 3}}),
      Pattern({{{0, 0}, 4}, {{2, 0}, 2}, {{0.4, 1.1}, 2}}),
  };
  return file;
}

dancing::Configuration bench_start() {
  dancing::Configuration start;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  for (int i = 0; i < 8; ++i) {
    start.robots.push_back({{coord(rng), coord(rng)}, 1});
  }
  return start;
}

void BM_DancerStep(benchmark::State& state) {
  const dancing::Palette pal = dancing::Palette::with_total(5);
  dancing::Snapshot snap;
  snap.observed = {{{0.1, 0.2}, pal.lambda1()}, {{1.0, 0.0}, pal.lambda2()},
                   {{0.3, -0.8}, pal.lambda3()}, {{0.4, 0.6}, 1},
                   {{-0.7, 0.1}, 1},             {{-0.2, -0.5}, 1},
                   {{0.8, 0.7}, 1},              {{-0.9, -0.6}, 1}};
  snap.self_index = 4;
  snap.pattern_input = bench_choreography().choreography.patterns;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dancing::step(snap, pal));
  }
}
BENCHMARK(BM_DancerStep);

void BM_EndToEndRun(benchmark::State& state) {
  const dancing::ChoreographyFile choreo = bench_choreography();
  const dancing::Configuration start = bench_start();
  const dancing::SchedulerPolicy sched{
      dancing::SchedulerPolicy::Kind::round_robin, 0, {}, 0};
  const dancing::MovementAdversary rigid{
      dancing::MovementAdversary::Kind::rigid, 1.0, 0, 0.0};
  for (auto _ : state) {
    const dancing::Trace t =
        dancing::run(choreo, start, sched, rigid, 42, dancing::RunLimits{});
    benchmark::DoNotOptimize(t.rounds);
  }
}
BENCHMARK(BM_EndToEndRun);

}  // namespace

BENCHMARK_MAIN();
