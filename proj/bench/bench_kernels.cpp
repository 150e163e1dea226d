// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include <random>

#include "ballpoly/kernels.hpp"

using namespace ballpoly;

namespace {

std::vector<Point3> cloud(int n, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> u(-0.45, 0.45);
    std::vector<Point3> pts;
    for (int i = 0; i < n; ++i) pts.push_back({u(eng), u(eng), u(eng)});
    return pts;
}

// Wheel with k rim nodes: arcs 0..k-1 on the rim, k..2k-1 spokes.
std::vector<std::vector<int>> wheel_rotation(int k) {
    std::vector<std::vector<int>> rot(k + 1);
    for (int i = 0; i < k; ++i) {
        rot[i] = {(i + k - 1) % k, k + i, i};
        rot[k].push_back(k + i);
    }
    return rot;
}

template <auto Kernel>
void empty_spheres(benchmark::State& state) {
    const auto pts = cloud(int(state.range(0)), 7);
    const Tolerance tol{};
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(pts, tol));
    state.SetComplexityN(state.range(0));
}

template <auto Kernel>
void ball_vertices(benchmark::State& state) {
    const auto pts = cloud(int(state.range(0)), 11);
    const Tolerance tol{};
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(pts, tol));
    state.SetComplexityN(state.range(0));
}

template <auto Kernel>
void labelings(benchmark::State& state) {
    const int k = int(state.range(0));
    const auto rot = wheel_rotation(k);
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(rot, 2 * k));
    state.counters["arcs"] = 2 * k;
}

}  // namespace

BENCHMARK(empty_spheres<kernels::empty_spheres_serial>)->Name("empty_spheres/serial")->Arg(12)->Arg(24)->Arg(40);
BENCHMARK(empty_spheres<kernels::empty_spheres_parallel>)->Name("empty_spheres/parallel")->Arg(12)->Arg(24)->Arg(40);
BENCHMARK(ball_vertices<kernels::ball_vertices_serial>)->Name("ball_vertices/serial")->Arg(12)->Arg(24)->Arg(40);
BENCHMARK(ball_vertices<kernels::ball_vertices_parallel>)->Name("ball_vertices/parallel")->Arg(12)->Arg(24)->Arg(40);
BENCHMARK(labelings<kernels::admissible_labelings_serial>)->Name("labelings/serial")->Arg(5)->Arg(6)->Arg(7);
BENCHMARK(labelings<kernels::admissible_labelings_parallel>)->Name("labelings/parallel")->Arg(5)->Arg(6)->Arg(7);

BENCHMARK_MAIN();
