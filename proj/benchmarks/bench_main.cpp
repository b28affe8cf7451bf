#include <benchmark/benchmark.h>

#include "shbif/dynamics.hpp"
#include "shbif/manifold.hpp"
#include "shbif/pde.hpp"
#include "shbif/reduced_field.hpp"

namespace {

using namespace shbif;

// Dense polynomial with modes 1..modes and capacity for a pairwise product.
template <class S>
TrigPoly<S> dense_poly(int modes, int phase) {
  TrigPoly<S> u(2 * modes);
  for (int k = 1; k <= modes; ++k) {
    u.set(sin_mode(k), S(2 * k + phase) / S(3 * modes));
    u.set(cos_mode(k), S(k - phase) / S(5 * modes));
  }
  return u;
}

void trig_multiply_rational(benchmark::State& state) {
  const int trunc = static_cast<int>(state.range(0));
  const auto u = dense_poly<Rational>(trunc, 1);
  const auto v = dense_poly<Rational>(trunc, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(multiply(u, v));
  }
}
BENCHMARK(trig_multiply_rational)->Arg(8)->Arg(16)->Arg(32);

void trig_multiply_float(benchmark::State& state) {
  const int trunc = static_cast<int>(state.range(0));
  const auto u = dense_poly<double>(trunc, 1);
  const auto v = dense_poly<double>(trunc, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(multiply(u, v));
  }
}
BENCHMARK(trig_multiply_float)->Arg(8)->Arg(16)->Arg(32);

void center_manifold_solve(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_center_manifold(Rational(9), order));
  }
}
BENCHMARK(center_manifold_solve)->Arg(3)->Arg(5);

void reduction_order5(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        parameterized_reduction(Rational(46, 5), 5, FieldForm::Graph));
  }
}
BENCHMARK(reduction_order5);

void block_classification(benchmark::State& state) {
  const ReducedVectorField vf =
      parameterized_reduction(Rational(46, 5), 5, FieldForm::Graph);
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify_block(vf, 0.01, 64));
  }
}
BENCHMARK(block_classification);

void reduced_trajectory(benchmark::State& state) {
  const ReducedVectorField vf =
      parameterized_reduction(Rational(46, 5), 5, FieldForm::Graph);
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_reduced(vf, {0.3, 0.2}, 10.0, 1e-3));
  }
}
BENCHMARK(reduced_trajectory);

void etd_step(benchmark::State& state) {
  const int trunc = static_cast<int>(state.range(0));
  PdeIntegrator stepper(9.2, trunc, 1e-2);
  ModeState u = random_state(1, 0, trunc, 0.5);
  for (auto _ : state) {
    stepper.step(u);
    benchmark::DoNotOptimize(u);
  }
}
BENCHMARK(etd_step)->Arg(16)->Arg(32)->Arg(64);

void stationary_newton(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(stationary_amplitude(9.3, 32));
  }
}
BENCHMARK(stationary_newton);

}  // namespace

BENCHMARK_MAIN();
