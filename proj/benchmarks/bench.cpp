// Microbenchmarks for the hot paths: the dense matrix exponential that
// dominates evolution, the two-level eigensolver, metric construction, and
// the end-to-end signaling pipeline. Run ./quasih_bench --benchmark_filter=..
// to narrow.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "quasih/experiment.hpp"
#include "quasih/matrix.hpp"
#include "quasih/model.hpp"
#include "quasih/space.hpp"

namespace {

Eigen::MatrixXcd random_matrix(Eigen::Index n, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = std::complex<double>(coef(rng), coef(rng));
    }
  }
  return m;
}

}  // namespace

static void Expm(benchmark::State& state) {
  const Eigen::MatrixXcd m = random_matrix(state.range(0), 42u);
  for (auto _ : state) {
    benchmark::DoNotOptimize(quasih::expm(m));
  }
}
BENCHMARK(Expm)->Arg(2)->Arg(4)->Arg(16);

static void Eigensystem2x2(benchmark::State& state) {
  const Eigen::MatrixXcd h = quasih::build_hamiltonian({1.0, 0.8});
  for (auto _ : state) {
    benchmark::DoNotOptimize(quasih::eigensystem(h));
  }
}
BENCHMARK(Eigensystem2x2);

static void BuildMetric(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(quasih::build_metric({1.0, 0.8}, {1.0, 0.2}));
  }
}
BENCHMARK(BuildMetric);

static void SolveFamilyAndFit(benchmark::State& state) {
  const Eigen::MatrixXcd h = quasih::build_hamiltonian({1.0, 0.8});
  const Eigen::MatrixXcd target = quasih::build_metric({1.0, 0.8}, {1.3, 0.2});
  for (auto _ : state) {
    const quasih::MetricFamily family = quasih::solve_metric_family(h);
    benchmark::DoNotOptimize(quasih::fit_ray_coefficients(family, target));
  }
}
BENCHMARK(SolveFamilyAndFit);

static void Kron2x2(benchmark::State& state) {
  const Eigen::MatrixXcd h = quasih::build_hamiltonian({1.0, 0.8});
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(quasih::kron(h, id));
  }
}
BENCHMARK(Kron2x2);

static void Evolve2x2(benchmark::State& state) {
  const quasih::PhysicalSpace space(quasih::build_metric({1.0, 0.8}, {1.0, 0.0}));
  const Eigen::MatrixXcd h = quasih::build_hamiltonian({1.0, 0.8});
  Eigen::VectorXcd psi(2);
  psi << 1.0, 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(quasih::evolve(space, h, psi, 1.0));
  }
}
BENCHMARK(Evolve2x2);

static void BobReducedCorrected(benchmark::State& state) {
  const quasih::CompositeSystem sys = quasih::build_composite({1.0, 0.8}, {1.0, 0.2});
  const Eigen::VectorXcd bell = quasih::bell_state();
  for (auto _ : state) {
    benchmark::DoNotOptimize(quasih::bob_reduced_corrected(sys, bell));
  }
}
BENCHMARK(BobReducedCorrected);

static void SignalEvolve(benchmark::State& state) {
  const quasih::CompositeSystem sys = quasih::build_composite({1.0, 0.8}, {1.0, 0.2});
  const Eigen::VectorXcd bell = quasih::bell_state();
  const quasih::AliceAction action = quasih::AliceAction::evolve(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        quasih::signaling_magnitude(sys, bell, action, quasih::ReductionMode::corrected));
  }
}
BENCHMARK(SignalEvolve);

static void SignalMeasure(benchmark::State& state) {
  const quasih::CompositeSystem sys = quasih::build_composite({1.0, 0.8}, {1.0, 0.2});
  const Eigen::VectorXcd bell = quasih::bell_state();
  const quasih::AliceAction action = quasih::AliceAction::project(
      quasih::eigenprojectors(sys.alice_space, quasih::build_hamiltonian({1.0, 0.8})));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        quasih::signaling_magnitude(sys, bell, action, quasih::ReductionMode::corrected));
  }
}
BENCHMARK(SignalMeasure);

BENCHMARK_MAIN();
