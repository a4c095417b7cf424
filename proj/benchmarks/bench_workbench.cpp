// Microbenchmarks for the assembly and solve hot paths.

#include <benchmark/benchmark.h>

#include <loglap/dn_map.hpp>
#include <loglap/forms.hpp>
#include <loglap/fourier.hpp>
#include <loglap/grid.hpp>
#include <loglap/solver.hpp>

namespace {

using namespace loglap;

Grid grid_1d(int cells) {
  const double h = 1.0 / 16.0;
  return build_grid(-h * cells / 2.0, h * cells / 2.0, cells);
}

Grid grid_2d(int per_axis) {
  const double h = 0.25;
  const double half = h * per_axis / 2.0;
  return build_grid({-half, -half}, {half, half}, {per_axis, per_axis}, 2);
}

void bench_log_form_1d(benchmark::State& state) {
  const Grid g = grid_1d(static_cast<int>(state.range(0)));
  const QuadratureSpec spec = QuadratureSpec::defaults_for(1);
  for (auto _ : state) {
    SymmetricForm f = assemble_log_form(g, spec);
    benchmark::DoNotOptimize(f.matrix.data());
  }
}
BENCHMARK(bench_log_form_1d)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void bench_log_form_fourier_1d(benchmark::State& state) {
  const Grid g = grid_1d(static_cast<int>(state.range(0)));
  const QuadratureSpec spec = QuadratureSpec::defaults_for(1);
  for (auto _ : state) {
    SymmetricForm f = assemble_log_form_fourier(g, spec);
    benchmark::DoNotOptimize(f.matrix.data());
  }
}
BENCHMARK(bench_log_form_fourier_1d)->Arg(16)->Unit(benchmark::kMillisecond);

void bench_log_form_2d(benchmark::State& state) {
  const Grid g = grid_2d(static_cast<int>(state.range(0)));
  const QuadratureSpec spec = QuadratureSpec::defaults_for(2);
  for (auto _ : state) {
    SymmetricForm f = assemble_log_form(g, spec);
    benchmark::DoNotOptimize(f.matrix.data());
  }
}
BENCHMARK(bench_log_form_2d)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void bench_log_form_fourier_2d(benchmark::State& state) {
  const Grid g = grid_2d(static_cast<int>(state.range(0)));
  const QuadratureSpec spec = QuadratureSpec::defaults_for(2);
  for (auto _ : state) {
    SymmetricForm f = assemble_log_form_fourier(g, spec);
    benchmark::DoNotOptimize(f.matrix.data());
  }
}
BENCHMARK(bench_log_form_fourier_2d)->Arg(4)->Unit(benchmark::kMillisecond);

std::vector<int> index_range(int lo, int hi) {
  std::vector<int> out;
  for (int i = lo; i < hi; ++i) out.push_back(i);
  return out;
}

// Middle half of the grid is the interior; the outer quarters (minus a
// one-cell separation gap) are the measurement windows.
RegionSet centered_regions(const Grid& g) {
  const int n = g.num_cells();
  return define_regions(g, index_range(3 * n / 8, 5 * n / 8),
                        index_range(0, 3 * n / 8 - 1),
                        index_range(5 * n / 8 + 1, n));
}

struct SolveFixture {
  Grid g;
  RegionSet r;
  SymmetricForm k;
  SymmetricForm q;

  explicit SolveFixture(int cells)
      : g(grid_1d(cells)),
        r(centered_regions(g)),
        k(assemble_log_form(g, QuadratureSpec::defaults_for(1))),
        q(assemble_potential(g, r, constant_omega_field())) {}

  CellField constant_omega_field() const {
    CellField f;
    f.support = Support::Omega;
    f.values = Eigen::VectorXd::Zero(g.num_cells());
    for (int i : r.omega) f.values(i) = 0.5;
    return f;
  }
};

void bench_forward_solve(benchmark::State& state) {
  SolveFixture fx(64);
  ForwardSolver solver(fx.g, fx.r, fx.k, fx.q);
  CellField data;
  data.support = Support::W1;
  data.values = Eigen::VectorXd::Zero(fx.g.num_cells());
  for (int i : fx.r.w1) data.values(i) = 1.0;
  CellField load;
  load.support = Support::Omega;
  load.values = Eigen::VectorXd::Zero(fx.g.num_cells());
  for (auto _ : state) {
    SolveReport rep = solver.solve(data, load);
    benchmark::DoNotOptimize(rep.u.values.data());
  }
}
BENCHMARK(bench_forward_solve)->Unit(benchmark::kMicrosecond);

void bench_dn_map(benchmark::State& state) {
  SolveFixture fx(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    DNMatrix dn = assemble_dn_map(fx.g, fx.r, fx.k, fx.q);
    benchmark::DoNotOptimize(dn.matrix.data());
  }
}
BENCHMARK(bench_dn_map)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
