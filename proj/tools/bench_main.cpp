// Benchmark of the OpenMP kernels against their serial references:
//   * one walk step on a wide window (step vs step_serial)
//   * the dense Hermitian eigensolve (round-robin Jacobi vs cyclic Jacobi)
// Both variants print their timings plus the worst pointwise disagreement, so
// the output doubles as a quick consistency check.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "ssqw/discriminant.hpp"
#include "ssqw/eig.hpp"
#include "ssqw/models.hpp"
#include "ssqw/walk.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

ssqw::State random_state(std::mt19937& gen, int lo, int hi) {
    std::normal_distribution<double> dist;
    ssqw::State psi = ssqw::State::zero(lo, hi);
    for (int x = lo; x <= hi; ++x)
        psi.ref(x) = {ssqw::cplx(dist(gen), dist(gen)), ssqw::cplx(dist(gen), dist(gen))};
    return psi.normalized();
}

ssqw::CMatrix random_hermitian(std::mt19937& gen, std::size_t n) {
    std::normal_distribution<double> dist;
    ssqw::CMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = dist(gen);
        for (std::size_t j = i + 1; j < n; ++j) {
            const ssqw::cplx v(dist(gen), dist(gen));
            a(i, j) = v;
            a(j, i) = std::conj(v);
        }
    }
    return a;
}

void bench_step(int half_width, int reps) {
    std::mt19937 gen(7);
    const ssqw::ShiftParams shift(0.3, std::sqrt(1.0 - 0.09));
    const ssqw::CoinField coins =
        ssqw::anisotropic_coin({.epsilon = 0.4, .smooth = true, .ramp = 20});
    const ssqw::State psi = random_state(gen, -half_width, half_width);

    ssqw::State serial = psi;
    const auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r) serial = ssqw::step_serial(shift, coins, psi);
    const double serial_ms = ms_since(t0) / reps;

    ssqw::State parallel = psi;
    const auto t1 = Clock::now();
    for (int r = 0; r < reps; ++r) parallel = ssqw::step(shift, coins, psi);
    const double parallel_ms = ms_since(t1) / reps;

    std::printf("walk step, %d sites        serial %8.3f ms   parallel %8.3f ms   "
                "speedup %.2fx   max diff %.2e\n",
                2 * half_width + 1, serial_ms, parallel_ms, serial_ms / parallel_ms,
                ssqw::max_pointwise_diff(serial, parallel));
}

void bench_jacobi(std::size_t n) {
    std::mt19937 gen(11);
    const ssqw::CMatrix a = random_hermitian(gen, n);

    const auto t0 = Clock::now();
    const ssqw::HermitianEig serial = ssqw::jacobi_eigh_serial(a);
    const double serial_ms = ms_since(t0);

    const auto t1 = Clock::now();
    const ssqw::HermitianEig parallel = ssqw::jacobi_eigh(a);
    const double parallel_ms = ms_since(t1);

    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        diff = std::max(diff, std::abs(serial.values[i] - parallel.values[i]));
    std::printf("jacobi eigensolve, n=%4zu  serial %8.3f ms   parallel %8.3f ms   "
                "speedup %.2fx   max |dlambda| %.2e\n",
                n, serial_ms, parallel_ms, serial_ms / parallel_ms, diff);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP kernel benchmark"};
    int half_width = 20000;
    int reps = 20;
    std::vector<std::size_t> sizes{128, 256};
    app.add_option("--half-width", half_width, "walk window half-width");
    app.add_option("--reps", reps, "walk step repetitions per timing");
    app.add_option("--sizes", sizes, "Jacobi matrix sizes");
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both variants run serially\n");
#endif
    bench_step(half_width, reps);
    for (const std::size_t n : sizes) bench_jacobi(n);
    return 0;
}
