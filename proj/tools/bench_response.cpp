// Benchmark: OpenMP grid sampling vs the serial reference.
//
// Designs the order-5 Butterworth example, samples a large log grid with
// both implementations, checks byte-identical agreement, and reports
// timings. Usage: bench-response [points] [repeats]

#include "anafilt/butterworth.hpp"
#include "anafilt/model.hpp"
#include "anafilt/response.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

} // namespace

int main(int argc, char** argv) {
    const int points = argc > 1 ? std::atoi(argv[1]) : 2'000'000;
    const int repeats = argc > 2 ? std::atoi(argv[2]) : 5;
    if (points < 2 || repeats < 1) {
        std::fprintf(stderr, "usage: %s [points>=2] [repeats>=1]\n",
                     argv[0]);
        return 2;
    }

    const auto spec = anafilt::validate_spec(0.5, 100.0, 20.0, 200.0);
    const auto realization = anafilt::butterworth::design(spec);
    const auto tf = anafilt::stages_from_poles(realization);
    const auto grid = anafilt::response::log_grid(1.0, 1e5, points);

#ifdef _OPENMP
    std::printf("OpenMP: %d threads\n", omp_get_max_threads());
#else
    std::printf("OpenMP: not enabled (both paths run serially)\n");
#endif
    std::printf("grid: %d log-spaced points, %d repeats\n", points, repeats);

    // Warm-up plus agreement check: the parallel path must reproduce the
    // serial reference exactly, not just approximately.
    const auto serial = anafilt::response::sample_response_serial(tf, grid);
    const auto parallel = anafilt::response::sample_response(tf, grid);
    for (std::size_t i = 0; i < grid.points.size(); ++i) {
        if (serial.magnitude_db[i] != parallel.magnitude_db[i] ||
            serial.phase_deg[i] != parallel.phase_deg[i]) {
            std::fprintf(stderr,
                         "MISMATCH at point %zu: serial (%.17g, %.17g) vs "
                         "parallel (%.17g, %.17g)\n",
                         i, serial.magnitude_db[i], serial.phase_deg[i],
                         parallel.magnitude_db[i], parallel.phase_deg[i]);
            return 1;
        }
    }
    std::printf("agreement: serial and parallel outputs identical\n");

    double best_serial = 1e300;
    double best_parallel = 1e300;
    volatile double sink = 0.0; // keep the optimizer honest
    for (int r = 0; r < repeats; ++r) {
        auto t0 = Clock::now();
        const auto rs = anafilt::response::sample_response_serial(tf, grid);
        const double ts = seconds_since(t0);
        sink = sink + rs.magnitude_db.back();

        t0 = Clock::now();
        const auto rp = anafilt::response::sample_response(tf, grid);
        const double tp = seconds_since(t0);
        sink = sink + rp.magnitude_db.back();

        best_serial = ts < best_serial ? ts : best_serial;
        best_parallel = tp < best_parallel ? tp : best_parallel;
        std::printf("  run %d: serial %.4f s, parallel %.4f s\n", r + 1,
                    ts, tp);
    }

    std::printf("best: serial %.4f s, parallel %.4f s, speedup %.2fx\n",
                best_serial, best_parallel, best_serial / best_parallel);
    return 0;
}
