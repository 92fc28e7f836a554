/* bench -- serial loop vs OpenMP-parallel batch over the same recognizers */

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vplt/exact.hh"
#include "vplt/generators.hh"
#include "vplt/stream_tester.hh"

using namespace vplt;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

} // namespace

int main(int argc, char** argv) {
    std::size_t streams = argc > 1 ? static_cast<std::size_t>(std::atoll(argv[1])) : 256;
    std::size_t n = argc > 2 ? static_cast<std::size_t>(std::atoll(argv[2])) : 4096;

    const Vpa vpa = disj_machine();
    std::vector<std::vector<int>> inputs(streams);
    for (std::size_t i = 0; i < streams; ++i) {
        Xoshiro256 rng(i);
        inputs[i] = gen_disj_member(vpa, n, n / 4, rng);
    }

    std::printf("streams=%zu n=%zu\n", streams, n);
#ifdef _OPENMP
    std::printf("threads=%d\n", omp_get_max_threads());
#else
    std::printf("threads=1 (no OpenMP)\n");
#endif

    std::size_t sink = 0;

    auto t0 = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < streams; ++i)
        sink += run_exact(vpa, inputs[i]).accepted ? 1 : 0;
    const double exact_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : sink)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(streams); ++i)
        sink += run_exact(vpa, inputs[static_cast<std::size_t>(i)]).accepted ? 1 : 0;
    const double exact_parallel = seconds_since(t0);

    TesterConfig cfg;
    cfg.n = n;

    t0 = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < streams; ++i) {
        cfg.seed = i;
        sink += run_tester(vpa, inputs[i], cfg).verdict == "accept" ? 1 : 0;
    }
    const double test_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : sink) firstprivate(cfg)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(streams); ++i) {
        cfg.seed = static_cast<std::uint64_t>(i);
        sink += run_tester(vpa, inputs[static_cast<std::size_t>(i)], cfg).verdict ==
                        "accept"
                    ? 1
                    : 0;
    }
    const double test_parallel = seconds_since(t0);

    std::printf("%-22s %10s %10s %8s\n", "kernel", "serial(s)", "parallel(s)",
                "speedup");
    std::printf("%-22s %10.3f %10.3f %8.2fx\n", "exact recognizer", exact_serial,
                exact_parallel, exact_serial / exact_parallel);
    std::printf("%-22s %10.3f %10.3f %8.2fx\n", "sketch tester", test_serial,
                test_parallel, test_serial / test_parallel);
    return sink == 0 ? 1 : 0; // keep the work observable
}
