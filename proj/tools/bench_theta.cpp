/* Times the serial vs parallel sparse-series multiplication kernels on the
 * theta-constant workload (the twenty factors of the weight-10 product) and
 * verifies that the two produce identical tables. */

#include "skmaass/theta.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace skm;

namespace {

using Clock = std::chrono::steady_clock;

double run_product(long bound, ThetaSeries (*mul)(const ThetaSeries&, const ThetaSeries&, long),
                   ThetaSeries& out) {
    const long bound8 = 16 * bound;
    const auto t0 = Clock::now();
    ThetaSeries prod = ThetaSeries::one(bound8);
    for (const ThetaChar& ch : even_characteristics()) {
        const ThetaSeries th = theta_constant(ch, 2 * bound);
        prod = mul(prod, th, bound8);
        prod = mul(prod, th, bound8);
    }
    const auto t1 = Clock::now();
    out = std::move(prod);
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    long bound = 12;
    int repeats = 3;
    CLI::App app{"serial vs parallel theta multiplication benchmark"};
    app.add_option("--bound", bound, "completeness bound of the product")
        ->capture_default_str();
    app.add_option("--repeats", repeats, "timed repetitions per kernel")
        ->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::cout << "bound " << bound << " (trace8 " << 16 * bound << "), threads " << threads
              << ", repeats " << repeats << "\n";

    ThetaSeries serial(0), parallel(0);
    double best_serial = 0, best_parallel = 0;
    for (int i = 0; i < repeats; ++i) {
        const double s = run_product(bound, theta_mul_serial, serial);
        const double p = run_product(bound, theta_mul_parallel, parallel);
        if (i == 0 || s < best_serial)
            best_serial = s;
        if (i == 0 || p < best_parallel)
            best_parallel = p;
        std::cout << "  run " << i + 1 << ": serial " << s << " ms, parallel " << p << " ms\n";
    }

    if (!serial.same_terms(parallel)) {
        std::cerr << "MISMATCH: kernels disagree (" << serial.size() << " vs "
                  << parallel.size() << " terms)\n";
        return 1;
    }
    std::cout << "terms " << serial.size() << ", identical tables\n";
    std::cout << "best: serial " << best_serial << " ms, parallel " << best_parallel
              << " ms, speedup " << best_serial / best_parallel << "x\n";
    return 0;
}
