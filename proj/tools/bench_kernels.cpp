// Timing comparison of the parallel Gram/table assembly against the serial
// reference. Sizes are modest so the whole run stays under a few seconds.

#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#else
#include <chrono>
#endif

#include "rkbs/kernel.hpp"

namespace {

double now() {
#ifdef _OPENMP
    return omp_get_wtime();
#else
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
#endif
}

template <typename F>
double best_of(int reps, F&& work) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const double t0 = now();
        work();
        const double t1 = now();
        if (t1 - t0 < best) best = t1 - t0;
    }
    return best;
}

}  // namespace

int main() {
    using namespace rkbs;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.05, 0.95);

#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: not enabled, both columns run serially\n");
#endif
    std::printf("%-22s %8s %12s %12s %8s\n", "case", "size", "serial[s]", "parallel[s]", "speedup");

    const struct {
        Kernel kernel;
        int n;
    } gram_cases[] = {
        {Kernel::gaussian(1.0, 3), 600},
        {Kernel::exponential(3), 600},
        {Kernel::brownian_bridge(), 900},
    };
    for (const auto& c : gram_cases) {
        Eigen::MatrixXd pts(c.n, c.kernel.dim);
        for (int i = 0; i < c.n; ++i)
            for (int d = 0; d < c.kernel.dim; ++d) pts(i, d) = unit(rng);
        Eigen::MatrixXd a, b;
        const double ts = best_of(3, [&] { a = gram_serial(c.kernel, pts); });
        const double tp = best_of(3, [&] { b = gram(c.kernel, pts); });
        const double diff = (a - b).cwiseAbs().maxCoeff();
        std::printf("gram %-17s %8d %12.5f %12.5f %7.2fx%s\n", c.kernel.name().c_str(), c.n, ts, tp,
                    ts / tp, diff == 0.0 ? "" : "  MISMATCH");
    }

    const struct {
        Kernel kernel;
        int n;
    } table_cases[] = {
        {Kernel::mercer_gaussian_taylor(), 1200},
        {Kernel::mercer_brownian_sine(), 1200},
        {Kernel::hat(), 2000},
    };
    for (const auto& c : table_cases) {
        std::vector<double> xs(static_cast<size_t>(c.n)), ys(static_cast<size_t>(c.n));
        const double lo = c.kernel.kind == KernelKind::MercerGaussianTaylor ? -1.0 : 0.0;
        for (int i = 0; i < c.n; ++i) {
            xs[static_cast<size_t>(i)] = lo + (1.0 - lo) * (i + 0.5) / c.n;
            ys[static_cast<size_t>(i)] = lo + (1.0 - lo) * (i + 0.25) / c.n;
        }
        std::vector<double> a, b;
        const double ts = best_of(3, [&] { a = kernel_table_serial(c.kernel, xs, ys); });
        const double tp = best_of(3, [&] { b = kernel_table(c.kernel, xs, ys); });
        const bool same = a == b;
        std::printf("table %-16s %8d %12.5f %12.5f %7.2fx%s\n", c.kernel.name().c_str(), c.n, ts, tp,
                    ts / tp, same ? "" : "  MISMATCH");
    }
    return 0;
}
