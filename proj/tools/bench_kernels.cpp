// Compares the parallel kernels against their serial reference
// implementations on a few representative shapes and reports timings plus
// the worst entrywise deviation between the two paths.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#include "boxtimes/kernels.hpp"
#include "boxtimes/tracy_singh.hpp"

namespace bx = boxtimes;

namespace {

std::mt19937_64 rng(42);

bx::CMatrix random_matrix(std::size_t r, std::size_t c) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    bx::CMatrix m(r, c);
    for (auto& z : m.entries) z = bx::Complex(uni(rng), uni(rng));
    return m;
}

double time_best_ms(const std::function<void()>& fn, int reps = 3) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best,
                        std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void report(const char* name, double serial_ms, double parallel_ms, double diff) {
    std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   max|diff| %.3e\n",
                name, serial_ms, parallel_ms, serial_ms / parallel_ms, diff);
}

}  // namespace

int main() {
    {
        const bx::CMatrix a = random_matrix(384, 384);
        const bx::CMatrix b = random_matrix(384, 384);
        bx::CMatrix serial, parallel;
        const double ts = time_best_ms([&] { serial = bx::reference::matmul(a, b); });
        const double tp = time_best_ms([&] { parallel = bx::matmul(a, b); });
        report("matmul 384x384", ts, tp, bx::max_abs_diff(serial, parallel));
    }
    {
        const bx::CMatrix a = random_matrix(64, 64);
        const bx::CMatrix b = random_matrix(24, 24);
        bx::CMatrix serial, parallel;
        const double ts = time_best_ms([&] { serial = bx::reference::kron(a, b); });
        const double tp = time_best_ms([&] { parallel = bx::kron(a, b); });
        report("kron 64x64 (x) 24x24", ts, tp, bx::max_abs_diff(serial, parallel));
    }
    {
        const bx::PartitionedMatrix a = bx::with_canonical_partition(random_matrix(49, 49));
        const bx::PartitionedMatrix b = bx::with_canonical_partition(random_matrix(49, 49));
        bx::CMatrix serial, parallel;
        const double ts = time_best_ms([&] { serial = bx::reference::tracy_singh(a, b); });
        const double tp = time_best_ms([&] { parallel = bx::tracy_singh(a, b); });
        report("tracy_singh 49x49 (ts) 49x49", ts, tp, bx::max_abs_diff(serial, parallel));
    }
    return 0;
}
