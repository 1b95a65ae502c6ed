// Times the OpenMP enumeration kernels against their serial reference
// implementations and checks that both produce identical results.

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rampss/analysis.hpp"
#include "rampss/schemes.hpp"
#include "rampss/transform.hpp"

using namespace rampss;

namespace {

using clock_type = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& f) {
    auto t0 = clock_type::now();
    f();
    auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms, bool match) {
    std::printf("%-28s %10.1f ms %10.1f ms %8.2fx   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, match ? "results match" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        auto [s, g] = schemes::builtin_fixture("remark1");
        analysis::ClassificationReport rs, rp;
        double ts = time_ms([&] { rs = analysis::classify_serial(s, g); });
        double tp = time_ms([&] { rp = analysis::classify(s, g); });
        row("classify (n=15)", ts, tp, rs == rp);
    }

    {
        // Polynomial scheme over GF(3) whose input space has 3^14 points.
        auto s = schemes::shamir_ramp(14, 2, 2, 3);
        analysis::Rational es, ep;
        access::Subset a = 0b11;
        double ts = time_ms([&] { es = analysis::brute_entropy_serial(s, 0b01, a); });
        double tp = time_ms([&] { ep = analysis::brute_entropy(s, 0b01, a); });
        row("brute_entropy (3^14)", ts, tp, es == ep);
    }

    {
        auto spec = transform::default_hilbert_spec(8, 101);
        auto m = transform::hilbert_matrix(spec).inverse();
        transform::SuperregularResult ss, sp;
        double ts = time_ms([&] { ss = transform::superregular_check_serial(m); });
        double tp = time_ms([&] { sp = transform::superregular_check(m); });
        row("superregular (L=8)", ts, tp,
            ss.ok == sp.ok && ss.rows == sp.rows && ss.cols == sp.cols);
    }

    return 0;
}
