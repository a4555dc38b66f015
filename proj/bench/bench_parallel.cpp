// Timing harness for the data-parallel kernels: each kernel runs once with
// the serial reference and once with the OpenMP variant, and the results are
// cross-checked as they are timed.
//
//   ./keiarith_bench [threads]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "keiarith/braid.hpp"
#include "keiarith/stats.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace keiarith;

namespace {

template <typename F>
double timed(F&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, double serial, double parallel, bool agree) {
    std::printf("%-34s serial %8.3fs   omp %8.3fs   speedup %5.2fx   %s\n", name, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0, agree ? "match" : "** MISMATCH **");
}

}  // namespace

int main(int argc, char** argv) {
#ifdef _OPENMP
    if (argc > 1) omp_set_num_threads(std::atoi(argv[1]));
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    (void)argc;
    (void)argv;
    std::printf("built without OpenMP; both columns run serially\n");
#endif

    {
        KeiTable r3 = KeiTable::dihedral(3);
        long long a = 0, b = 0;
        double ts = timed([&] { a = coloring_orbit_count_serial(r3, 13, 10'000'000); });
        double tp = timed([&] { b = coloring_orbit_count_parallel(r3, 13, 10'000'000); });
        row("orbit count, R3^13", ts, tp, a == b);
    }
    {
        KeiTable jt1 = disjoint_union(KeiTable::joyce(), KeiTable::trivial(1));
        long long a = 0, b = 0;
        double ts = timed([&] { a = coloring_orbit_count_serial(jt1, 11, 10'000'000); });
        double tp = timed([&] { b = coloring_orbit_count_parallel(jt1, 11, 10'000'000); });
        row("orbit count, (J+T1)^11", ts, tp, a == b);
    }
    {
        // the charsum kernel has an internal omp loop; pin 1 thread for the
        // serial lap
        SieveTables sieve = build_sieve(300'000);
        long long a = 0, b = 0;
        double ts, tp;
#ifdef _OPENMP
        int saved = omp_get_max_threads();
        omp_set_num_threads(1);
        ts = timed([&] { a = char_sum_T(1, 300'000, sieve); });
        omp_set_num_threads(saved);
        tp = timed([&] { b = char_sum_T(1, 300'000, sieve); });
#else
        ts = timed([&] { a = char_sum_T(1, 300'000, sieve); });
        tp = timed([&] { b = char_sum_T(1, 300'000, sieve); });
#endif
        row("character sum T_1(3e5)", ts, tp, a == b);
    }
    {
        long long a = 0, b = 0;
        double ts, tp;
#ifdef _OPENMP
        int saved = omp_get_max_threads();
        omp_set_num_threads(1);
        ts = timed([&] { a = summatory(KeiExpr::parse("R3"), 1, {30'000}).points[0].N; });
        omp_set_num_threads(saved);
        tp = timed([&] { b = summatory(KeiExpr::parse("R3"), 1, {30'000}).points[0].N; });
#else
        ts = timed([&] { a = summatory(KeiExpr::parse("R3"), 1, {30'000}).points[0].N; });
        tp = timed([&] { b = summatory(KeiExpr::parse("R3"), 1, {30'000}).points[0].N; });
#endif
        row("class-group sweep to 3e4", ts, tp, a == b);
    }
    return 0;
}
