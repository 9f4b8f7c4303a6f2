// Serial reference vs OpenMP kernel for the cds-sortable sweep.
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cdsort/enumerate.hpp"

int main(int argc, char** argv) {
  const int lo = argc > 1 ? std::atoi(argv[1]) : 8;
  const int hi = argc > 2 ? std::atoi(argv[2]) : 10;
#ifdef _OPENMP
  std::printf("threads %d\n", omp_get_max_threads());
#else
  std::printf("threads 1 (built without OpenMP)\n");
#endif
  std::printf("   n          count    serial_ms  parallel_ms  speedup\n");
  int status = 0;
  for (int n = lo; n <= hi; ++n) {
    const auto s = cdsort::count_cds_sortable_serial(n);
    const auto p = cdsort::count_cds_sortable(n);
    if (s.count != p.count) status = 1;
    std::printf("%4d %14llu %12.1f %12.1f %8.2f%s\n", n, static_cast<unsigned long long>(s.count),
                s.elapsed_ms, p.elapsed_ms, p.elapsed_ms > 0 ? s.elapsed_ms / p.elapsed_ms : 0.0,
                s.count == p.count ? "" : "  MISMATCH");
  }
  return status;
}
