#include "gpgate/parallel.hpp"

#include <cstdlib>

#ifdef GPGATE_HAVE_OPENMP
#include <omp.h>
#endif

namespace gpgate {

namespace {
int g_override = 0;

int env_workers() {
    const char* raw = std::getenv("GPGATE_THREADS");
    if (raw == nullptr) return 1;
    const int n = std::atoi(raw);
    return n > 0 ? n : 1;
}
}  // namespace

int worker_count() {
    int n = g_override > 0 ? g_override : env_workers();
#ifdef GPGATE_HAVE_OPENMP
    const int hw = omp_get_max_threads();
    if (n > hw) n = hw;
#else
    n = 1;
#endif
    return n;
}

void override_worker_count(int n) { g_override = n > 0 ? n : 0; }

}  // namespace gpgate
