#pragma once

// Worker-count policy shared by the OpenMP kernels. GPGATE_THREADS caps the
// worker count; when it is unset (or OpenMP is unavailable) everything runs
// on the serial reference paths. Parallel paths must merge by index so that
// results are identical to the serial paths for any worker count.

namespace gpgate {

// Workers to use: override if set, else GPGATE_THREADS, else 1.
int worker_count();

// Test/benchmark hook; n <= 0 restores the environment-driven value.
void override_worker_count(int n);

}  // namespace gpgate
