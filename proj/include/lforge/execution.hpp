#pragma once

namespace lforge {

/// Parallel kernels keep a serial reference path; both produce identical
/// results in identical order.
enum class Execution { Serial, Parallel };

/// Sets the OpenMP thread count for subsequent parallel kernels; 0 keeps the
/// runtime default.
void set_thread_count(int threads);
int thread_count();

}  // namespace lforge
