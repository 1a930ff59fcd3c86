#pragma once

namespace relaxoc {

/// Execution policy for the batched kernels. Every parallel kernel has a
/// serial reference path; outputs are identical element-for-element, so the
/// policy never changes results, only wall time.
enum class Exec { Serial, Parallel };

namespace par {

Exec default_exec();
void set_default(Exec e);

/// Caps the OpenMP thread count (0 = library default).
void set_threads(int n);
int threads();

}  // namespace par
}  // namespace relaxoc
