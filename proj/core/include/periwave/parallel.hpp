#pragma once

#include <functional>

namespace periwave {

/// Set the worker count used by parallel loops (and Eigen's internal products).
/// Results do not depend on this value; per-item work is independent.
void set_threads(int n);
int threads();

/// Static-schedule parallel loop over [0, n). f(i) must not touch shared
/// mutable state.
void parallel_for(long n, const std::function<void(long)>& f);

} // namespace periwave
