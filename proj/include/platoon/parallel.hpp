#pragma once

#include <functional>

namespace platoon {

// Worker count: PLATOON_THREADS when set to a sane value, else the hardware count.
int thread_budget();

// Runs fn(0..n-1) across the thread budget. Callers keep determinism by writing
// only to slot i inside fn(i). The first exception is rethrown after the join.
void parallel_for(int n, const std::function<void(int)>& fn);

} // namespace platoon
