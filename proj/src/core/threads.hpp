#pragma once

#include <functional>

namespace latcomm {

// Worker cap shared by the parallel helpers; 0 means hardware concurrency.
void set_thread_cap(int n);
int thread_cap();
int effective_threads();

// Runs fn(chunk) for chunk = 0..num_chunks-1 on a small pool.  Chunking is
// fixed by the caller, never by the thread count, so reductions that merge
// chunk results in index order stay deterministic.
void parallel_chunks(int num_chunks, const std::function<void(int)>& fn);

}  // namespace latcomm
