#pragma once

#include <cstdint>
#include <functional>

namespace rlnc {

/// Number of workers to use: the RLNC_THREADS environment variable when set
/// to a positive value, otherwise (unset or 0) the hardware concurrency.
/// Read on every call so tests can vary it per run.
unsigned worker_count();

/// Splits [0, total) into one contiguous chunk per worker and runs fn on
/// each chunk. Blocks until all chunks finish; fn must be safe to call from
/// multiple threads. Callers are responsible for making the result
/// independent of the chunking.
void parallel_chunks(std::uint64_t total,
                     const std::function<void(std::uint64_t begin, std::uint64_t end)>& fn);

}  // namespace rlnc
