#pragma once

#include <thread>
#include <vector>

namespace loopsmith {

// Number of chunks a size-n range is split into (bounded by hardware
// concurrency, at least 1).
inline int chunk_count(int n) {
    unsigned hw = std::thread::hardware_concurrency();
    int c = static_cast<int>(hw ? hw : 1);
    if (c > n) c = n;
    return c > 0 ? c : 1;
}

// Runs fn(chunk_index, begin, end) over a partition of [0, n) on up to
// chunk_count(n) threads. Chunk indices are dense in [0, chunk_count(n)), so
// callers can collect per-chunk results and combine them in chunk order,
// keeping the outcome independent of the partitioning.
template <typename Fn>
void for_each_chunk(int n, Fn&& fn) {
    int chunks = chunk_count(n);
    if (chunks <= 1) {
        fn(0, 0, n);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(chunks));
    int base = n / chunks, extra = n % chunks, start = 0;
    for (int c = 0; c < chunks; ++c) {
        int len = base + (c < extra ? 1 : 0);
        workers.emplace_back([&fn, c, start, len] { fn(c, start, start + len); });
        start += len;
    }
    for (auto& w : workers) w.join();
}

} // namespace loopsmith
