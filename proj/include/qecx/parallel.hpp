#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace qecx {

/* Run worker(chunk_index, begin, end) over [0, total) split into contiguous
   chunks, one per thread.  Chunk boundaries depend only on (total, threads),
   and callers merge per-chunk results in chunk order, so any thread count
   yields identical aggregate output.  threads == 0 means hardware count. */
template <typename Worker>
void parallel_chunks(std::size_t total, unsigned threads, Worker&& worker) {
    unsigned t = threads ? threads : std::thread::hardware_concurrency();
    if (t == 0) t = 1;
    if (std::size_t(t) > total) t = unsigned(total ? total : 1);
    if (t == 1) {
        worker(0, std::size_t(0), total);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(t);
    std::size_t base = total / t, extra = total % t, start = 0;
    for (unsigned c = 0; c < t; ++c) {
        std::size_t len = base + (c < extra ? 1 : 0);
        std::size_t begin = start, end = start + len;
        start = end;
        pool.emplace_back([&, c, begin, end] {
            try {
                worker(c, begin, end);
            } catch (...) {
                errs[c] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

}  // namespace qecx
