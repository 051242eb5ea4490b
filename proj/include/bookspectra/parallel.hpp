#pragma once

#include <condition_variable>
#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

namespace bookspectra {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Run `work` over chunk indices [0, chunk_count) on `threads` workers and
// pass each result to `emit` in strictly increasing chunk order, so the
// combined output stream is identical for every thread count. A worker that
// runs too far ahead of the emission frontier parks until it catches up,
// which bounds the reorder buffer.
template <class Out>
void ordered_chunks(std::size_t chunk_count, int threads,
                    const std::function<Out(std::size_t)>& work,
                    const std::function<void(Out&&)>& emit) {
    threads = resolve_threads(threads);
    if (threads <= 1 || chunk_count <= 1) {
        for (std::size_t k = 0; k < chunk_count; ++k) emit(work(k));
        return;
    }

    std::mutex mu;
    std::condition_variable cv;
    std::size_t next_claim = 0;
    std::size_t next_emit = 0;
    std::map<std::size_t, Out> parked;
    const std::size_t window = static_cast<std::size_t>(threads) * 4 + 8;

    auto body = [&] {
        for (;;) {
            std::size_t k;
            {
                std::unique_lock<std::mutex> lock(mu);
                if (next_claim >= chunk_count) return;
                k = next_claim++;
                // the worker owning next_emit never waits here, so the pool
                // always makes progress
                cv.wait(lock, [&] { return k < next_emit + window; });
            }
            Out out = work(k);
            std::unique_lock<std::mutex> lock(mu);
            parked.emplace(k, std::move(out));
            while (!parked.empty() && parked.begin()->first == next_emit) {
                Out ready = std::move(parked.begin()->second);
                parked.erase(parked.begin());
                emit(std::move(ready));
                ++next_emit;
            }
            cv.notify_all();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
}

}  // namespace bookspectra
