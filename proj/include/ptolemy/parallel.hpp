#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace ptolemy {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Splits [0, total) into contiguous chunks, runs `body(worker, lo, hi)` on
// each, then folds the per-worker results with `merge` in worker order. The
// fold order is fixed by worker index, so the reduction is reproducible for
// any thread count as long as `merge` itself is associative over adjacent
// chunks.
template <typename State, typename Body, typename Merge>
State parallel_chunked(std::uint64_t total, int threads, State init, Body body, Merge merge) {
    int nw = resolve_threads(threads);
    if (total < 1024 || nw == 1) {
        State s = init;
        body(s, std::uint64_t{0}, total);
        return s;
    }
    std::uint64_t per = total / static_cast<std::uint64_t>(nw);
    std::vector<State> states(static_cast<std::size_t>(nw), init);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(nw));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nw));
    for (int w = 0; w < nw; ++w) {
        std::uint64_t lo = per * static_cast<std::uint64_t>(w);
        std::uint64_t hi = (w == nw - 1) ? total : lo + per;
        pool.emplace_back([&, w, lo, hi] {
            try {
                body(states[static_cast<std::size_t>(w)], lo, hi);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    State out = init;
    for (auto& s : states) merge(out, s);
    return out;
}

} // namespace ptolemy
