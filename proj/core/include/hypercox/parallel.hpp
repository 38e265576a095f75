#pragma once

#include <functional>
#include <future>
#include <thread>
#include <vector>

namespace hypercox {

/// Applies fn to 0..n-1 on a small thread pool and returns results in index
/// order, so parallel call sites stay deterministic. `threads` <= 0 picks the
/// hardware default; 1 runs inline.
template <typename T>
std::vector<T> parallel_map(int n, const std::function<T(int)>& fn, int threads = 0) {
    std::vector<T> out(n);
    if (threads <= 0) {
        unsigned hc = std::thread::hardware_concurrency();
        threads = hc == 0 ? 1 : int(hc);
    }
    if (threads > n) threads = n < 1 ? 1 : n;
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::future<void>> futs;
    futs.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        futs.push_back(std::async(std::launch::async, [&, t] {
            for (int i = t; i < n; i += threads) out[i] = fn(i);
        }));
    }
    for (auto& f : futs) f.get();
    return out;
}

} // namespace hypercox
