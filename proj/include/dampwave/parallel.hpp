#ifndef DAMPWAVE_PARALLEL_HPP
#define DAMPWAVE_PARALLEL_HPP

#include <cstdlib>
#include <future>
#include <thread>
#include <vector>

namespace dampwave {

// Worker cap: DAMPWAVE_THREADS when set, hardware concurrency otherwise.
inline int max_threads() {
    if (const char* env = std::getenv("DAMPWAVE_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1)
            return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

// Runs f(i) for i in [0, n); results must be written into index-keyed slots
// so the outcome is independent of scheduling.
template <class F>
void parallel_for_index(std::size_t n, F&& f) {
    const int workers = std::min<std::size_t>(max_threads(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            f(i);
        return;
    }
    std::vector<std::future<void>> futs;
    futs.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        futs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < n; i += workers)
                f(i);
        }));
    }
    for (auto& fu : futs)
        fu.get();
}

} // namespace dampwave

#endif
