#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace ekr {

inline constexpr const char* kVersion = "1.0.0";

// Default seed for all sampled checks ("EKR" in ASCII).
inline constexpr std::uint64_t kDefaultSeed = 0x454B52;

inline unsigned default_workers() {
    unsigned h = std::thread::hardware_concurrency();
    return h ? h : 1;
}

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t n) { return next() % n; }
};

// Runs fn(worker_index, begin, end) over a contiguous split of [0, n).
// Each index is covered exactly once, so writes to disjoint slots need no locks.
template <typename Fn>
void parallel_chunks(std::size_t n, unsigned workers, Fn&& fn) {
    if (n == 0) return;
    std::size_t w = std::max<std::size_t>(1, std::min<std::size_t>(workers, n));
    if (w == 1) {
        fn(0u, std::size_t{0}, n);
        return;
    }
    std::size_t chunk = (n + w - 1) / w;
    std::vector<std::thread> threads;
    threads.reserve(w);
    for (std::size_t i = 0; i < w; ++i) {
        std::size_t b = i * chunk;
        std::size_t e = std::min(n, b + chunk);
        if (b >= e) break;
        threads.emplace_back([&fn, i, b, e] { fn(static_cast<unsigned>(i), b, e); });
    }
    for (auto& t : threads) t.join();
}

} // namespace ekr
