#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

namespace cbf {

// Exceeding a configured memory or size budget. Reported, never truncated.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An exactness or consistency check failed (polynomial division left a
// remainder, two provably-equal routes disagreed). Always a bug.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

inline std::uint64_t isqrt_u64(std::uint64_t n) {
    if (n == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && (unsigned __int128)r * r > n) --r;
    while ((unsigned __int128)(r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Packed bit array over [0, size).
class Bitset {
public:
    explicit Bitset(std::int64_t size)
        : size_(size), words_((size + 63) / 64, 0) {}

    std::int64_t size() const { return size_; }

    void set(std::int64_t i) { words_[i >> 6] |= 1ull << (i & 63); }

    // Idempotent concurrent set; the final contents do not depend on the
    // interleaving, so threaded marking stays reproducible.
    void set_atomic(std::int64_t i) {
        __atomic_fetch_or(&words_[i >> 6], 1ull << (i & 63), __ATOMIC_RELAXED);
    }

    bool test(std::int64_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    std::int64_t count() const {
        std::int64_t c = 0;
        for (auto w : words_) c += __builtin_popcountll(w);
        return c;
    }

    // Number of set bits with index <= k.
    std::int64_t count_leq(std::int64_t k) const {
        if (k < 0) return 0;
        if (k >= size_ - 1) return count();
        std::int64_t c = 0;
        std::int64_t full = (k + 1) >> 6;
        for (std::int64_t i = 0; i < full; ++i) c += __builtin_popcountll(words_[i]);
        int rem = static_cast<int>((k + 1) & 63);
        if (rem) c += __builtin_popcountll(words_[full] & ((1ull << rem) - 1));
        return c;
    }

    void or_with(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    }

    void and_with(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    }

    friend bool operator==(const Bitset& a, const Bitset& b) {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

private:
    std::int64_t size_;
    std::vector<std::uint64_t> words_;
};

// Runs fn(chunk_index, lo, hi) over [begin, end) split into fixed-size
// chunks. Chunk boundaries depend only on chunk_size, never on the worker
// count, so callers that merge per-chunk results in index order get
// identical output for any number of threads.
template <typename Fn>
void run_chunked(std::int64_t begin, std::int64_t end, std::int64_t chunk_size,
                 int threads, Fn&& fn) {
    if (end <= begin) return;
    const std::int64_t nchunks = (end - begin + chunk_size - 1) / chunk_size;
    auto body = [&](std::int64_t c) {
        std::int64_t lo = begin + c * chunk_size;
        std::int64_t hi = std::min(end, lo + chunk_size);
        fn(c, lo, hi);
    };
    if (threads <= 1 || nchunks == 1) {
        for (std::int64_t c = 0; c < nchunks; ++c) body(c);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    int nworkers = static_cast<int>(std::min<std::int64_t>(threads, nchunks));
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (int w = 0; w < nworkers; ++w) {
        pool.emplace_back([&] {
            try {
                for (std::int64_t c; (c = next.fetch_add(1)) < nchunks;) {
                    if (failed.load(std::memory_order_relaxed)) return;
                    body(c);
                }
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace cbf
