#include "cbf/arith.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "cbf/util.hpp"

namespace cbf {

FactoredInteger FactoredInteger::from_factors(mpz_class value,
                                              std::vector<PrimeFactor> factors) {
    mpz_class prod = 1;
    std::uint64_t last = 0;
    for (const auto& f : factors) {
        if (f.prime <= last)
            throw std::domain_error("factor primes must be strictly increasing");
        if (f.exponent == 0)
            throw std::domain_error("factor exponents must be >= 1");
        last = f.prime;
        mpz_class pe;
        mpz_ui_pow_ui(pe.get_mpz_t(), f.prime, f.exponent);
        prod *= pe;
    }
    if (prod != value)
        throw std::domain_error("factor product does not equal the value");
    return FactoredInteger(std::move(value), std::move(factors));
}

// ---------------------------------------------------------------------------
// Segmented sieve of Eratosthenes.
// ---------------------------------------------------------------------------

PrimeTable::PrimeTable(std::uint64_t limit, int threads,
                       std::uint64_t segment_size)
    : limit_(limit) {
    if (limit < 2) throw std::domain_error("prime table limit must be >= 2");
    if (limit > kPrimeLimitBudget)
        throw resource_error("prime table limit exceeds the configured budget");
    if (segment_size < 64) segment_size = 64;

    // Base primes up to sqrt(limit) by a plain sieve.
    std::uint64_t root = isqrt_u64(limit);
    std::vector<bool> base(root + 1, true);
    std::vector<std::uint64_t> base_primes;
    for (std::uint64_t i = 2; i <= root; ++i) {
        if (!base[i]) continue;
        base_primes.push_back(i);
        for (std::uint64_t j = i * i; j <= root; j += i) base[j] = false;
    }

    // Segments are independent; per-segment outputs are concatenated in
    // segment order, so the result is identical for any worker count.
    // Marking starts at p*p: every composite j has a prime factor q with
    // q*q <= j, so j is still hit while processing q.
    const std::int64_t lo0 = 2, hi0 = static_cast<std::int64_t>(limit) + 1;
    const std::int64_t nseg = (hi0 - lo0 + segment_size - 1) / segment_size;
    std::vector<std::vector<std::uint64_t>> out(nseg);
    run_chunked(lo0, hi0, static_cast<std::int64_t>(segment_size), threads,
                [&](std::int64_t seg, std::int64_t lo, std::int64_t hi) {
        std::vector<bool> is_comp(hi - lo, false);
        for (std::uint64_t p : base_primes) {
            if (p * p >= static_cast<std::uint64_t>(hi)) break;
            std::uint64_t start =
                std::max<std::uint64_t>(p * p, ((lo + p - 1) / p) * p);
            for (std::uint64_t j = start; j < static_cast<std::uint64_t>(hi); j += p)
                is_comp[j - lo] = true;
        }
        auto& v = out[seg];
        for (std::int64_t i = lo; i < hi; ++i)
            if (!is_comp[i - lo]) v.push_back(i);
    });
    for (auto& v : out)
        primes_.insert(primes_.end(), v.begin(), v.end());
}

const std::vector<std::uint32_t>& PrimeTable::spf() {
    if (!spf_.empty()) return spf_;
    if (limit_ > (1u << 31) - 1)
        throw resource_error("spf array limited to 32-bit indices");
    spf_.assign(limit_ + 1, 0);
    for (std::uint64_t i = 2; i <= limit_; ++i) {
        if (spf_[i] != 0) continue;
        for (std::uint64_t j = i; j <= limit_; j += i)
            if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
    }
    return spf_;
}

PrimeTable primes_up_to(std::uint64_t limit, int threads) {
    return PrimeTable(limit, threads);
}

// ---------------------------------------------------------------------------
// Factorization by trial division over a shared, grow-on-demand prime cache.
// ---------------------------------------------------------------------------

namespace {

std::shared_ptr<const PrimeTable> prime_cache_at_least(std::uint64_t need) {
    static std::mutex mu;
    static std::shared_ptr<const PrimeTable> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (!cache || cache->limit() < need) {
        std::uint64_t lim = cache ? cache->limit() : 1u << 16;
        while (lim < need) lim *= 2;
        if (lim > kPrimeLimitBudget)
            throw resource_error("factorization input exceeds the trial-division budget");
        cache = std::make_shared<const PrimeTable>(lim);
    }
    return cache;
}

}  // namespace

FactoredInteger factorize(std::uint64_t n) {
    if (n == 0) throw std::domain_error("cannot factor 0");
    std::vector<PrimeFactor> fs;
    std::uint64_t rem = n;
    if (rem > 1) {
        auto table = prime_cache_at_least(std::max<std::uint64_t>(2, isqrt_u64(n)));
        for (std::uint64_t p : table->primes()) {
            if ((unsigned __int128)p * p > rem) break;
            if (rem % p) continue;
            unsigned e = 0;
            do {
                rem /= p;
                ++e;
            } while (rem % p == 0);
            fs.push_back({p, e});
        }
        if (rem > 1) fs.push_back({rem, 1});  // leftover cofactor is prime
    }
    return FactoredInteger::from_factors(mpz_class(static_cast<unsigned long>(n)),
                                         std::move(fs));
}

int mobius(std::uint64_t n) {
    auto f = factorize(n);
    for (const auto& pf : f.factors())
        if (pf.exponent > 1) return 0;
    return f.factors().size() % 2 == 0 ? 1 : -1;
}

std::uint64_t totient(std::uint64_t n) {
    auto f = factorize(n);
    std::uint64_t t = 1;
    for (const auto& pf : f.factors()) {
        t *= pf.prime - 1;
        for (unsigned e = 1; e < pf.exponent; ++e) t *= pf.prime;
    }
    return t;
}

std::uint64_t radical(std::uint64_t n) {
    if (n < 3) throw std::domain_error("radical is defined here for n >= 3");
    auto f = factorize(n);
    std::uint64_t r = 1;
    for (const auto& pf : f.factors()) r *= pf.prime;
    return r;
}

}  // namespace cbf
