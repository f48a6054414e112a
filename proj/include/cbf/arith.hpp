#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace cbf {

struct PrimeFactor {
    std::uint64_t prime;
    unsigned exponent;
    friend bool operator==(const PrimeFactor&, const PrimeFactor&) = default;
};

// An integer carried together with its full factorization. Values whose
// factorization is known by construction (such as large powers of two) are
// built through from_factors instead of being re-factored.
class FactoredInteger {
public:
    static FactoredInteger from_factors(mpz_class value,
                                        std::vector<PrimeFactor> factors);

    const mpz_class& value() const { return value_; }
    const std::vector<PrimeFactor>& factors() const { return factors_; }

private:
    FactoredInteger(mpz_class v, std::vector<PrimeFactor> f)
        : value_(std::move(v)), factors_(std::move(f)) {}

    mpz_class value_;
    std::vector<PrimeFactor> factors_;
};

inline constexpr std::uint64_t kPrimeLimitBudget = 1ull << 31;
inline constexpr std::uint64_t kDefaultSegmentSize = 1u << 20;

// Ascending list of all primes <= limit, built by a segmented sieve.
// Immutable after construction; safe to share across threads once spf()
// has been materialized (call it before sharing if it is needed).
class PrimeTable {
public:
    explicit PrimeTable(std::uint64_t limit, int threads = 1,
                        std::uint64_t segment_size = kDefaultSegmentSize);

    std::uint64_t limit() const { return limit_; }
    const std::vector<std::uint64_t>& primes() const { return primes_; }

    // Smallest-prime-factor array indexed 2..limit, built on first use.
    const std::vector<std::uint32_t>& spf();

private:
    std::uint64_t limit_;
    std::vector<std::uint64_t> primes_;
    std::vector<std::uint32_t> spf_;
};

PrimeTable primes_up_to(std::uint64_t limit, int threads = 1);

FactoredInteger factorize(std::uint64_t n);
int mobius(std::uint64_t n);
std::uint64_t totient(std::uint64_t n);
std::uint64_t radical(std::uint64_t n);

}  // namespace cbf
