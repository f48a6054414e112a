#pragma once

#include <cstdint>
#include <vector>

#include "cbf/arith.hpp"
#include "cbf/util.hpp"

namespace cbf {

// Largest sieve the bit arrays will accept before reporting a budget error.
inline constexpr std::int64_t kSieveBudget = std::int64_t(1) << 31;
inline constexpr std::int64_t kClassifySieveBudget = std::int64_t(1) << 28;

// Multiplicative classifiers: membership depends only on exponent parities
// of the primes in the indicated residue classes.
bool is_sum_of_two_squares(const FactoredInteger& f);  // p = 3 mod 4 even
bool is_loeschian(const FactoredInteger& f);           // p = 2 mod 3 even
// Both at once: the mod-12 test, cross-checked against the conjunction of
// the two tests above. A disagreement aborts.
bool is_both(const FactoredInteger& f);

enum class Form { phi3, phi4, both, union34, all };
enum class Variant { tilde, restricted };
enum class SieveMethod { direct_lattice, classify };

// Membership bits over [0, N]. The classify method factors every integer
// through a smallest-prime-factor sieve (tilde variant, quadratic forms
// only); the direct method marks form values from lattice points.
Bitset sieve_representable(std::int64_t N, Form form, Variant variant,
                           SieveMethod method = SieveMethod::direct_lattice,
                           int threads = 1);

struct SieveCounts {
    std::int64_t N;
    Variant variant;
    std::int64_t count_phi3;
    std::int64_t count_phi4;
    std::int64_t count_both;
    std::int64_t count_union34;
    std::int64_t count_all;
};
SieveCounts sieve_counts(std::int64_t N, Variant variant, int threads = 1);

struct EulerProductResult {
    double value;
    double tail_error;
};

// prod over primes p <= prime_bound, p mod modulus in residues, of
// (1 - p^-2)^exponent, with the estimated truncation tail.
EulerProductResult euler_product(unsigned modulus,
                                 const std::vector<unsigned>& residues,
                                 std::uint64_t prime_bound, double exponent,
                                 int threads = 1);
EulerProductResult euler_product(unsigned modulus,
                                 const std::vector<unsigned>& residues,
                                 const PrimeTable& table, double exponent,
                                 int threads = 1);

struct ConstantsReport {
    std::uint64_t prime_bound;
    double alpha0_3;
    double alpha0_4;
    double beta0;
    double kappa1;
    double tail_alpha0_3;
    double tail_alpha0_4;
    double tail_beta0;
};
ConstantsReport constants(std::uint64_t prime_bound, int threads = 1);

// Lanczos approximation, accurate to ~1e-13 relative over the real range
// used here. Kept in-module so beta0 has no external dependency.
double gamma_lanczos(double z);

struct AverageMultiplicity {
    std::int64_t N;
    long long S;  // triples (n, x, y), height >= 2, value <= N
    long long A;  // distinct represented values <= N
    double M;     // S / A
    double M_over_sqrt_log;
};
AverageMultiplicity average_multiplicity(std::int64_t N, int threads = 1);

// Triples with degree >= min_phi, height >= 2 and value <= N.
long long count_triples_upto(std::int64_t N, unsigned min_phi, int threads = 1);

}  // namespace cbf
