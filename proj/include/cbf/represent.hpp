#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "cbf/arith.hpp"

namespace cbf {

struct Representation {
    unsigned n;
    mpz_class x, y;
    mpz_class value;  // form value at (x, y)

    mpz_class height() const;

    friend bool operator==(const Representation&, const Representation&) = default;
};
bool operator<(const Representation& a, const Representation& b);

struct RepresentationReport {
    long long m;
    std::vector<Representation> reps;  // sorted by (n, x, y), duplicate-free

    std::size_t a() const { return reps.size(); }
    std::size_t b() const;  // representations with degree > 2
};

// Indices n >= 3 whose form can take the value m at height >= 2: exact
// criterion 3^(deg/2) <= m, scanned over a dominating index range.
// Empty for m in {1, 2}.
std::vector<unsigned> candidate_indices(long long m);

// Largest H with 3^(deg/2) H^deg <= 2^deg m, the exact integer version of
// the height bound (2/sqrt(3)) m^(1/deg). Floats only pre-size the search.
std::uint64_t height_bound(const mpz_class& m, unsigned n);

RepresentationReport enumerate_representations(long long m,
                                               long long min_height = 2,
                                               int threads = 1);

struct RepresentationTables {
    long long m_max;
    std::vector<std::pair<long long, std::size_t>> a_rows;  // nonzero a_m
    std::vector<std::pair<long long, std::size_t>> b_rows;  // nonzero b_m
};
RepresentationTables representation_tables(long long m_max, int threads = 1);

// All triples with 3 <= n <= n_max, height >= 2 and form value below
// 7^(deg/2), or at most 2^(theta deg) when theta is given.
std::vector<Representation> small_value_triples(
    unsigned n_max, std::optional<double> theta = std::nullopt);

// Least m represented at height >= h: closed form and exhaustive check.
long long m_h(long long h);
long long m_h_bruteforce(long long h);

// The power-of-two family 2^phi(3*5*...*p_s) with its 8s axis witnesses.
struct UnboundedFamily {
    unsigned s;
    unsigned k;                // phi of the odd-prime product
    FactoredInteger m;         // 2^k, factorization attached
    std::vector<Representation> witnesses;
    std::size_t b_lower_bound;  // 8 (s - 1), witnesses of degree > 2
};
UnboundedFamily unbounded_family(unsigned s);

}  // namespace cbf
