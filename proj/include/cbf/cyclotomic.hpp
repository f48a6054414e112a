#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace cbf {

// Exact integer coefficients of the index-n cyclotomic polynomial,
// ascending powers, length degree + 1.
struct CyclotomicPoly {
    unsigned index;
    unsigned degree;
    std::vector<mpz_class> coeffs;
};

// Memoized construction via the Moebius product over (X^d - 1) factors.
// Every division is checked to be exact; a remainder aborts.
const CyclotomicPoly& cyclo_coeffs(unsigned n);

// Value of the binary form of index n at (x, y), exact. Rejects n < 3;
// the two linear forms are excluded throughout.
mpz_class form_eval(unsigned n, const mpz_class& x, const mpz_class& y);
mpz_class form_eval(unsigned n, long long x, long long y);

// Horner evaluation of the index-n polynomial at a real point.
double cyclo_eval_real(unsigned n, double t);

// Reduction of an index n >= 3 to the odd squarefree core with the same
// form minimum: the radical substitution composed with the parity flip
// for even radicals. For a pure power of two the minimum is 1 and there
// is no interior minimizer.
struct IndexReduction {
    unsigned index;
    unsigned radical;     // product of the distinct primes of index
    unsigned core;        // odd squarefree core; 1 for a power of two
    bool power_of_two;
    bool exact_half;      // index == 2 * core: minimizer maps to -t_core
};
IndexReduction reduce_index(unsigned n);

}  // namespace cbf
