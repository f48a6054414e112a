#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace cbf {

// Minimum of the index-n polynomial over the reals, attained on [-1, 1]
// because the polynomial is reciprocal. t is the minimizer of the core
// polynomial; t_exact_for_index marks the cases (n equal to the core, or
// exactly twice an odd core) where it is also the minimizer in the
// original variable, up to the documented sign flip.
struct FormMinimum {
    unsigned index;
    unsigned radical;
    unsigned core;            // odd squarefree core, 1 for powers of two
    bool power_of_two;        // c == 1, no interior minimizer
    double c;
    std::optional<double> t;
    bool t_exact_for_index;
    double abs_error;         // bound valid for both c and t
    double bound_p1;          // p1^(-2^(r-2)), 1 when r == 0
    double bound_sqrt3;       // (sqrt(3)/2)^degree
};

FormMinimum cn(unsigned n);

struct PrimeMinimum {
    double t;
    double c;
};

// Unique critical point of the index-p polynomial for an odd prime p,
// located in ]-1, -1/2] by sign bisection of the exact derivative.
PrimeMinimum tp_for_prime(std::uint64_t p);

struct LowerBounds {
    double p1_bound;
    double sqrt3_bound;
};
LowerBounds cn_lower_bounds(unsigned n);

// Predicate: form value at (x, y) dominates (c_n - err) * max(|x|,|y|)^deg.
bool form_lower_bound_check(unsigned n, long long x, long long y);

// Grid bracketing plus golden-section refinement of a polynomial minimum
// on [a, b]. Exposed so independent scans over wider intervals can be run
// against the standard one.
struct GridMinResult {
    double t;
    double value;
    double abs_error;
};
GridMinResult minimize_polynomial(const std::vector<double>& coeffs, double a,
                                  double b, int grid_points = 4096,
                                  double tol = 1e-12);

}  // namespace cbf
