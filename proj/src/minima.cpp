#include "cbf/minima.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include <gmpxx.h>

#include "cbf/arith.hpp"
#include "cbf/cyclotomic.hpp"
#include "cbf/util.hpp"

namespace cbf {

namespace {

double horner(const std::vector<double>& c, double t) {
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
    return acc;
}

std::vector<double> real_coeffs_of(unsigned n) {
    const auto& poly = cyclo_coeffs(n);
    std::vector<double> c;
    c.reserve(poly.coeffs.size());
    for (const auto& z : poly.coeffs) c.push_back(z.get_d());
    return c;
}

// Golden-section search on a bracket assumed to contain a local minimum.
void golden_refine(const std::vector<double>& c, double lo, double hi,
                   double tol, double& best_t, double& best_v) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = horner(c, x1), f2 = horner(c, x2);
    while (hi - lo > tol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = horner(c, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = horner(c, x2);
        }
    }
    double t = 0.5 * (lo + hi);
    double v = horner(c, t);
    if (v < best_v) {
        best_v = v;
        best_t = t;
    }
}

}  // namespace

GridMinResult minimize_polynomial(const std::vector<double>& coeffs, double a,
                                  double b, int grid_points, double tol) {
    if (grid_points < 3) throw std::domain_error("grid needs >= 3 points");
    const double step = (b - a) / (grid_points - 1);
    std::vector<double> v(grid_points);
    for (int k = 0; k < grid_points; ++k) v[k] = horner(coeffs, a + k * step);

    double best_t = a, best_v = v[0];
    for (int k = 1; k < grid_points; ++k)
        if (v[k] < best_v) {
            best_v = v[k];
            best_t = a + k * step;
        }
    // Refine every interior grid valley, plus the end cells.
    for (int k = 1; k + 1 < grid_points; ++k)
        if (v[k] <= v[k - 1] && v[k] <= v[k + 1])
            golden_refine(coeffs, a + (k - 1) * step, a + (k + 1) * step, tol,
                          best_t, best_v);
    if (v[0] < v[1]) golden_refine(coeffs, a, a + step, tol, best_t, best_v);
    if (v[grid_points - 1] < v[grid_points - 2])
        golden_refine(coeffs, b - step, b, tol, best_t, best_v);

    return GridMinResult{best_t, best_v, tol + 1e-12};
}

namespace {

FormMinimum compute_cn(unsigned n) {
    auto red = reduce_index(n);
    unsigned deg = static_cast<unsigned>(totient(n));

    FormMinimum out{};
    out.index = n;
    out.radical = red.radical;
    out.core = red.core;
    out.power_of_two = red.power_of_two;
    out.bound_sqrt3 = std::pow(std::sqrt(3.0) / 2.0, static_cast<double>(deg));

    unsigned r = 0;
    std::uint64_t p1 = 0;
    if (!red.power_of_two) {
        auto f = factorize(red.core);
        r = static_cast<unsigned>(f.factors().size());
        p1 = f.factors().front().prime;
    }
    out.bound_p1 =
        r == 0 ? 1.0
               : std::pow(static_cast<double>(p1),
                          -std::ldexp(1.0, static_cast<int>(r) - 2));

    if (red.power_of_two) {
        out.c = 1.0;
        out.t = std::nullopt;
        out.t_exact_for_index = true;
        out.abs_error = 0.0;
        return out;
    }

    auto res = minimize_polynomial(real_coeffs_of(red.core), -1.0, 1.0);
    out.c = res.value;
    out.abs_error = res.abs_error;
    if (n == red.core) {
        out.t = res.t;
        out.t_exact_for_index = true;
    } else if (red.exact_half) {
        out.t = -res.t;  // phi_{2m}(X) = phi_m(-X) for odd m
        out.t_exact_for_index = true;
    } else {
        out.t = res.t;  // minimizer in the core variable
        out.t_exact_for_index = false;
    }
    return out;
}

}  // namespace

FormMinimum cn(unsigned n) {
    if (n < 3) throw std::domain_error("form minimum requires n >= 3");
    static std::mutex mu;
    static std::map<unsigned, FormMinimum> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto fm = compute_cn(n);
    cache.emplace(n, fm);
    return fm;
}

PrimeMinimum tp_for_prime(std::uint64_t p) {
    if (p == 2) throw std::domain_error("tp is defined for odd primes only");
    auto f = factorize(p);
    if (f.factors().size() != 1 || f.factors()[0].exponent != 1)
        throw std::domain_error("tp requires a prime argument");

    // phi_p has all coefficients 1; its derivative has coefficient k at
    // degree k-1. The derivative is negative at -1 and nonnegative at -1/2.
    std::vector<double> dcoef(p - 1);
    for (std::uint64_t k = 1; k < p; ++k) dcoef[k - 1] = static_cast<double>(k);
    std::vector<double> pcoef(p, 1.0);

    double lo = -1.0, hi = -0.5;
    if (!(horner(dcoef, lo) < 0.0) || horner(dcoef, hi) < 0.0)
        throw internal_error("derivative bisection bracket is invalid");
    while (hi - lo > 1e-13) {
        double mid = 0.5 * (lo + hi);
        (horner(dcoef, mid) < 0.0 ? lo : hi) = mid;
    }
    double t = 0.5 * (lo + hi);
    double c = horner(pcoef, t);

    double identity = static_cast<double>(p) * std::pow(t, static_cast<double>(p - 1));
    if (std::fabs(c - identity) > 1e-9)
        throw internal_error("critical-point identity c = p t^(p-1) violated");
    return PrimeMinimum{t, c};
}

LowerBounds cn_lower_bounds(unsigned n) {
    auto fm = cn(n);
    return LowerBounds{fm.bound_p1, fm.bound_sqrt3};
}

bool form_lower_bound_check(unsigned n, long long x, long long y) {
    auto fm = cn(n);
    unsigned deg = static_cast<unsigned>(totient(n));
    double h = static_cast<double>(std::max(std::llabs(x), std::llabs(y)));
    double rhs = (fm.c - fm.abs_error) * std::pow(h, static_cast<double>(deg));
    mpz_class lhs = form_eval(n, x, y);
    return mpz_cmp_d(lhs.get_mpz_t(), rhs) >= 0;
}

}  // namespace cbf
