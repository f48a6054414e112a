#include "cbf/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <shared_mutex>
#include <stdexcept>

#include "cbf/arith.hpp"
#include "cbf/util.hpp"

namespace cbf {

namespace {

// p <- p * (X^d - 1)
void multiply_by_xd_minus_1(std::vector<mpz_class>& p, unsigned d) {
    std::vector<mpz_class> out(p.size() + d);
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i + d] += p[i];
        out[i] -= p[i];
    }
    p = std::move(out);
}

// p <- p / (X^d - 1), which must be exact.
void divide_by_xd_minus_1(std::vector<mpz_class>& p, unsigned d) {
    if (p.size() <= d)
        throw internal_error("cyclotomic division: degree underflow");
    std::vector<mpz_class> q(p.size() - d);
    for (std::size_t i = p.size(); i-- > d;) {
        q[i - d] = p[i];
        p[i - d] += q[i - d];
    }
    for (unsigned i = 0; i < d; ++i)
        if (p[i] != 0)
            throw internal_error("cyclotomic division left a remainder");
    p = std::move(q);
}

CyclotomicPoly build_cyclotomic(unsigned n) {
    std::vector<unsigned> divisors;
    for (unsigned d = 1; d <= n; ++d)
        if (n % d == 0) divisors.push_back(d);

    std::vector<mpz_class> poly{mpz_class(1)};
    for (unsigned d : divisors)
        if (mobius(n / d) == 1) multiply_by_xd_minus_1(poly, d);
    for (unsigned d : divisors)
        if (mobius(n / d) == -1) divide_by_xd_minus_1(poly, d);

    unsigned deg = static_cast<unsigned>(poly.size() - 1);
    if (deg != totient(n))
        throw internal_error("cyclotomic degree mismatch");
    return CyclotomicPoly{n, deg, std::move(poly)};
}

}  // namespace

const CyclotomicPoly& cyclo_coeffs(unsigned n) {
    if (n == 0) throw std::domain_error("cyclotomic index must be >= 1");
    static std::shared_mutex mu;
    static std::map<unsigned, std::unique_ptr<const CyclotomicPoly>> cache;
    {
        std::shared_lock lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return *it->second;
    }
    auto built = std::make_unique<const CyclotomicPoly>(build_cyclotomic(n));
    std::unique_lock lock(mu);
    auto [it, inserted] = cache.try_emplace(n, std::move(built));
    return *it->second;
}

mpz_class form_eval(unsigned n, const mpz_class& x, const mpz_class& y) {
    if (n < 3)
        throw std::domain_error("binary form index must be >= 3");
    const auto& poly = cyclo_coeffs(n);
    const auto& c = poly.coeffs;
    unsigned d = poly.degree;
    if (y == 0) {
        mpz_class v;
        mpz_pow_ui(v.get_mpz_t(), x.get_mpz_t(), d);
        return v;
    }
    // Homogeneous Horner: acc carries sum_{i>=k} c_i x^{i-k} y^{d-i}.
    mpz_class acc = c[d], ypow = 1;
    for (unsigned i = d; i-- > 0;) {
        ypow *= y;
        acc *= x;
        acc += c[i] * ypow;
    }
    return acc;
}

mpz_class form_eval(unsigned n, long long x, long long y) {
    return form_eval(n, mpz_class(static_cast<long>(x)),
                     mpz_class(static_cast<long>(y)));
}

namespace {

// Coefficients as doubles, cached alongside the exact ones. Cyclotomic
// coefficients in the ranges used here are tiny, so the conversion is exact.
const std::vector<double>& real_coeffs(unsigned n) {
    static std::shared_mutex mu;
    static std::map<unsigned, std::unique_ptr<const std::vector<double>>> cache;
    {
        std::shared_lock lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return *it->second;
    }
    const auto& poly = cyclo_coeffs(n);
    auto v = std::make_unique<std::vector<double>>();
    v->reserve(poly.coeffs.size());
    for (const auto& c : poly.coeffs) v->push_back(c.get_d());
    std::unique_lock lock(mu);
    auto [it, inserted] = cache.try_emplace(n, std::move(v));
    return *it->second;
}

}  // namespace

double cyclo_eval_real(unsigned n, double t) {
    if (n == 0) throw std::domain_error("cyclotomic index must be >= 1");
    if (!std::isfinite(t)) throw std::domain_error("evaluation point must be finite");
    const auto& c = real_coeffs(n);
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
    return acc;
}

IndexReduction reduce_index(unsigned n) {
    if (n < 3) throw std::domain_error("index reduction requires n >= 3");
    auto f = factorize(n);
    unsigned rad = 1, core = 1;
    for (const auto& pf : f.factors()) {
        rad *= static_cast<unsigned>(pf.prime);
        if (pf.prime != 2) core *= static_cast<unsigned>(pf.prime);
    }
    bool pow2 = (core == 1);
    bool exact_half = (n == 2u * core) && !pow2;
    return IndexReduction{n, rad, core, pow2, exact_half};
}

}  // namespace cbf
