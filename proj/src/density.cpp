#include "cbf/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "cbf/cyclotomic.hpp"
#include "cbf/represent.hpp"

namespace cbf {

// ---------------------------------------------------------------------------
// Classifiers.
// ---------------------------------------------------------------------------

namespace {

struct ParityFlags {
    bool sum_of_two_squares = true;  // primes 3 mod 4 all even
    bool loeschian = true;           // primes 2 mod 3 all even
    bool both_mod12 = true;          // 2, 3 and primes 5,7,11 mod 12 all even
};

void apply_odd_exponent(ParityFlags& f, std::uint64_t p) {
    if (p % 4 == 3) f.sum_of_two_squares = false;
    if (p % 3 == 2) f.loeschian = false;
    std::uint64_t r = p % 12;
    if (p == 2 || p == 3 || r == 5 || r == 7 || r == 11) f.both_mod12 = false;
}

ParityFlags classify_factors(const std::vector<PrimeFactor>& fs) {
    ParityFlags f;
    for (const auto& pf : fs)
        if (pf.exponent % 2) apply_odd_exponent(f, pf.prime);
    return f;
}

}  // namespace

bool is_sum_of_two_squares(const FactoredInteger& f) {
    if (f.value() < 1) throw std::domain_error("classifier input must be >= 1");
    return classify_factors(f.factors()).sum_of_two_squares;
}

bool is_loeschian(const FactoredInteger& f) {
    if (f.value() < 1) throw std::domain_error("classifier input must be >= 1");
    return classify_factors(f.factors()).loeschian;
}

bool is_both(const FactoredInteger& f) {
    if (f.value() < 1) throw std::domain_error("classifier input must be >= 1");
    auto flags = classify_factors(f.factors());
    bool conjunction = flags.sum_of_two_squares && flags.loeschian;
    if (flags.both_mod12 != conjunction)
        throw internal_error("mod-12 test disagrees with the conjunction");
    return flags.both_mod12;
}

// ---------------------------------------------------------------------------
// Sieves.
// ---------------------------------------------------------------------------

namespace {

// Marks values of x^2 + c xy + y^2 up to N, c in {-1, 0, +1}.
void mark_quadratic(Bitset& bits, std::int64_t N, int c, long long minh,
                    int threads) {
    long long X;
    if (c == 0) {
        X = static_cast<long long>(isqrt_u64(N));
    } else {
        X = static_cast<long long>(isqrt_u64(4 * static_cast<std::uint64_t>(N) / 3));
        while (3 * (X + 1) * (X + 1) <= 4 * N) ++X;
        while (X > 0 && 3 * X * X > 4 * N) --X;
    }
    run_chunked(-X, X + 1, 2048, threads,
                [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
        for (long long x = lo; x < hi; ++x) {
            long long ylo, yhi;
            if (c == 0) {
                auto s = static_cast<long long>(isqrt_u64(N - x * x));
                ylo = -s;
                yhi = s;
            } else {
                std::int64_t D = 4 * N - 3 * x * x;
                auto s = static_cast<long long>(isqrt_u64(D));
                long long center = -c * x;
                // floor((center + sqrt(D))/2) and ceil((center - sqrt(D))/2)
                // agree with the values computed from floor(sqrt(D)).
                long long a = center + s, b = center - s;
                yhi = a >= 0 ? a / 2 : -((-a + 1) / 2);
                ylo = b >= 0 ? (b + 1) / 2 : -((-b) / 2);
            }
            for (long long y = ylo; y <= yhi; ++y) {
                if (std::max(std::llabs(x), std::llabs(y)) < minh) continue;
                long long v = x * x + c * x * y + y * y;
                bits.set_atomic(v);
            }
        }
    });
}

// Marks values of the degree >= 4 form of index n up to N.
void mark_general(Bitset& bits, std::int64_t N, unsigned n, long long minh) {
    mpz_class Nz(static_cast<long>(N));
    auto H = static_cast<long long>(height_bound(Nz, n));
    if (H < minh) return;
    for (long long y = 0; y <= H; ++y) {
        long long x_from = (y == 0) ? 1 : -H;
        for (long long x = x_from; x <= H; ++x) {
            if (std::max(std::llabs(x), y) < minh) continue;
            mpz_class v = form_eval(n, x, y);
            if (v > Nz) continue;
            bits.set_atomic(v.get_si());  // (x,y) and (-x,-y) share the value
        }
    }
}

Bitset sieve_direct(std::int64_t N, Form form, Variant variant, int threads) {
    long long minh = variant == Variant::restricted ? 2 : 1;
    auto quadratic = [&](int c) {
        Bitset b(N + 1);
        mark_quadratic(b, N, c, minh, threads);
        return b;
    };
    switch (form) {
        case Form::phi3:
            return quadratic(+1);
        case Form::phi4:
            return quadratic(0);
        case Form::both: {
            Bitset b = quadratic(+1);
            b.and_with(quadratic(0));
            return b;
        }
        case Form::union34: {
            Bitset b = quadratic(+1);
            b.or_with(quadratic(0));
            return b;
        }
        case Form::all: {
            Bitset b = quadratic(+1);
            b.or_with(quadratic(0));
            mark_quadratic(b, N, -1, minh, threads);
            if (N >= 3) {
                auto cands = candidate_indices(N);
                std::erase_if(cands, [](unsigned n) {
                    return n == 3 || n == 4 || n == 6;
                });
                run_chunked(0, static_cast<std::int64_t>(cands.size()), 1,
                            threads,
                            [&](std::int64_t i, std::int64_t, std::int64_t) {
                    mark_general(b, N, cands[i], minh);
                });
            }
            return b;
        }
    }
    throw std::domain_error("unknown form");
}

Bitset sieve_classify(std::int64_t N, Form form, int threads) {
    if (N > kClassifySieveBudget)
        throw resource_error("classification sieve exceeds the memory budget");
    PrimeTable table(std::max<std::int64_t>(N, 2), threads);
    const auto& spf = table.spf();
    Bitset bits(N + 1);
    // Chunks start on multiples of 65536, so concurrent writes never share
    // a word.
    run_chunked(1, N + 1, 1 << 16, threads,
                [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
        for (std::int64_t v = lo; v < hi; ++v) {
            std::int64_t r = v;
            ParityFlags f;
            while (r > 1) {
                std::uint32_t p = spf[r];
                unsigned e = 0;
                while (r % p == 0) {
                    r /= p;
                    ++e;
                }
                if (e % 2) apply_odd_exponent(f, p);
            }
            if (f.both_mod12 != (f.sum_of_two_squares && f.loeschian))
                throw internal_error("mod-12 test disagrees with the conjunction");
            bool want = form == Form::phi3   ? f.loeschian
                        : form == Form::phi4 ? f.sum_of_two_squares
                                             : f.both_mod12;
            if (want) bits.set(v);
        }
    });
    return bits;
}

}  // namespace

Bitset sieve_representable(std::int64_t N, Form form, Variant variant,
                           SieveMethod method, int threads) {
    if (N < 1) throw std::domain_error("sieve limit must be >= 1");
    if (N > kSieveBudget)
        throw resource_error("sieve limit exceeds the memory budget");
    if (method == SieveMethod::classify) {
        if (variant != Variant::tilde)
            throw std::domain_error("classification sieve covers the tilde variant only");
        if (form != Form::phi3 && form != Form::phi4 && form != Form::both)
            throw std::domain_error("classification sieve covers phi3, phi4 and both");
        return sieve_classify(N, form, threads);
    }
    return sieve_direct(N, form, variant, threads);
}

SieveCounts sieve_counts(std::int64_t N, Variant variant, int threads) {
    if (N < 1) throw std::domain_error("sieve limit must be >= 1");
    if (N > kSieveBudget)
        throw resource_error("sieve limit exceeds the memory budget");
    long long minh = variant == Variant::restricted ? 2 : 1;
    Bitset b3(N + 1), b4(N + 1);
    mark_quadratic(b3, N, +1, minh, threads);
    mark_quadratic(b4, N, 0, minh, threads);

    SieveCounts out{N, variant, b3.count(), b4.count(), 0, 0, 0};
    Bitset inter = b3;
    inter.and_with(b4);
    out.count_both = inter.count();

    Bitset uni = std::move(b3);
    uni.or_with(b4);
    out.count_union34 = uni.count();

    mark_quadratic(uni, N, -1, minh, threads);
    if (N >= 3) {
        auto cands = candidate_indices(N);
        std::erase_if(cands,
                      [](unsigned n) { return n == 3 || n == 4 || n == 6; });
        run_chunked(0, static_cast<std::int64_t>(cands.size()), 1, threads,
                    [&](std::int64_t i, std::int64_t, std::int64_t) {
            mark_general(uni, N, cands[i], minh);
        });
    }
    out.count_all = uni.count();
    return out;
}

// ---------------------------------------------------------------------------
// Euler products and the constants.
// ---------------------------------------------------------------------------

EulerProductResult euler_product(unsigned modulus,
                                 const std::vector<unsigned>& residues,
                                 const PrimeTable& table, double exponent,
                                 int threads) {
    if (modulus == 0) throw std::domain_error("modulus must be positive");
    for (unsigned a : residues)
        if (std::gcd<std::uint64_t>(a, modulus) != 1)
            throw std::domain_error("residues must be coprime to the modulus");
    if (residues.empty()) return {1.0, 0.0};
    if (table.limit() < 100)
        throw std::domain_error("prime bound must be >= 100");

    const auto& ps = table.primes();
    const std::int64_t chunk = 1 << 16;  // fixed, so sums are thread-count invariant
    const std::int64_t nchunks =
        (static_cast<std::int64_t>(ps.size()) + chunk - 1) / chunk;
    std::vector<double> partial(nchunks, 0.0);
    run_chunked(0, static_cast<std::int64_t>(ps.size()), chunk, threads,
                [&](std::int64_t c, std::int64_t lo, std::int64_t hi) {
        double sum = 0.0, comp = 0.0;
        for (std::int64_t i = lo; i < hi; ++i) {
            std::uint64_t p = ps[i];
            std::uint64_t r = p % modulus;
            bool in = false;
            for (unsigned a : residues) in = in || (r == a);
            if (!in) continue;
            double x =
                std::log1p(-1.0 / (static_cast<double>(p) * static_cast<double>(p)));
            double y = x - comp;
            double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        partial[c] = sum;
    });
    double total = 0.0;
    for (double s : partial) total += s;

    double B = static_cast<double>(table.limit());
    double density = static_cast<double>(residues.size()) /
                     static_cast<double>(totient(modulus));
    return {std::exp(exponent * total),
            std::fabs(exponent) * density / (B * std::log(B))};
}

EulerProductResult euler_product(unsigned modulus,
                                 const std::vector<unsigned>& residues,
                                 std::uint64_t prime_bound, double exponent,
                                 int threads) {
    if (prime_bound < 100) throw std::domain_error("prime bound must be >= 100");
    PrimeTable table(prime_bound, threads);
    return euler_product(modulus, residues, table, exponent, threads);
}

double gamma_lanczos(double z) {
    // Godfrey coefficient set, g = 607/128.
    static constexpr double kG = 607.0 / 128.0;
    static constexpr double kCoef[15] = {
        0.99999999999999709182,
        57.156235665862923517,     -59.597960355475491248,
        14.136097974741747174,     -0.49191381609762019978,
        0.33994649984811888699e-4,  0.46523628927048575665e-4,
       -0.98374475304879564677e-4,  0.15808870322491248884e-3,
       -0.21026444172410488319e-3,  0.21743961811521264320e-3,
       -0.16431810653676389022e-3,  0.84418223983852743293e-4,
       -0.26190838401581408670e-4,  0.36899182659531622704e-5,
    };
    if (!std::isfinite(z)) throw std::domain_error("gamma argument must be finite");
    if (z < 0.5)
        return std::numbers::pi / (std::sin(std::numbers::pi * z) * gamma_lanczos(1.0 - z));
    z -= 1.0;
    double s = kCoef[0];
    for (int k = 1; k < 15; ++k) s += kCoef[k] / (z + k);
    double t = z + kG + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) *
           std::exp(-t) * s;
}

ConstantsReport constants(std::uint64_t prime_bound, int threads) {
    if (prime_bound < 10000)
        throw std::domain_error("prime bound must be >= 1e4");
    PrimeTable table(prime_bound, threads);
    auto e4 = euler_product(4, {3}, table, -0.5, threads);
    auto e3 = euler_product(3, {2}, table, -0.5, threads);
    auto e12 = euler_product(12, {5, 7, 11}, table, -0.5, threads);

    const double pi = std::numbers::pi;
    ConstantsReport out{};
    out.prime_bound = prime_bound;
    out.alpha0_4 = e4.value / std::sqrt(2.0);
    out.alpha0_3 = e3.value / (std::sqrt(2.0) * std::pow(3.0, 0.25));
    out.beta0 = std::pow(3.0, 0.25) / std::pow(2.0, 1.25) * std::sqrt(pi) *
                std::pow(std::log(2.0 + std::sqrt(3.0)), 0.25) /
                gamma_lanczos(0.25) * e12.value;
    out.kappa1 = pi / (out.alpha0_3 + out.alpha0_4) * (1.0 + 2.0 / std::sqrt(3.0));
    out.tail_alpha0_4 = out.alpha0_4 * e4.tail_error;
    out.tail_alpha0_3 = out.alpha0_3 * e3.tail_error;
    out.tail_beta0 = out.beta0 * e12.tail_error;
    return out;
}

// ---------------------------------------------------------------------------
// Triple counts and the average multiplicity.
// ---------------------------------------------------------------------------

namespace {

// Lattice points of x^2 + c xy + y^2 <= N with max(|x|,|y|) >= minh,
// counted column by column from exact integer square roots.
long long count_quadratic(std::int64_t N, int c, long long minh) {
    long long total = 0;
    if (c == 0) {
        auto X = static_cast<long long>(isqrt_u64(N));
        for (long long x = -X; x <= X; ++x)
            total += 2 * static_cast<long long>(isqrt_u64(N - x * x)) + 1;
    } else {
        auto X = static_cast<long long>(
            isqrt_u64(4 * static_cast<std::uint64_t>(N) / 3));
        while (3 * (X + 1) * (X + 1) <= 4 * N) ++X;
        while (X > 0 && 3 * X * X > 4 * N) --X;
        for (long long x = -X; x <= X; ++x) {
            std::int64_t D = 4 * N - 3 * x * x;
            auto s = static_cast<long long>(isqrt_u64(D));
            long long a = -c * x + s, b = -c * x - s;
            long long yhi = a >= 0 ? a / 2 : -((-a + 1) / 2);
            long long ylo = b >= 0 ? (b + 1) / 2 : -((-b) / 2);
            total += yhi - ylo + 1;
        }
    }
    for (long long x = -(minh - 1); x <= minh - 1; ++x)
        for (long long y = -(minh - 1); y <= minh - 1; ++y)
            if (x * x + c * x * y + y * y <= N) --total;
    return total;
}

long long count_box(std::int64_t N, unsigned n, long long minh) {
    mpz_class Nz(static_cast<long>(N));
    auto H = static_cast<long long>(height_bound(Nz, n));
    long long total = 0;
    unsigned d = static_cast<unsigned>(totient(n));
    for (long long x = std::max(1LL, minh); x <= H; ++x) {
        mpz_class v;
        mpz_ui_pow_ui(v.get_mpz_t(), x, d);
        if (v > Nz) break;
        total += 2;  // (x, 0) and (-x, 0)
    }
    for (long long y = 1; y <= H; ++y)
        for (long long x = -H; x <= H; ++x) {
            if (std::max(std::llabs(x), y) < minh) continue;
            if (form_eval(n, x, y) <= Nz) total += 2;  // with (-x, -y)
        }
    return total;
}

long long count_triples(std::int64_t N, unsigned min_phi, int threads) {
    if (N < 3) return 0;
    auto cands = candidate_indices(N);
    std::vector<long long> per(cands.size(), 0);
    run_chunked(0, static_cast<std::int64_t>(cands.size()), 1, threads,
                [&](std::int64_t i, std::int64_t, std::int64_t) {
        unsigned n = cands[i];
        if (totient(n) < min_phi) return;
        if (n == 3)
            per[i] = count_quadratic(N, +1, 2);
        else if (n == 4)
            per[i] = count_quadratic(N, 0, 2);
        else if (n == 6)
            per[i] = count_quadratic(N, -1, 2);
        else
            per[i] = count_box(N, n, 2);
    });
    long long total = 0;
    for (long long v : per) total += v;
    return total;
}

}  // namespace

long long count_triples_upto(std::int64_t N, unsigned min_phi, int threads) {
    if (N < 1) throw std::domain_error("N must be >= 1");
    if (N > kSieveBudget)
        throw resource_error("count limit exceeds the memory budget");
    return count_triples(N, min_phi, threads);
}

AverageMultiplicity average_multiplicity(std::int64_t N, int threads) {
    if (N < 1) throw std::domain_error("N must be >= 1");
    if (N > kSieveBudget)
        throw resource_error("count limit exceeds the memory budget");
    AverageMultiplicity out{};
    out.N = N;
    out.S = count_triples(N, 0, threads);
    out.A = sieve_counts(N, Variant::restricted, threads).count_all;
    out.M = out.A ? static_cast<double>(out.S) / static_cast<double>(out.A) : 0.0;
    out.M_over_sqrt_log =
        N >= 3 ? out.M / std::sqrt(std::log(static_cast<double>(N))) : 0.0;
    return out;
}

}  // namespace cbf
