#include "cbf/represent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cbf/cyclotomic.hpp"
#include "cbf/util.hpp"

namespace cbf {

mpz_class Representation::height() const {
    mpz_class ax = abs(x), ay = abs(y);
    return ax >= ay ? ax : ay;
}

bool operator<(const Representation& a, const Representation& b) {
    if (a.n != b.n) return a.n < b.n;
    int cx = cmp(a.x, b.x);
    if (cx != 0) return cx < 0;
    return cmp(a.y, b.y) < 0;
}

std::size_t RepresentationReport::b() const {
    std::size_t c = 0;
    for (const auto& r : reps)
        if (totient(r.n) > 2) ++c;
    return c;
}

std::vector<unsigned> candidate_indices(long long m) {
    if (m < 1) throw std::domain_error("m must be >= 1");
    std::vector<unsigned> out;
    if (m < 3) return out;
    double lm = std::log(static_cast<double>(m));
    auto scan_limit = static_cast<unsigned>(
        std::ceil(5.383 * std::pow(lm, 1.161) + 1e-9)) + 1;
    mpz_class mz(static_cast<long>(m));
    for (unsigned n = 3; n <= scan_limit; ++n) {
        unsigned d = static_cast<unsigned>(totient(n));
        mpz_class p3;
        mpz_ui_pow_ui(p3.get_mpz_t(), 3, d / 2);
        if (p3 <= mz) out.push_back(n);
    }
    return out;
}

std::uint64_t height_bound(const mpz_class& m, unsigned n) {
    if (n < 3) throw std::domain_error("height bound requires n >= 3");
    if (m <= 0) throw std::domain_error("height bound requires m >= 1");
    unsigned d = static_cast<unsigned>(totient(n));
    mpz_class rhs = m << d;  // 2^d m
    mpz_class p3;
    mpz_ui_pow_ui(p3.get_mpz_t(), 3, d / 2);
    auto fits = [&](std::uint64_t h) {
        mpz_class hp;
        mpz_ui_pow_ui(hp.get_mpz_t(), h, d);
        return hp * p3 <= rhs;
    };
    long e2;
    double mant = mpz_get_d_2exp(&e2, m.get_mpz_t());
    double log2m = std::log2(mant) + static_cast<double>(e2);
    double guess = std::exp2(log2m / d) * 2.0 / std::sqrt(3.0);
    auto H = static_cast<std::uint64_t>(std::max(0.0, guess));
    while (fits(H + 1)) ++H;
    while (H > 0 && !fits(H)) --H;
    return H;
}

namespace {

// One index worth of search: y from 0 upward, full signed x range, with
// the (x, y) -> (-x, -y) reflection restoring the other half. The y = 0
// axis is scanned for x > 0 only so nothing is counted twice.
std::vector<Representation> search_index(unsigned n, const mpz_class& m,
                                         const mpz_class& min_height,
                                         std::uint64_t H) {
    std::vector<Representation> out;
    const auto hb = static_cast<long long>(H);
    for (long long y = 0; y <= hb; ++y) {
        long long x_from = (y == 0) ? 1 : -hb;
        for (long long x = x_from; x <= hb; ++x) {
            if (std::max(std::llabs(x), y) < min_height) continue;
            mpz_class v = form_eval(n, x, y);
            if (v != m) continue;
            Representation r{n, mpz_class(static_cast<long>(x)),
                             mpz_class(static_cast<long>(y)), v};
            Representation mirror{n, -r.x, -r.y, v};
            out.push_back(std::move(r));
            out.push_back(std::move(mirror));
        }
    }
    return out;
}

}  // namespace

RepresentationReport enumerate_representations(long long m, long long min_height,
                                               int threads) {
    if (m < 1) throw std::domain_error("m must be >= 1");
    RepresentationReport report{m, {}};
    auto cands = candidate_indices(m);
    if (cands.empty()) return report;

    mpz_class mz(static_cast<long>(m)), minh(static_cast<long>(min_height));
    std::vector<std::vector<Representation>> per(cands.size());
    run_chunked(0, static_cast<std::int64_t>(cands.size()), 1, threads,
                [&](std::int64_t idx, std::int64_t, std::int64_t) {
        unsigned n = cands[idx];
        per[idx] = search_index(n, mz, minh, height_bound(mz, n));
    });
    for (auto& v : per)
        report.reps.insert(report.reps.end(),
                           std::make_move_iterator(v.begin()),
                           std::make_move_iterator(v.end()));
    std::sort(report.reps.begin(), report.reps.end());
    auto dup = std::adjacent_find(report.reps.begin(), report.reps.end());
    if (dup != report.reps.end())
        throw internal_error("duplicate representation emitted");
    return report;
}

RepresentationTables representation_tables(long long m_max, int threads) {
    if (m_max < 1) throw std::domain_error("m_max must be >= 1");
    RepresentationTables t{m_max, {}, {}};
    std::vector<std::pair<std::size_t, std::size_t>> counts(m_max + 1);
    run_chunked(1, m_max + 1, 64, threads,
                [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
        for (std::int64_t m = lo; m < hi; ++m) {
            auto rep = enumerate_representations(m);
            counts[m] = {rep.a(), rep.b()};
        }
    });
    for (long long m = 1; m <= m_max; ++m) {
        if (counts[m].first) t.a_rows.emplace_back(m, counts[m].first);
        if (counts[m].second) t.b_rows.emplace_back(m, counts[m].second);
    }
    return t;
}

std::vector<Representation> small_value_triples(unsigned n_max,
                                                std::optional<double> theta) {
    if (n_max < 3) throw std::domain_error("n_max must be >= 3");
    if (theta && (*theta <= 0.0 || *theta >= 1.0))
        throw std::domain_error("theta must lie in ]0, 1[");
    std::vector<Representation> out;
    for (unsigned n = 3; n <= n_max; ++n) {
        unsigned d = static_cast<unsigned>(totient(n));
        // Strict threshold 7^(d/2), or inclusive floor(2^(theta d)).
        mpz_class cap;  // search values <= cap
        bool strict_seven = !theta;
        if (strict_seven) {
            mpz_ui_pow_ui(cap.get_mpz_t(), 7, d / 2);
            cap -= 1;
        } else {
            cap = mpz_class(std::floor(std::exp2(*theta * d)));
        }
        if (cap < 1) continue;
        std::uint64_t H = height_bound(cap, n);
        if (H < 2) continue;
        const auto hb = static_cast<long long>(H);
        for (long long y = 0; y <= hb; ++y) {
            long long x_from = (y == 0) ? 1 : -hb;
            for (long long x = x_from; x <= hb; ++x) {
                if (std::max(std::llabs(x), y) < 2) continue;
                mpz_class v = form_eval(n, x, y);
                if (v > cap) continue;
                mpz_class xz(static_cast<long>(x)), yz(static_cast<long>(y));
                out.push_back({n, -xz, -yz, v});
                out.push_back({n, std::move(xz), std::move(yz), std::move(v)});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

long long m_h(long long h) {
    if (h < 3) throw std::domain_error("h must be >= 3");
    return (h % 2) ? (3 * h * h + 1) / 4 : 3 * h * h / 4;
}

long long m_h_bruteforce(long long h) {
    if (h < 3) throw std::domain_error("h must be >= 3");
    const long long cap = 10 * h * h + 10;
    for (long long m = 1; m <= cap; ++m)
        if (enumerate_representations(m, h).a() > 0) return m;
    throw internal_error("no representation found below the safety cap");
}

UnboundedFamily unbounded_family(unsigned s) {
    if (s < 2) throw std::domain_error("s must be >= 2");
    // First s odd primes.
    std::vector<std::uint64_t> odd_primes;
    for (std::uint64_t c = 3; odd_primes.size() < s; c += 2) {
        bool prime = true;
        for (std::uint64_t q = 3; q * q <= c; q += 2)
            if (c % q == 0) {
                prime = false;
                break;
            }
        if (prime) odd_primes.push_back(c);
    }

    unsigned long long k = 1;
    for (auto p : odd_primes) {
        k *= p - 1;
        if (k > 4096)
            throw resource_error("family exponent exceeds the big-integer budget");
    }

    mpz_class m = mpz_class(1) << static_cast<unsigned>(k);
    UnboundedFamily fam{s, static_cast<unsigned>(k),
                        FactoredInteger::from_factors(
                            m, {{2, static_cast<unsigned>(k)}}),
                        {}, 8 * (static_cast<std::size_t>(s) - 1)};

    for (auto ell : odd_primes) {
        auto t = static_cast<unsigned>(k / (ell - 1));
        mpz_class pw = mpz_class(1) << t;
        for (unsigned n : {static_cast<unsigned>(ell),
                           static_cast<unsigned>(2 * ell)}) {
            for (int sign : {1, -1}) {
                mpz_class sp = sign * pw;
                fam.witnesses.push_back({n, mpz_class(0), sp, form_eval(n, mpz_class(0), sp)});
                fam.witnesses.push_back({n, sp, mpz_class(0), form_eval(n, sp, mpz_class(0))});
            }
        }
    }
    for (const auto& w : fam.witnesses)
        if (w.value != m)
            throw internal_error("family witness does not evaluate to 2^k");
    std::sort(fam.witnesses.begin(), fam.witnesses.end());
    return fam;
}

}  // namespace cbf
