#include "rf/congruences.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <unordered_map>

namespace rf {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void validate_query(u64 a, u64 p, double h) {
    if (!is_prime_u64(p)) throw domain_error("congruence count: p must be prime");
    if (a % p == 0) throw domain_error("congruence count: residue a divisible by p");
    if (h < 0) throw domain_error("congruence count: h must be nonnegative");
}

// #{u in [1, H] : u = r (mod p)} with 1 <= r < p.
u64 class_count(u64 r, u64 H, u64 p) { return r <= H ? (H - r) / p + 1 : 0; }

// Multiset of pair products mod p, diagonal included.
std::unordered_map<u64, u64> product_buckets(const PrimeWindow& w, u64 p) {
    std::unordered_map<u64, u64> buckets;
    buckets.reserve(w.primes.size() * w.primes.size());
    for (u64 l1 : w.primes)
        for (u64 l2 : w.primes) ++buckets[mulmod(l1 % p, l2 % p, p)];
    return buckets;
}

struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

PrimeWindow PrimeWindow::from_range(double L) {
    if (L < 2.0) throw domain_error("PrimeWindow: L must be >= 2");
    PrimeWindow w;
    w.L = L;
    u64 lo = static_cast<u64>(std::ceil(L));
    u64 hi = static_cast<u64>(std::floor(2.0 * L));
    w.primes = primes_in(lo, hi);
    return w;
}

PrimeWindow PrimeWindow::from_primes(double L, std::vector<u64> primes) {
    PrimeWindow w;
    w.L = L;
    u64 lo = static_cast<u64>(std::ceil(L));
    u64 hi = static_cast<u64>(std::floor(2.0 * L));
    for (u64 q : primes) {
        if (!is_prime_u64(q) || q < lo || q > hi)
            throw domain_error("PrimeWindow: " + std::to_string(q) + " is not a prime in range");
    }
    std::sort(primes.begin(), primes.end());
    w.primes = std::move(primes);
    return w;
}

u64 count_solutions(u64 a, u64 p, const PrimeWindow& w, double h) {
    validate_query(a, p, h);
    const u64 H = static_cast<u64>(std::floor(h));
    if (H == 0) return 0;
    u64 total = 0;
    for (const auto& [v, mult] : product_buckets(w, p)) {
        if (v == 0) continue;  // a is a unit, no solutions on this branch
        u64 r = mulmod(a % p, mod_inverse(v, p), p);
        total += mult * class_count(r, H, p);
    }
    return total;
}

u64 count_squarefree_solutions(u64 a, u64 p, const PrimeWindow& w, double h,
                               const FactorSieve& sieve) {
    validate_query(a, p, h);
    const u64 H = static_cast<u64>(std::floor(h));
    if (H == 0) return 0;
    if (H > sieve.limit())
        throw resource_error("count_squarefree_solutions: h exceeds sieve limit");
    u64 total = 0;
    for (u64 l1 : w.primes)
        for (u64 l2 : w.primes) {
            if (l1 == l2) continue;
            u64 v = mulmod(l1 % p, l2 % p, p);
            if (v == 0) continue;
            u64 r = mulmod(a % p, mod_inverse(v, p), p);
            for (u64 u = r; u <= H; u += p)
                if (u % l1 != 0 && u % l2 != 0 && is_squarefree(u, sieve)) ++total;
        }
    return total;
}

u64 count_skew_solutions(u64 a, u64 p, const PrimeWindow& w, double h) {
    validate_query(a, p, h);
    const u64 H = static_cast<u64>(std::floor(h));
    if (H == 0) return 0;
    u64 total = 0;
    for (u64 l1 : w.primes)
        for (u64 l2 : w.primes) {
            u64 v = mulmod(l1 % p, mulmod(l2 % p, l2 % p, p), p);
            if (v == 0) continue;
            u64 r = mulmod(a % p, mod_inverse(v, p), p);
            total += class_count(r, H, p);
        }
    return total;
}

u64 count_dilated_solutions(u64 a, u64 p, double F, const PrimeWindow& w, double h) {
    validate_query(a, p, h);
    if (F < 1.0 || F > static_cast<double>(p - 1))
        throw domain_error("count_dilated_solutions: F must lie in [1, p-1]");
    u64 lo = static_cast<u64>(std::ceil(F));
    u64 hi = static_cast<u64>(std::floor(2.0 * F));
    u64 total = 0;
    for (u64 d = lo; d <= hi; ++d) {
        if (d % p == 0) continue;
        u64 shift = mulmod(a % p, mod_inverse(mulmod(d % p, d % p, p), p), p);
        total += count_solutions(shift, p, w, h);
    }
    return total;
}

double bilinear_inverse_sum(u64 p, const PrimeWindow& w) {
    if (!is_prime_u64(p)) throw domain_error("bilinear_inverse_sum: p must be prime");
    if (2.0 * w.L >= static_cast<double>(p))
        throw domain_error("bilinear_inverse_sum: requires 2L < p");

    std::unordered_map<u64, u64> buckets;
    for (u64 l1 : w.primes) {
        u64 i1 = mod_inverse(l1, p);
        for (u64 l2 : w.primes) ++buckets[mulmod(i1, mod_inverse(l2, p), p)];
    }
    std::vector<std::pair<u64, u64>> terms(buckets.begin(), buckets.end());
    std::sort(terms.begin(), terms.end());  // deterministic summation order

    double best = 0.0;
    for (u64 a = 1; a < p; ++a) {
        Kahan re, im;
        for (auto [v, mult] : terms) {
            double ang = kTwoPi * static_cast<double>(mulmod(a, v, p)) / static_cast<double>(p);
            re.add(static_cast<double>(mult) * std::cos(ang));
            im.add(static_cast<double>(mult) * std::sin(ang));
        }
        best = std::max(best, std::hypot(re.sum, im.sum));
    }
    return best;
}

double predict_main_term(const PrimeWindow& w, double h, u64 p) {
    double K = static_cast<double>(w.K());
    return K * K * h / static_cast<double>(p);
}

double predict_squarefree_main_term(const PrimeWindow& w, double h, u64 p) {
    constexpr double zeta2 = 1.6449340668482264;  // pi^2/6
    return predict_main_term(w, h, p) / zeta2;
}

namespace {

// Summand of the ell-separated reading: pairs l1 != l2 with l1*l2*d^2*u' = a
// (mod p), u' <= h/d^2, and neither prime dividing d^2*u'.
u64 separated_term(u64 a, u64 p, const PrimeWindow& w, double h, u64 d) {
    const u64 H = static_cast<u64>(std::floor(h / (static_cast<double>(d) * d)));
    if (H == 0) return 0;
    u64 dsq = mulmod(d % p, d % p, p);
    u64 total = 0;
    for (u64 l1 : w.primes)
        for (u64 l2 : w.primes) {
            if (l1 == l2) continue;
            u64 v = mulmod(mulmod(l1 % p, l2 % p, p), dsq, p);
            if (v == 0) continue;
            u64 r = mulmod(a % p, mod_inverse(v, p), p);
            for (u64 u = r; u <= H; u += p) {
                u64 full = d * d * u;
                if (full % l1 != 0 && full % l2 != 0) ++total;
            }
        }
    return total;
}

// Solutions with u squarefree whose product still carries a window collision
// (l1 = l2, or l1 | u, or l2 | u).
u64 collision_count(u64 a, u64 p, const PrimeWindow& w, double h, const FactorSieve& sieve) {
    const u64 H = static_cast<u64>(std::floor(h));
    if (H == 0) return 0;
    u64 total = 0;
    for (u64 l1 : w.primes)
        for (u64 l2 : w.primes) {
            u64 v = mulmod(l1 % p, l2 % p, p);
            if (v == 0) continue;
            u64 r = mulmod(a % p, mod_inverse(v, p), p);
            for (u64 u = r; u <= H; u += p)
                if (is_squarefree(u, sieve) && (l1 == l2 || u % l1 == 0 || u % l2 == 0)) ++total;
        }
    return total;
}

void validate_mobius(u64 a, u64 p, double h) {
    validate_query(a, p, h);
    if (h >= static_cast<double>(p))
        throw domain_error("mobius decomposition: requires h < p so every d <= sqrt(h) is a unit");
}

}  // namespace

namespace {
u64 floor_sqrt(double h) {
    u64 r = static_cast<u64>(std::floor(std::sqrt(h)));
    while (r > 0 && static_cast<double>(r) * static_cast<double>(r) > h) --r;
    while (static_cast<double>(r + 1) * static_cast<double>(r + 1) <= h) ++r;
    return r;
}
}  // namespace

StrictDiscrepancy strict_reading_discrepancy(u64 a, u64 p, const PrimeWindow& w, double h,
                                             const FactorSieve& sieve) {
    validate_mobius(a, p, h);
    const u64 droot = floor_sqrt(h);

    StrictDiscrepancy out;
    for (u64 d = 1; d <= droot; ++d) {
        int mu = mobius(d, sieve);
        if (mu == 0) continue;
        u64 shift = mulmod(a % p, mod_inverse(mulmod(d % p, d % p, p), p), p);
        double hd = h / (static_cast<double>(d) * d);
        out.strict_rhs += static_cast<i64>(mu) * static_cast<i64>(count_solutions(shift, p, w, hd));
    }
    out.squarefree_count = count_squarefree_solutions(a, p, w, h, sieve);
    out.discrepancy = out.strict_rhs - static_cast<i64>(out.squarefree_count);
    out.correction = collision_count(a, p, w, h, sieve);
    out.matches = out.discrepancy == static_cast<i64>(out.correction);
    return out;
}

bool mobius_decomposition_check(u64 a, u64 p, const PrimeWindow& w, double h,
                                const FactorSieve& sieve, MobiusReading reading) {
    validate_mobius(a, p, h);
    if (reading == MobiusReading::strict) {
        StrictDiscrepancy d = strict_reading_discrepancy(a, p, w, h, sieve);
        return d.discrepancy == 0;
    }
    const u64 droot = floor_sqrt(h);
    i64 rhs = 0;
    for (u64 d = 1; d <= droot; ++d) {
        int mu = mobius(d, sieve);
        if (mu == 0) continue;
        rhs += static_cast<i64>(mu) * static_cast<i64>(separated_term(a, p, w, h, d));
    }
    return rhs == static_cast<i64>(count_squarefree_solutions(a, p, w, h, sieve));
}

}  // namespace rf
