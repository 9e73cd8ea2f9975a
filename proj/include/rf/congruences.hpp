#pragma once

#include <vector>

#include "rf/arith.hpp"

namespace rf {

// Primes in [L, 2L]; counts below are over ordered pairs from this window.
struct PrimeWindow {
    double L = 2.0;
    std::vector<u64> primes;

    u64 K() const { return primes.size(); }

    static PrimeWindow from_range(double L);
    // Test/report hook: explicit prime list, validated against [ceil L, floor 2L].
    static PrimeWindow from_primes(double L, std::vector<u64> primes);
};

struct CountComparison {
    u64 exact = 0;
    double main_term = 0.0;
    double relative_deviation = 0.0;
};

// Solutions of l1*l2*u = a (mod p), l1,l2 in the window, 1 <= u <= h.
u64 count_solutions(u64 a, u64 p, const PrimeWindow& w, double h);

// Same congruence restricted to squarefree products l1*l2*u.
u64 count_squarefree_solutions(u64 a, u64 p, const PrimeWindow& w, double h,
                               const FactorSieve& sieve);

// Solutions of l1*l2^2*v = a (mod p), 1 <= v <= h.
u64 count_skew_solutions(u64 a, u64 p, const PrimeWindow& w, double h);

// Sum of count_solutions at residues a*inv(d^2) over integers d in [F, 2F]
// coprime to p.
u64 count_dilated_solutions(u64 a, u64 p, double F, const PrimeWindow& w, double h);

// max over units a of |sum over window pairs of e_p(a * inv(l1) * inv(l2))|.
// Compensated summation; additive error <= K^2 * 1e-12.
double bilinear_inverse_sum(u64 p, const PrimeWindow& w);

double predict_main_term(const PrimeWindow& w, double h, u64 p);
double predict_squarefree_main_term(const PrimeWindow& w, double h, u64 p);

// Inclusion-exclusion over square divisors of u. The strict reading applies the
// Mobius sum to the raw pair counts and generally overshoots by the non-
// squarefree-product solutions; the ell-separated reading removes the diagonal
// and l | u collisions inside each summand and matches exactly.
enum class MobiusReading { strict, ell_separated };

bool mobius_decomposition_check(u64 a, u64 p, const PrimeWindow& w, double h,
                                const FactorSieve& sieve, MobiusReading reading);

struct StrictDiscrepancy {
    i64 strict_rhs = 0;       // Mobius sum over raw counts
    u64 squarefree_count = 0; // direct squarefree-product count
    i64 discrepancy = 0;      // strict_rhs - squarefree_count
    u64 correction = 0;       // solutions with u squarefree but a window collision
    bool matches = false;     // discrepancy == correction
};

StrictDiscrepancy strict_reading_discrepancy(u64 a, u64 p, const PrimeWindow& w, double h,
                                             const FactorSieve& sieve);

}  // namespace rf
