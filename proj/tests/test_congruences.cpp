#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "rf/congruences.hpp"

using namespace rf;

namespace {

bool squarefree_oracle(u64 n) {
    for (u64 p = 2; p * p <= n; ++p) {
        u32 e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 1) return false;
    }
    return true;
}

u64 oracle_N(u64 a, u64 p, const PrimeWindow& w, double h, bool sharp) {
    u64 H = static_cast<u64>(std::floor(h));
    u64 count = 0;
    for (u64 l1 : w.primes)
        for (u64 l2 : w.primes)
            for (u64 u = 1; u <= H; ++u) {
                if (mulmod(mulmod(l1 % p, l2 % p, p), u % p, p) != a % p) continue;
                if (sharp && !squarefree_oracle(l1 * l2 * u)) continue;
                ++count;
            }
    return count;
}

u64 oracle_Q(u64 a, u64 p, const PrimeWindow& w, double h) {
    u64 H = static_cast<u64>(std::floor(h));
    u64 count = 0;
    for (u64 l1 : w.primes)
        for (u64 l2 : w.primes)
            for (u64 v = 1; v <= H; ++v)
                if (mulmod(mulmod(l1 % p, mulmod(l2 % p, l2 % p, p), p), v % p, p) == a % p)
                    ++count;
    return count;
}

double oracle_bilinear(u64 p, const PrimeWindow& w) {
    double best = 0;
    for (u64 a = 1; a < p; ++a) {
        std::complex<double> s{0, 0};
        for (u64 l1 : w.primes)
            for (u64 l2 : w.primes) {
                u64 z = mulmod(a, mulmod(mod_inverse(l1, p), mod_inverse(l2, p), p), p);
                double ang = 2.0 * M_PI * static_cast<double>(z) / static_cast<double>(p);
                s += std::complex<double>{std::cos(ang), std::sin(ang)};
            }
        best = std::max(best, std::abs(s));
    }
    return best;
}

}  // namespace

TEST_CASE("prime window") {
    PrimeWindow w = PrimeWindow::from_range(2);
    CHECK(w.primes == std::vector<u64>{2, 3});
    CHECK(w.K() == 2);

    PrimeWindow w24 = PrimeWindow::from_range(24);
    CHECK(w24.primes == std::vector<u64>{29, 31, 37, 41, 43, 47});

    CHECK_THROWS_AS(PrimeWindow::from_primes(2, {5}), domain_error);
    CHECK_THROWS_AS(PrimeWindow::from_range(1.5), domain_error);
}

TEST_CASE("count_solutions examples") {
    PrimeWindow w = PrimeWindow::from_range(2);
    CHECK(count_solutions(1, 7, w, 3) == 1);  // (2,2,2)
    CHECK(count_solutions(5, 7, w, 1) == 0);
    CHECK(count_solutions(6, 7, w, 1) == 2);  // (2,3,1), (3,2,1)

    PrimeWindow w24 = PrimeWindow::from_range(24);
    CHECK(count_solutions(1, 5000003, w24, 1) == 0);  // all products below p and != 1

    CHECK_THROWS_AS(count_solutions(14, 7, w, 3), domain_error);
    CHECK_THROWS_AS(count_solutions(1, 6, w, 3), domain_error);
}

TEST_CASE("squarefree variant examples") {
    FactorSieve sieve(1000);
    PrimeWindow w = PrimeWindow::from_range(2);
    CHECK(count_squarefree_solutions(1, 7, w, 3, sieve) == 0);
    CHECK(count_squarefree_solutions(6, 7, w, 1, sieve) == 2);
}

TEST_CASE("skew count examples") {
    PrimeWindow w = PrimeWindow::from_range(2);
    CHECK(count_skew_solutions(1, 7, w, 2) == 2);  // (2,2,v=1), (2,3,v=2)
    CHECK(count_skew_solutions(1, 7, w, 1) == 1);
}

TEST_CASE("dilated sum examples") {
    PrimeWindow w = PrimeWindow::from_range(2);
    CHECK(count_dilated_solutions(1, 7, 1, w, 3) == 2);  // d=1 -> 1, d=2 -> N_2 = 1
    u64 manual = count_solutions(1, 7, w, 3) +
                 count_solutions(mulmod(1, mod_inverse(4, 7), 7), 7, w, 3);
    CHECK(count_dilated_solutions(1, 7, 1, w, 3) == manual);
    CHECK_THROWS_AS(count_dilated_solutions(1, 7, 7, w, 3), domain_error);  // F > p-1
}

TEST_CASE("counts match exhaustive triple loops") {
    FactorSieve sieve(200);
    std::mt19937_64 rng(42);
    for (u64 p : {5ull, 7ull, 11ull, 13ull, 101ull, 199ull}) {
        for (double L : {2.0, 5.0, 10.0}) {
            PrimeWindow w = PrimeWindow::from_range(L);
            for (int trial = 0; trial < 8; ++trial) {
                u64 a = 1 + rng() % (p - 1);
                double h = 1 + static_cast<double>(rng() % 50);
                CHECK(count_solutions(a, p, w, h) == oracle_N(a, p, w, h, false));
                CHECK(count_squarefree_solutions(a, p, w, h, sieve) == oracle_N(a, p, w, h, true));
                CHECK(count_skew_solutions(a, p, w, h) == oracle_Q(a, p, w, h));
                CHECK(count_squarefree_solutions(a, p, w, h, sieve) <= count_solutions(a, p, w, h));
            }
        }
    }
}

TEST_CASE("partition over residues") {
    // sum over units of count_solutions = K^2 * floor(h) when 2L < p and h < p
    for (u64 p : {23ull, 101ull, 499ull}) {
        PrimeWindow w = PrimeWindow::from_range(5);
        double h = static_cast<double>(p - 1);
        u64 total = 0;
        for (u64 a = 1; a < p; ++a) total += count_solutions(a, p, w, h);
        CHECK(total == w.K() * w.K() * static_cast<u64>(h));
    }
}

TEST_CASE("bilinear sum") {
    PrimeWindow w = PrimeWindow::from_range(2);
    double v5 = bilinear_inverse_sum(5, w);
    CHECK(v5 == doctest::Approx(4.0 * std::cos(M_PI / 5)).epsilon(1e-12));
    CHECK(v5 == doctest::Approx(oracle_bilinear(5, w)).epsilon(1e-12));

    double v7 = bilinear_inverse_sum(7, w);
    CHECK(v7 <= 4.0 + 1e-12);
    CHECK(v7 == doctest::Approx(oracle_bilinear(7, w)).epsilon(1e-12));

    for (u64 p : {11ull, 13ull, 101ull}) {
        PrimeWindow w5 = PrimeWindow::from_range(2.5);
        CHECK(bilinear_inverse_sum(p, w5) ==
              doctest::Approx(oracle_bilinear(p, w5)).epsilon(1e-10));
    }

    CHECK_THROWS_AS(bilinear_inverse_sum(5, PrimeWindow::from_range(3)), domain_error);
}

TEST_CASE("conjugation symmetry |S(a)| = |S(p-a)|") {
    PrimeWindow w = PrimeWindow::from_range(3);
    u64 p = 29;
    for (u64 a = 1; a < p; ++a) {
        std::complex<double> sa{0, 0}, sb{0, 0};
        for (u64 l1 : w.primes)
            for (u64 l2 : w.primes) {
                u64 z = mulmod(mod_inverse(l1, p), mod_inverse(l2, p), p);
                double ang1 = 2.0 * M_PI * static_cast<double>(mulmod(a, z, p)) / p;
                double ang2 = 2.0 * M_PI * static_cast<double>(mulmod(p - a, z, p)) / p;
                sa += std::complex<double>{std::cos(ang1), std::sin(ang1)};
                sb += std::complex<double>{std::cos(ang2), std::sin(ang2)};
            }
        CHECK(std::abs(sa) == doctest::Approx(std::abs(sb)).epsilon(1e-9));
    }
}

TEST_CASE("main term predictions") {
    PrimeWindow w = PrimeWindow::from_range(2);  // K = 2
    CHECK(predict_main_term(w, 3, 7) == doctest::Approx(12.0 / 7.0));
    CHECK(predict_squarefree_main_term(w, 3, 7) ==
          doctest::Approx((12.0 / 7.0) / 1.6449340668482264));
    PrimeWindow empty = PrimeWindow::from_primes(2, {});
    CHECK(predict_main_term(empty, 10, 7) == 0.0);
}

TEST_CASE("mobius decomposition readings") {
    FactorSieve sieve(1000);
    PrimeWindow w = PrimeWindow::from_range(2);

    // strict reading fails here: the lone solution (2,2,2) has u squarefree but
    // a repeated window prime
    CHECK_FALSE(mobius_decomposition_check(1, 7, w, 3, sieve, MobiusReading::strict));
    CHECK(mobius_decomposition_check(1, 7, w, 3, sieve, MobiusReading::ell_separated));

    CHECK(mobius_decomposition_check(6, 7, w, 1, sieve, MobiusReading::strict));
    CHECK(mobius_decomposition_check(6, 7, w, 1, sieve, MobiusReading::ell_separated));

    StrictDiscrepancy d = strict_reading_discrepancy(1, 7, w, 3, sieve);
    CHECK(d.strict_rhs == 1);
    CHECK(d.squarefree_count == 0);
    CHECK(d.discrepancy == 1);
    CHECK(d.correction == 1);
    CHECK(d.matches);

    CHECK_THROWS_AS(mobius_decomposition_check(1, 7, w, 7, sieve, MobiusReading::strict),
                    domain_error);  // needs h < p
}

TEST_CASE("ell-separated identity is exact on a grid") {
    FactorSieve sieve(1000);
    std::mt19937_64 rng(99);
    for (u64 p : {11ull, 13ull, 53ull, 199ull}) {
        for (double L : {2.0, 5.0, 10.0}) {
            PrimeWindow w = PrimeWindow::from_range(L);
            for (int trial = 0; trial < 6; ++trial) {
                u64 a = 1 + rng() % (p - 1);
                double h = 1 + static_cast<double>(rng() % std::min<u64>(50, p - 2));
                CHECK(mobius_decomposition_check(a, p, w, h, sieve, MobiusReading::ell_separated));
                StrictDiscrepancy d = strict_reading_discrepancy(a, p, w, h, sieve);
                CHECK(d.matches);
            }
        }
    }
}
