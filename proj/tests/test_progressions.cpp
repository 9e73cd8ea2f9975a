#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "rf/progressions.hpp"

using namespace rf;

namespace {

// trial-division oracle, no sieve involved
bool smooth_oracle(u64 n, double y) {
    if (n == 1) return true;
    u64 biggest = 1;
    for (u64 p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            biggest = p;
            n /= p;
        }
    if (n > 1) biggest = n;
    return static_cast<double>(biggest) <= y;
}

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

u64 psi_oracle(u64 x, double y, u64 p, u64 a, bool sharp) {
    u64 c = 0;
    for (u64 n = 1; n <= x; ++n)
        if (n % p == a && smooth_oracle(n, y) && (!sharp || squarefree_oracle(n))) ++c;
    return c;
}

}  // namespace

TEST_CASE("psi examples") {
    FactorSieve sieve(100);
    CHECK(psi({20, 5, 3, 1}, sieve) == 4);   // 1, 4, 10, 16
    CHECK(psi({1, 2, 3, 1}, sieve) == 1);    // only n = 1
    CHECK(psi({10, 10, 7, 0}, sieve) == 1);  // only n = 7
}

TEST_CASE("psi sharp examples") {
    FactorSieve sieve(100);
    CHECK(psi_sharp({20, 5, 3, 1}, sieve) == 2);  // 1, 10
    CHECK(psi_sharp({1, 2, 5, 1}, sieve) == 1);

    std::mt19937_64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        u64 x = 1 + rng() % 100;
        double y = 2 + static_cast<double>(rng() % 50);
        u64 p = std::vector<u64>{2, 3, 5, 7, 11, 13}[rng() % 6];
        u64 a = rng() % p;
        ProgressionQuery q{x, y, p, a};
        CHECK(psi_sharp(q, sieve) <= psi(q, sieve));
    }
}

TEST_CASE("query validation") {
    FactorSieve sieve(100);
    CHECK_THROWS_AS(psi({10, 5, 6, 1}, sieve), domain_error);      // composite p
    CHECK_THROWS_AS(psi({10, 5, 7, 9}, sieve), domain_error);      // residue out of range
    CHECK_THROWS_AS(psi({1000, 5, 7, 1}, sieve), resource_error);  // beyond sieve
}

TEST_CASE("sweep equals per-class ops and partitions the smooth count") {
    FactorSieve sieve(2000);
    for (u64 p : {3ull, 7ull, 23ull}) {
        for (double y : {5.0, 20.0, 2000.0}) {
            u64 x = 2000;
            auto rows = sweep_classes(x, y, p, sieve);
            REQUIRE(rows.size() == p);
            u64 total = 0, total_expect = 0;
            for (u64 a = 0; a < p; ++a) {
                CHECK(rows[a].psi == psi({x, y, p, a}, sieve));
                CHECK(rows[a].psi_sharp == psi_sharp({x, y, p, a}, sieve));
                total += rows[a].psi;
            }
            for (u64 n = 1; n <= x; ++n)
                if (smooth_oracle(n, y)) ++total_expect;
            CHECK(total == total_expect);
        }
    }
    auto rows = sweep_classes(20, 5, 3, sieve);
    CHECK(rows[1] == ClassCounts{4, 2});
    auto r23 = sweep_classes(20, 20, 23, sieve);
    CHECK(r23[21] == ClassCounts{0, 0});
}

TEST_CASE("oracle equivalence on a grid") {
    FactorSieve sieve(600);
    for (u64 p : {7ull, 11ull}) {
        for (double y : {10.0, 50.0, 600.0}) {
            auto rows = sweep_classes(600, y, p, sieve);
            for (u64 a = 0; a < p; ++a) {
                CHECK(rows[a].psi == psi_oracle(600, y, p, a, false));
                CHECK(rows[a].psi_sharp == psi_oracle(600, y, p, a, true));
            }
        }
    }
}

TEST_CASE("monotone in x and y") {
    FactorSieve sieve(500);
    u64 prev = 0;
    for (u64 x = 1; x <= 500; x += 7) {
        u64 v = psi({x, 7, 5, 2}, sieve);
        CHECK(v >= prev);
        prev = v;
    }
    prev = 0;
    for (double y = 2; y <= 101; y += 3) {
        u64 v = psi_sharp({400, y, 7, 3}, sieve);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("coverage threshold") {
    FactorSieve sieve(100);
    auto m3 = coverage_threshold(3);
    REQUIRE(m3.has_value());
    CHECK(*m3 == 3);

    CHECK_FALSE(coverage_threshold(5).has_value());
    CHECK_FALSE(coverage_threshold(7).has_value());

    auto m11 = coverage_threshold(11);
    REQUIRE(m11.has_value());
    CHECK(*m11 == 42);

    ClassCoverage cov = squarefree_smooth_coverage(5);
    CHECK_FALSE(cov.first_hit[4].has_value());  // class 4 mod 5 is never hit
    CHECK(cov.first_hit[0].has_value());

    CoverageOptions tight;
    tight.max_primes = 3;
    CHECK_THROWS_AS(coverage_threshold(11, tight), resource_error);

    CoverageOptions no_zero;
    no_zero.include_class_zero = false;
    auto m11nz = coverage_threshold(11, no_zero);
    REQUIRE(m11nz.has_value());
    CHECK(*m11nz == 42);  // class 9 still decides
}

TEST_CASE("coverage against subset-product brute force") {
    // independent check: enumerate all subset products of primes <= p directly
    for (u64 p : {3ull, 5ull, 7ull, 11ull, 13ull}) {
        std::vector<u64> ps = primes_up_to(p);
        std::vector<BigNatural> best(p, 0);
        for (u64 mask = 0; mask < (1ull << ps.size()); ++mask) {
            BigNatural prod = 1;
            for (std::size_t i = 0; i < ps.size(); ++i)
                if (mask & (1ull << i)) prod *= ps[i];
            u64 cls = mpz_fdiv_ui(prod.get_mpz_t(), p);
            if (best[cls] == 0 || prod < best[cls]) best[cls] = prod;
        }
        ClassCoverage cov = squarefree_smooth_coverage(p);
        for (u64 a = 0; a < p; ++a) {
            if (best[a] == 0)
                CHECK_FALSE(cov.first_hit[a].has_value());
            else {
                REQUIRE(cov.first_hit[a].has_value());
                CHECK(*cov.first_hit[a] == best[a]);
            }
        }
    }
}
