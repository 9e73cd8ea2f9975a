#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "rf/characters.hpp"

using namespace rf;

TEST_CASE("character table construction") {
    CharacterTable t5 = CharacterTable::build(5);
    CHECK(t5.generator() == 2);
    CHECK(t5.dlog(1) == 0);
    CHECK(t5.dlog(2) == 1);
    CHECK(t5.dlog(4) == 2);
    CHECK(t5.dlog(3) == 3);

    CHECK(CharacterTable::build(7).generator() == 3);

    CharacterTable t101 = CharacterTable::build(101);
    std::vector<char> seen(100, 0);
    for (u64 n = 1; n <= 100; ++n) {
        u32 e = t101.dlog(n);
        CHECK(e < 100);
        CHECK_FALSE(seen[e]);
        seen[e] = 1;
    }

    CHECK_THROWS_AS(CharacterTable::build(2), domain_error);
    CHECK_THROWS_AS(CharacterTable::build(9), domain_error);
    u64 cap = CharacterTable::modulus_cap();
    CharacterTable::set_modulus_cap(50);
    CHECK_THROWS_AS(CharacterTable::build(101), resource_error);
    CharacterTable::set_modulus_cap(cap);
}

TEST_CASE("character sums") {
    CharacterTable t = CharacterTable::build(5);
    CHECK(char_sum(t, 0, 4).real() == doctest::Approx(4.0));
    CHECK(char_sum(t, 0, 4).imag() == doctest::Approx(0.0));

    auto s = char_sum(t, 2, 2);  // quadratic character: 1 + (-1)
    CHECK(std::abs(s) < 1e-12);

    auto s1 = char_sum(t, 1, 2);  // 1 + i
    CHECK(s1.real() == doctest::Approx(1.0));
    CHECK(s1.imag() == doctest::Approx(1.0));

    CHECK_THROWS_AS(char_sum(t, 1, 5), domain_error);
    CHECK_THROWS_AS(char_sum(t, 4, 2), domain_error);
}

TEST_CASE("multiplicativity spot checks") {
    CharacterTable t = CharacterTable::build(97);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        u64 j = rng() % 96;
        u64 m = 1 + rng() % 96, n = 1 + rng() % 96;
        auto lhs = t.chi(j, mulmod(m, n, 97));
        auto rhs = t.chi(j, m) * t.chi(j, n);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("orthogonality") {
    for (u64 p : {3ull, 5ull, 7ull, 101ull}) {
        CharacterTable t = CharacterTable::build(p);
        for (u64 n = 1; n < p; ++n) {
            std::complex<double> s{0, 0};
            for (u64 j = 0; j <= p - 2; ++j) s += t.chi(j, n);
            double expect = n == 1 ? static_cast<double>(p - 1) : 0.0;
            CHECK(std::abs(s - std::complex<double>{expect, 0}) < 1e-9);
        }
    }
}

TEST_CASE("quadratic character agrees with legendre") {
    for (u64 p : primes_in(3, 101)) {
        CharacterTable t = CharacterTable::build(p);
        for (u64 n = 1; n < p; ++n) {
            auto chi = t.chi((p - 1) / 2, n);
            CHECK(chi.real() == doctest::Approx(static_cast<double>(legendre(n, p))));
            CHECK(std::abs(chi.imag()) < 1e-12);
        }
    }
}

TEST_CASE("fourth moments") {
    CharacterTable t5 = CharacterTable::build(5);
    CHECK(fourth_moment(t5, 2, MomentScope::nonprincipal) == doctest::Approx(8.0));
    CHECK(fourth_moment(t5, 2, MomentScope::all) == doctest::Approx(24.0));
    CHECK(fourth_moment(CharacterTable::build(3), 1, MomentScope::nonprincipal) ==
          doctest::Approx(1.0));

    CHECK(fourth_moment_combinatorial(5, 2) == 24);
    CHECK(fourth_moment_combinatorial(7, 1) == 6);

    // brute-force 4-tuple oracle
    for (u64 p : {5ull, 7ull, 13ull}) {
        for (u64 K = 1; K < p; ++K) {
            u64 tuples = 0;
            for (u64 a = 1; a <= K; ++a)
                for (u64 b = 1; b <= K; ++b)
                    for (u64 c = 1; c <= K; ++c)
                        for (u64 d = 1; d <= K; ++d)
                            if (mulmod(a, b, p) == mulmod(c, d, p)) ++tuples;
            CHECK(fourth_moment_combinatorial(p, K) == (p - 1) * tuples);
        }
    }
}

TEST_CASE("dual-path moment equality") {
    for (u64 p : primes_in(3, 97)) {
        CharacterTable t = CharacterTable::build(p);
        auto prefix_all = fourth_moment_prefix(t, p - 1, MomentScope::all);
        auto prefix_non = fourth_moment_prefix(t, p - 1, MomentScope::nonprincipal);
        for (u64 K = 1; K < p; ++K) {
            double analytic = prefix_all[K - 1];
            double combinatorial = fourth_moment_combinatorial(p, K).get_d();
            CHECK(std::abs(analytic - combinatorial) <= 1e-6 * combinatorial);
            CHECK(prefix_non[K - 1] <= prefix_all[K - 1] + 1e-9);
            CHECK(prefix_non[K - 1] == doctest::Approx(fourth_moment(t, K, MomentScope::nonprincipal)));
        }
    }
}

TEST_CASE("least qnr") {
    CHECK(least_qnr(7) == 3);
    CHECK(least_qnr(3) == 2);
    CHECK(least_qnr(23) == 5);

    for (u64 p : primes_in(3, 2000)) {
        std::vector<char> qr(p, 0);
        for (u64 b = 1; b < p; ++b) qr[mulmod(b, b, p)] = 1;
        u64 expect = 0;
        for (u64 m = 2; m < p; ++m)
            if (!qr[m]) {
                expect = m;
                break;
            }
        CHECK(least_qnr(p) == expect);
    }
}

TEST_CASE("qnr counts") {
    CHECK(qnr_count(7, 6) == 3);
    CHECK(qnr_count(7, 2) == 0);
    for (u64 p : {11ull, 13ull, 101ull}) CHECK(qnr_count(p, p - 1) == (p - 1) / 2);
}

TEST_CASE("burgess profile") {
    CHECK(burgess_eta0() == doctest::Approx(0.15163266492815836).epsilon(1e-15));

    auto rows = burgess_profile(10007, {0.5});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].K == 101);
    CHECK(rows[0].T == qnr_count(10007, 101));
    CHECK(rows[0].ratio == doctest::Approx(static_cast<double>(rows[0].T) / 101.0));

    // T > 0 exactly when K reaches the least non-residue
    for (u64 p : {11ull, 101ull, 997ull}) {
        u64 np = least_qnr(p);
        for (u64 K = 1; K < std::min<u64>(p, np + 5); ++K)
            CHECK((qnr_count(p, K) > 0) == (K >= np));
    }
    CHECK_THROWS_AS(burgess_profile(11, {1.5}), domain_error);
}

TEST_CASE("vanishing identity instance p=11") {
    auto A = unrepresentable_qnr_set(11, 2, 1);
    CHECK(A == std::vector<u64>{2, 6, 7, 10});

    VanishingReport rep = character_vanishing_check(11, A, 2, 1);
    CHECK(rep.principal == 4);
    CHECK(rep.quadratic == 4);
    CHECK(rep.expected == 4);
    CHECK(rep.exact_ok);
    CHECK(rep.term_count == 10 * 4 * 1 * 1);
    CHECK(std::abs(rep.full_sum) < 1e-6 * static_cast<double>(rep.term_count));
    CHECK(rep.omega_sharp_sum == doctest::Approx(-2.0 * 4.0).epsilon(1e-9));

    // empty set: everything zero
    VanishingReport empty = character_vanishing_check(11, {}, 2, 1);
    CHECK(empty.principal == 0);
    CHECK(std::abs(empty.full_sum) < 1e-12);

    // 8 = 2^3 * 1^2 is representable -> domain error names it
    CHECK_THROWS_WITH_AS(character_vanishing_check(11, {8}, 2, 1),
                         doctest::Contains("a=8"), domain_error);
    // 3 is a QR mod 11
    CHECK_THROWS_AS(character_vanishing_check(11, {3}, 2, 1), domain_error);
}

TEST_CASE("vanishing identity across small primes") {
    for (u64 p : {7ull, 11ull, 13ull, 19ull, 23ull}) {
        u64 K = 3, U = 2;
        auto A = unrepresentable_qnr_set(p, K, U);
        VanishingReport rep = character_vanishing_check(p, A, K, U);
        CHECK(rep.exact_ok);
        CHECK(std::abs(rep.full_sum) <= 1e-6 * std::max<double>(1.0, rep.term_count));
    }
}
