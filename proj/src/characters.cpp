#include "rf/characters.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace rf {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

u64 g_modulus_cap = 100000;

struct KahanC {
    double re = 0, im = 0, cre = 0, cim = 0;
    void add(std::complex<double> z) {
        double y = z.real() - cre, t = re + y;
        cre = (t - re) - y;
        re = t;
        y = z.imag() - cim;
        t = im + y;
        cim = (t - im) - y;
        im = t;
    }
    std::complex<double> value() const { return {re, im}; }
};

}  // namespace

u64 CharacterTable::modulus_cap() { return g_modulus_cap; }
void CharacterTable::set_modulus_cap(u64 cap) { g_modulus_cap = cap; }

u64 least_primitive_root(u64 p) {
    if (p == 2 || !is_prime_u64(p))
        throw domain_error("least_primitive_root: p must be an odd prime");
    u64 phi = p - 1;
    std::vector<u64> prime_factors;
    u64 m = phi;
    for (u64 q = 2; q * q <= m; q == 2 ? q = 3 : q += 2)
        if (m % q == 0) {
            prime_factors.push_back(q);
            while (m % q == 0) m /= q;
        }
    if (m > 1) prime_factors.push_back(m);

    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        for (u64 q : prime_factors)
            if (powmod(g, phi / q, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw domain_error("least_primitive_root: none found (p not prime?)");
}

CharacterTable CharacterTable::build(u64 p) {
    if (p == 2 || !is_prime_u64(p))
        throw domain_error("CharacterTable: p must be an odd prime");
    if (p > g_modulus_cap)
        throw resource_error("CharacterTable: p=" + std::to_string(p) +
                             " exceeds modulus cap " + std::to_string(g_modulus_cap));

    CharacterTable t;
    t.p_ = p;
    t.g_ = least_primitive_root(p);
    t.dlog_.assign(p, 0);
    u64 acc = 1;
    for (u32 e = 0; e < p - 1; ++e) {
        t.dlog_[acc] = e;
        acc = mulmod(acc, t.g_, p);
    }
    t.unit_.resize(p - 1);
    for (u64 k = 0; k < p - 1; ++k) {
        double ang = kTwoPi * static_cast<double>(k) / static_cast<double>(p - 1);
        t.unit_[k] = {std::cos(ang), std::sin(ang)};
    }
    return t;
}

u32 CharacterTable::dlog(u64 n) const {
    n %= p_;
    if (n == 0) throw domain_error("CharacterTable::dlog: n divisible by p");
    return dlog_[n];
}

std::complex<double> CharacterTable::chi(u64 j, u64 n) const {
    n %= p_;
    if (n == 0) return {0.0, 0.0};
    return unit_[(j % (p_ - 1)) * dlog_[n] % (p_ - 1)];
}

std::complex<double> char_sum(const CharacterTable& table, u64 j, u64 K) {
    if (j > table.p() - 2) throw domain_error("char_sum: character index out of range");
    if (K >= table.p()) throw domain_error("char_sum: requires K < p");
    KahanC acc;
    for (u64 n = 1; n <= K; ++n) acc.add(table.chi(j, n));
    return acc.value();
}

std::vector<double> fourth_moment_prefix(const CharacterTable& table, u64 K_max,
                                         MomentScope scope) {
    if (K_max < 1 || K_max >= table.p())
        throw domain_error("fourth_moment_prefix: requires 1 <= K < p");
    const u64 p = table.p();
    std::vector<double> out(K_max, 0.0);
    const u64 j0 = scope == MomentScope::all ? 0 : 1;

    // Fixed 64-character chunks merged in index order: deterministic for any
    // worker count.
    const u64 chunk = 64;
    const u64 jcount = p - 1 - j0;
    if (jcount == 0) return out;
    const std::size_t nchunks = static_cast<std::size_t>((jcount + chunk - 1) / chunk);
    std::vector<std::vector<double>> partial(nchunks);

    for_chunks(j0, p - 1, chunk, [&](std::size_t c, u64 jlo, u64 jhi) {
        std::vector<double> local(K_max, 0.0);
        for (u64 j = jlo; j < jhi; ++j) {
            KahanC acc;
            for (u64 n = 1; n <= K_max; ++n) {
                acc.add(table.chi(j, n));
                double m = std::norm(acc.value());
                local[n - 1] += m * m;
            }
        }
        partial[c] = std::move(local);
    });

    for (const auto& local : partial)
        for (u64 i = 0; i < K_max; ++i) out[i] += local[i];
    return out;
}

double fourth_moment(const CharacterTable& table, u64 K, MomentScope scope) {
    if (K < 1 || K >= table.p()) throw domain_error("fourth_moment: requires 1 <= K < p");
    double total = 0.0;
    const u64 j0 = scope == MomentScope::all ? 0 : 1;
    for (u64 j = j0; j <= table.p() - 2; ++j) {
        double m = std::norm(char_sum(table, j, K));
        total += m * m;
    }
    return total;
}

BigNatural fourth_moment_combinatorial(u64 p, u64 K) {
    if (!is_prime_u64(p)) throw domain_error("fourth_moment_combinatorial: p must be prime");
    if (K < 1 || K >= p) throw domain_error("fourth_moment_combinatorial: requires 1 <= K < p");
    std::vector<u64> bucket(p, 0);
    for (u64 n1 = 1; n1 <= K; ++n1)
        for (u64 n2 = 1; n2 <= K; ++n2) ++bucket[mulmod(n1, n2, p)];
    BigNatural pairs = 0;
    for (u64 v = 0; v < p; ++v) {
        BigNatural c = static_cast<unsigned long>(bucket[v]);
        pairs += c * c;
    }
    return pairs * static_cast<unsigned long>(p - 1);
}

u64 least_qnr(u64 p) {
    if (p == 2 || !is_prime_u64(p)) throw domain_error("least_qnr: p must be an odd prime");
    for (u64 m = 2; m < p; ++m)
        if (powmod(m, (p - 1) / 2, p) == p - 1) return m;
    throw domain_error("least_qnr: no non-residue found (p not prime?)");
}

u64 qnr_count(u64 p, u64 K) {
    if (p == 2 || !is_prime_u64(p)) throw domain_error("qnr_count: p must be an odd prime");
    if (K < 1 || K >= p) throw domain_error("qnr_count: requires 1 <= K < p");
    u64 count = 0;
    for (u64 m = 1; m <= K; ++m)
        if (powmod(m, (p - 1) / 2, p) == p - 1) ++count;
    return count;
}

double burgess_eta0() { return 1.0 / (4.0 * std::sqrt(std::exp(1.0))); }

std::vector<BurgessRow> burgess_profile(u64 p, const std::vector<double>& etas) {
    if (p == 2 || !is_prime_u64(p)) throw domain_error("burgess_profile: p must be an odd prime");
    std::vector<BurgessRow> rows;
    for (double eta : etas) {
        if (eta <= 0.0 || eta >= 1.0)
            throw domain_error("burgess_profile: eta must lie in (0,1)");
        BurgessRow row;
        row.eta = eta;
        row.K = static_cast<u64>(std::ceil(std::pow(static_cast<double>(p), eta)));
        if (row.K >= p) row.K = p - 1;
        row.T = qnr_count(p, row.K);
        row.ratio = static_cast<double>(row.T) / static_cast<double>(row.K);
        rows.push_back(row);
    }
    return rows;
}

std::vector<u64> unrepresentable_qnr_set(u64 p, u64 K, u64 U) {
    if (p == 2 || !is_prime_u64(p))
        throw domain_error("unrepresentable_qnr_set: p must be an odd prime");
    if (K >= p || U >= p) throw domain_error("unrepresentable_qnr_set: requires K, U < p");

    std::vector<char> representable(p, 0);
    for (u64 n = 1; n <= K; ++n) {
        if (powmod(n, (p - 1) / 2, p) != p - 1) continue;
        u64 n3 = mulmod(n, mulmod(n, n, p), p);
        for (u64 u = 1; u <= U; ++u) representable[mulmod(n3, mulmod(u, u, p), p)] = 1;
    }
    std::vector<u64> out;
    for (u64 a = 1; a < p; ++a)
        if (powmod(a, (p - 1) / 2, p) == p - 1 && !representable[a]) out.push_back(a);
    return out;
}

VanishingReport character_vanishing_check(u64 p, const std::vector<u64>& A, u64 K, u64 U) {
    CharacterTable table = CharacterTable::build(p);
    if (K >= p || U >= p) throw domain_error("character_vanishing_check: requires K, U < p");

    // Precondition: members of A are non-residues with no n^3 u^2 representation.
    std::vector<char> representable(p, 0);
    std::vector<u64> N;
    for (u64 n = 1; n <= K; ++n) {
        if (legendre(static_cast<i64>(n), p) != -1) continue;
        N.push_back(n);
        u64 n3 = mulmod(n, mulmod(n, n, p), p);
        for (u64 u = 1; u <= U; ++u) representable[mulmod(n3, mulmod(u, u, p), p)] = 1;
    }
    for (u64 a : A) {
        if (a == 0 || a >= p || legendre(static_cast<i64>(a), p) != -1)
            throw domain_error("character_vanishing_check: a=" + std::to_string(a) +
                               " is not a quadratic non-residue mod p");
        if (representable[a])
            throw domain_error("character_vanishing_check: a=" + std::to_string(a) +
                               " is representable as n^3 u^2");
    }

    VanishingReport rep;
    rep.term_count = (p - 1) * A.size() * N.size() * U;
    rep.expected = A.size() * N.size() * U;

    KahanC full;
    KahanC sharp;  // all characters except principal and quadratic
    const u64 quad = (p - 1) / 2;
    for (u64 j = 0; j <= p - 2; ++j) {
        KahanC sa, sn, su;
        for (u64 a : A) sa.add(std::conj(table.chi(j, a)));
        for (u64 n : N) sn.add(table.unit_root(3 * j % (p - 1) * table.dlog(n)));
        for (u64 u = 1; u <= U; ++u) su.add(table.unit_root(2 * j % (p - 1) * table.dlog(u)));
        std::complex<double> term = sa.value() * sn.value() * su.value();
        full.add(term);
        if (j != 0 && j != quad) sharp.add(term);
    }
    rep.full_sum = full.value();
    rep.omega_sharp_sum = sharp.value().real();

    // Integer routes for the principal and quadratic contributions.
    rep.principal = static_cast<i64>(A.size()) * static_cast<i64>(N.size()) * static_cast<i64>(U);
    i64 sa = 0, sn = 0, su = 0;
    for (u64 a : A) sa += legendre(static_cast<i64>(a), p);
    for (u64 n : N) sn += legendre(static_cast<i64>(n), p);  // cubes keep the sign
    for (u64 u = 1; u <= U; ++u) su += 1;                    // squares are principal on units
    rep.quadratic = sa * sn * su;
    rep.exact_ok = rep.principal == static_cast<i64>(rep.expected) &&
                   rep.quadratic == static_cast<i64>(rep.expected);
    return rep;
}

}  // namespace rf
